#include "glsvol/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace gls {

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw ValidationError("rational", "non-finite value");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(x, &exp); // x = m * 2^exp, |m| in [0.5, 1)
    // 53 bits of mantissa make m * 2^53 integral.
    Int mant = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    Rational r(mant);
    if (exp >= 0) {
        r *= Rational(Int(1) << exp);
    } else {
        r /= Rational(Int(1) << -exp);
    }
    return r;
}

Rational parse_rational(const std::string& text) {
    std::string s = text;
    auto bad = [&]() -> Rational {
        throw ValidationError("rational", "cannot parse '" + text + "'");
    };
    if (s.empty()) return bad();
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            Int num(s.substr(0, slash));
            Int den(s.substr(slash + 1));
            if (den == 0) return bad();
            return Rational(num, den);
        }
        auto dot_pos = s.find('.');
        if (dot_pos == std::string::npos) return Rational(Int(s));
        std::string head = s.substr(0, dot_pos);
        std::string tail = s.substr(dot_pos + 1);
        if (tail.empty()) return Rational(Int(head.empty() ? "0" : head));
        bool neg = !head.empty() && head[0] == '-';
        std::string digits = (head == "-" || head.empty()) ? "0" : (neg ? head.substr(1) : head);
        for (char c : tail)
            if (!std::isdigit(static_cast<unsigned char>(c))) return bad();
        Int scale = 1;
        for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
        Int num = Int(digits) * scale + Int(tail);
        Rational r(num, scale);
        return neg ? -r : r;
    } catch (const std::exception&) {
        return bad();
    }
}

std::string format_rational(const Rational& r) {
    std::ostringstream os;
    os << numerator(r) << "/" << denominator(r);
    return os.str();
}

bool lex_less(const RatVec& a, const RatVec& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

RatVec normalize_direction(const RatVec& v) {
    Int lcm_den = 1;
    for (const auto& x : v) lcm_den = lcm(lcm_den, denominator(x));
    std::vector<Int> ints(v.size());
    Int g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        ints[i] = numerator(v[i]) * (lcm_den / denominator(v[i]));
        g = gcd(g, ints[i]);
    }
    if (g == 0) return RatVec(v.size(), Rational(0));
    int sign = 0;
    for (const auto& x : ints) {
        if (x != 0) { sign = x > 0 ? 1 : -1; break; }
    }
    RatVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(ints[i] * sign, g);
    return out;
}

std::string format_rat_vec(const RatVec& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += " ";
        out += format_rational(v[i]);
    }
    return out;
}

} // namespace gls
