#include "glsvol/lattice.hpp"

#include <algorithm>
#include <cstdlib>

namespace gls {

namespace {

// Reduces v against an upper-echelon integer basis (rows, pivot columns
// strictly increasing) and inserts the remainder, restoring the echelon shape
// by pairwise gcd row operations.
void insert_vector(std::vector<std::vector<Int>>& basis, std::vector<Int> v, int n) {
    for (int col = 0; col < n; ++col) {
        if (v[col] == 0) continue;
        // Find the basis row with pivot at this column.
        std::vector<Int>* row = nullptr;
        for (auto& b : basis) {
            int pivot = 0;
            while (pivot < n && b[pivot] == 0) ++pivot;
            if (pivot == col) { row = &b; break; }
        }
        if (row == nullptr) {
            basis.push_back(v);
            std::sort(basis.begin(), basis.end(), [n](const auto& a, const auto& b) {
                int pa = 0, pb = 0;
                while (pa < n && a[pa] == 0) ++pa;
                while (pb < n && b[pb] == 0) ++pb;
                return pa < pb;
            });
            return;
        }
        // Extended gcd row operation on (row, v) at this column.
        Int a = (*row)[col], b = v[col];
        Int g = gcd(a, b);
        // Bezout via Euclid.
        Int x0 = 1, y0 = 0, x1 = 0, y1 = 1, r0 = abs(a), r1 = abs(b);
        while (r1 != 0) {
            Int q = r0 / r1;
            Int r2 = r0 - q * r1;
            Int x2 = x0 - q * x1;
            Int y2 = y0 - q * y1;
            r0 = r1; r1 = r2; x0 = x1; x1 = x2; y0 = y1; y1 = y2;
        }
        Int sx = a < 0 ? -x0 : x0;
        Int sy = b < 0 ? -y0 : y0;
        // new_row = sx*row + sy*v has entry g at col; new_v eliminates col.
        std::vector<Int> new_row(n), new_v(n);
        Int ca = a / g, cb = b / g;
        for (int j = 0; j < n; ++j) {
            new_row[j] = sx * (*row)[j] + sy * v[j];
            new_v[j] = cb * (*row)[j] - ca * v[j];
        }
        *row = std::move(new_row);
        v = std::move(new_v);
    }
}

// Elementary divisors of a small integer matrix via Smith reduction.
std::vector<Int> smith_divisors(std::vector<std::vector<Int>> m) {
    const int rows = static_cast<int>(m.size());
    if (rows == 0) return {};
    const int cols = static_cast<int>(m[0].size());
    std::vector<Int> divisors;
    int top = 0;
    while (top < rows && top < cols) {
        // Find a nonzero pivot in the remaining block.
        int pr = -1, pc = -1;
        for (int r = top; r < rows && pr < 0; ++r)
            for (int c = top; c < cols; ++c)
                if (m[r][c] != 0) { pr = r; pc = c; break; }
        if (pr < 0) break;
        std::swap(m[top], m[pr]);
        for (int r = 0; r < rows; ++r) std::swap(m[r][top], m[r][pc]);
        // Clear the pivot row and column with gcd reductions.
        bool again = true;
        while (again) {
            again = false;
            for (int r = top + 1; r < rows; ++r) {
                while (m[r][top] != 0) {
                    Int q = m[top][top] == 0 ? Int(0) : m[r][top] / m[top][top];
                    for (int c = top; c < cols; ++c) m[r][c] -= q * m[top][c];
                    if (m[r][top] != 0) {
                        std::swap(m[r], m[top]);
                        again = true;
                    }
                }
            }
            for (int c = top + 1; c < cols; ++c) {
                while (m[top][c] != 0) {
                    Int q = m[top][top] == 0 ? Int(0) : m[top][c] / m[top][top];
                    for (int r = top; r < rows; ++r) m[r][c] -= q * m[r][top];
                    if (m[top][c] != 0) {
                        for (int r = top; r < rows; ++r) std::swap(m[r][c], m[r][top]);
                        again = true;
                    }
                }
            }
        }
        divisors.push_back(abs(m[top][top]));
        ++top;
    }
    return divisors;
}

} // namespace

SublatticeIndex sublattice_index(const std::vector<Exponent>& generators, int n) {
    std::vector<std::vector<Int>> basis;
    for (const auto& g : generators) {
        std::vector<Int> v(n);
        for (int i = 0; i < n; ++i) v[i] = Int(g[i]);
        insert_vector(basis, std::move(v), n);
        // The echelon basis never exceeds n rows.
    }
    SublatticeIndex out;
    out.rank = static_cast<int>(basis.size());
    if (out.rank < n) return out;
    auto divisors = smith_divisors(basis);
    Int idx = 1;
    for (const auto& d : divisors) idx *= d;
    out.index = idx;
    return out;
}

} // namespace gls
