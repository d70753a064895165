#pragma once

#include "glsvol/grid.hpp"

namespace gls {

// Grid Moreau envelope: at each grid point t the minimum over grid points s
// of f(s) + |t - s|^2 / (2 eps).  The squared distance splits per axis, so
// the transform runs as one lower-envelope-of-parabolas pass per axis; the
// result is exact for the grid-restricted minimization.
GridField moreau_envelope_serial(const GridField& f, double eps);
GridField moreau_envelope(const GridField& f, double eps);

// Default smoothing width: twice the largest grid step.
double default_moreau_eps(const GridSpec& spec);

} // namespace gls
