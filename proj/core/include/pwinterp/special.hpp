#pragma once

#include "pwinterp/errors.hpp"

namespace pwinterp {

// sin(w)/w continued through w = 0 (value 1), complex argument.
Complex complex_sinc(Complex w);

// Hurwitz zeta(s, a) = sum_{n>=0} (n+a)^{-s} for even integer s >= 2, a > 0.
// Euler-Maclaurin; absolute accuracy near machine epsilon for a >= 1.
double hurwitz_zeta_even(int s, double a);

// a^s zeta(s, a) = sum_{n>=0} (a/(n+a))^s, evaluated without forming either
// overflowing factor (needed for large s where zeta underflows).
double hurwitz_zeta_even_scaled(int s, double a);

// exp(-1/(1-u^2)) on (-1, 1), 0 outside. All derivatives vanish at the edges.
double bump_profile(double u);

}  // namespace pwinterp
