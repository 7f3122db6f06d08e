#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Minimal binary128 kernel used by the moment-space control solver, where
// Gram conditioning reaches 1e22 and double-precision solves lose every
// significant digit. Only what the solver needs: complex arithmetic, the
// exponential, a Hermitian LDL* solve, Jacobi eigenvalues, and quad-accurate
// Gauss-Legendre rules. quadmath.h stays out of this header; __float128
// arithmetic itself is a compiler builtin.

namespace pwinterp::qp {

using Real = __float128;

inline Real from_double(double x) { return static_cast<Real>(x); }
double to_double(Real x);

Real qabs(Real x);
Real qsqrt(Real x);
Real qexp(Real x);

struct Cx {
  Real re;
  Real im;

  constexpr Cx() : re(0), im(0) {}
  constexpr Cx(Real r, Real i) : re(r), im(i) {}
  explicit constexpr Cx(Real r) : re(r), im(0) {}
};

constexpr Cx operator+(Cx a, Cx b) { return {a.re + b.re, a.im + b.im}; }
constexpr Cx operator-(Cx a, Cx b) { return {a.re - b.re, a.im - b.im}; }
constexpr Cx operator-(Cx a) { return {-a.re, -a.im}; }
constexpr Cx operator*(Cx a, Cx b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
constexpr Cx operator*(Real s, Cx a) { return {s * a.re, s * a.im}; }
constexpr Cx conj(Cx a) { return {a.re, -a.im}; }
constexpr Real norm(Cx a) { return a.re * a.re + a.im * a.im; }
constexpr Cx operator/(Cx a, Real s) { return {a.re / s, a.im / s}; }
constexpr Cx operator/(Cx a, Cx b) {
  const Real n = norm(b);
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

Real abs(Cx a);
Cx qexp(Cx z);  // exp(re) * (cos(im), sin(im))

inline Cx from_std(double re, double im) { return {from_double(re), from_double(im)}; }

// In-place LDL* factorization of a Hermitian matrix stored dense row-major
// (n x n, full). On success the strict lower triangle holds L (unit diagonal
// implied) and the diagonal holds the real pivots D. Returns false if a pivot
// is not strictly positive (matrix not positive definite at this precision).
bool ldlt_factor(std::vector<Cx>& a, std::size_t n);

// Solves (L D L*) x = rhs in place using a matrix prepared by ldlt_factor.
void ldlt_solve(const std::vector<Cx>& a, std::size_t n, std::span<Cx> rhs);

// Eigenvalues of a Hermitian matrix (dense row-major copy) by cyclic Jacobi
// sweeps, returned as doubles in descending order.
std::vector<double> hermitian_eigenvalues(std::vector<Cx> a, std::size_t n);

// Gauss-Legendre nodes and weights on [-1, 1], refined to quad precision by
// Newton iteration from double-precision starting values.
void gauss_legendre_q(int points, std::vector<Real>& nodes, std::vector<Real>& weights);

}  // namespace pwinterp::qp
