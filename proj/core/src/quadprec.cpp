#include "pwinterp/quadprec.hpp"

#include <quadmath.h>

#include <algorithm>
#include <functional>

#include "pwinterp/errors.hpp"
#include "pwinterp/quadrature.hpp"

namespace pwinterp::qp {

double to_double(Real x) { return static_cast<double>(x); }

Real qabs(Real x) { return fabsq(x); }
Real qsqrt(Real x) { return sqrtq(x); }
Real qexp(Real x) { return expq(x); }

Real abs(Cx a) { return sqrtq(norm(a)); }

Cx qexp(Cx z) {
  const Real r = expq(z.re);
  return {r * cosq(z.im), r * sinq(z.im)};
}

bool ldlt_factor(std::vector<Cx>& a, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    Real d = a[j * n + j].re;
    for (std::size_t k = 0; k < j; ++k) d -= norm(a[j * n + k]) * a[k * n + k].re;
    if (!(d > Real(0))) return false;
    a[j * n + j] = Cx(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      Cx s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k)
        s = s - a[k * n + k].re * (a[i * n + k] * conj(a[j * n + k]));
      a[i * n + j] = s / d;
    }
  }
  return true;
}

void ldlt_solve(const std::vector<Cx>& a, std::size_t n, std::span<Cx> rhs) {
  if (rhs.size() != n) throw InvalidArgument("ldlt_solve: rhs size mismatch");
  // L y = rhs
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k) rhs[i] = rhs[i] - a[i * n + k] * rhs[k];
  // D z = y
  for (std::size_t i = 0; i < n; ++i) rhs[i] = rhs[i] / a[i * n + i].re;
  // L* x = z
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t k = i + 1; k < n; ++k) rhs[i] = rhs[i] - conj(a[k * n + i]) * rhs[k];
}

std::vector<double> hermitian_eigenvalues(std::vector<Cx> a, std::size_t n) {
  if (n == 0) return {};
  Real diag_scale(0);
  for (std::size_t i = 0; i < n; ++i) {
    const Real m = qabs(a[i * n + i].re);
    if (m > diag_scale) diag_scale = m;
  }
  if (diag_scale == Real(0)) diag_scale = Real(1);
  const Real stop = diag_scale * Real(1e-32);  // just above binary128 epsilon

  for (int sweep = 0; sweep < 60; ++sweep) {
    Real off(0);
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Cx apq = a[p * n + q];
        const Real mag = abs(apq);
        if (mag > off) off = mag;
        if (!(mag > stop)) continue;

        // Unitary 2x2 rotation with phase pulled from the pivot entry:
        // J_pp = c, J_pq = s*phi, J_qp = -s*conj(phi), J_qq = c zeroes a_pq.
        const Cx phi = apq / mag;
        const Real tau = (a[q * n + q].re - a[p * n + p].re) / (Real(2) * mag);
        const Real t = (tau >= Real(0) ? Real(1) : Real(-1)) /
                       (qabs(tau) + qsqrt(Real(1) + tau * tau));
        const Real c = Real(1) / qsqrt(Real(1) + t * t);
        const Real s = t * c;

        const Real app = a[p * n + p].re;
        const Real aqq = a[q * n + q].re;
        a[p * n + p] = Cx(c * c * app + s * s * aqq - Real(2) * s * c * mag);
        a[q * n + q] = Cx(s * s * app + c * c * aqq + Real(2) * s * c * mag);
        a[p * n + q] = Cx(Real(0));
        a[q * n + p] = Cx(Real(0));

        for (std::size_t i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const Cx aip = a[i * n + p];
          const Cx aiq = a[i * n + q];
          a[i * n + p] = c * aip - s * (aiq * conj(phi));
          a[i * n + q] = s * (aip * phi) + c * aiq;
          a[p * n + i] = conj(a[i * n + p]);
          a[q * n + i] = conj(a[i * n + q]);
        }
      }
    }
    if (!(off > stop)) break;
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = to_double(a[i * n + i].re);
  std::sort(values.begin(), values.end(), std::greater<double>());
  return values;
}

void gauss_legendre_q(int points, std::vector<Real>& nodes, std::vector<Real>& weights) {
  const GaussLegendre seed = gauss_legendre(points);
  nodes.resize(points);
  weights.resize(points);
  for (int i = 0; i < points; ++i) {
    Real x = from_double(seed.nodes[i]);
    Real dp(0);
    for (int it = 0; it < 6; ++it) {
      // Legendre recurrence for P_k(x) and P_k'(x).
      Real p0(1), p1 = x;
      for (int k = 2; k <= points; ++k) {
        const Real p2 = ((Real(2 * k - 1) * x * p1) - Real(k - 1) * p0) / Real(k);
        p0 = p1;
        p1 = p2;
      }
      dp = Real(points) * (x * p1 - p0) / (x * x - Real(1));
      const Real step = p1 / dp;
      x -= step;
      if (qabs(step) < Real(1e-33)) {
        // One more pass recomputes dp at the settled node.
        Real q0(1), q1 = x;
        for (int k = 2; k <= points; ++k) {
          const Real q2 = ((Real(2 * k - 1) * x * q1) - Real(k - 1) * q0) / Real(k);
          q0 = q1;
          q1 = q2;
        }
        dp = Real(points) * (x * q1 - q0) / (x * x - Real(1));
        break;
      }
    }
    nodes[i] = x;
    weights[i] = Real(2) / ((Real(1) - x * x) * dp * dp);
  }
}

}  // namespace pwinterp::qp
