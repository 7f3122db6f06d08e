#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pwinterp/pw_function.hpp"

namespace pwinterp {

struct LineIntegralOptions {
  double center = 0.0;
  double initial_radius = 32.0;
  double max_radius = 16384.0;
  double panel_width = 0.5;
  int points_per_panel = 12;
  double rel_tol = 1e-3;   // tail target relative to the running value
  double abs_tol = 0.0;    // optional absolute tail target
  double decay_power = 2.0;  // envelope model: |integrand| ~ A |x|^{-decay_power}
  int edge_panels = 4;     // outermost panels probed for the envelope
};

struct LineIntegral {
  Complex value;
  double radius;
  double tail_estimate;
  std::size_t evaluations;
};

// Integral over the real line, truncated adaptively: the window [c-R, c+R]
// doubles until the measured edge envelope extrapolates to a tail below
// max(abs_tol, rel_tol |value|). Throws TruncationInsufficient at the radius
// cap. Previously integrated panels are reused across extensions.
LineIntegral adaptive_line_integral(const std::function<Complex(double)>& integrand,
                                    LineIntegralOptions options = {});

struct LineNorm {
  double height;
  double exponent;
  double value;  // integral of |f(x+iy)|^p
  double norm;   // value^{1/p}
  double radius;
  double tail_estimate;
};

// L^p norm of f along Im z = height. Requires p > 1.
LineNorm line_norm(const std::function<Complex(Complex)>& f, double height, double p,
                   LineIntegralOptions options = {});
LineNorm line_norm(const PWFunction& f, double height, double p,
                   LineIntegralOptions options = {});

// Integral of f(x) conj(g(x)) over the real line.
LineIntegral real_line_inner_product(const std::function<Complex(Complex)>& f,
                                     const std::function<Complex(Complex)>& g,
                                     LineIntegralOptions options = {});

struct GrowthComparison {
  double shifted_value;   // integral of |f(x+iy)|^p dx
  double bound;           // e^{p tau |y|} times the same integral on the real line
  double ratio;           // shifted_value / bound
  bool within_bound;
  LineNorm shifted;
  LineNorm base;
};

// Shifted-line growth test: the L^p mass on Im z = height must stay within
// e^{p tau |height|} of the real-line mass. Slack 1e-6 absorbs truncation.
GrowthComparison shifted_line_growth_check(const PWFunction& f, double height, double p,
                                           LineIntegralOptions options = {});

struct PointwiseGrowth {
  double max_ratio;
  Complex arg_max;
};

// max over the probe points of |f(z)| (1+|Im z|)^{1/p} e^{-tau |Im z|} / norm.
PointwiseGrowth pointwise_growth_check(const PWFunction& f, double p, double norm,
                                       std::span<const Complex> probes);

struct ReproducingCheck {
  std::vector<Complex> inner_products;  // <f, k_lambda> on the real line
  std::vector<Complex> values;          // f(lambda)
  std::vector<double> residuals;        // |inner - factor * f(lambda)|
  double reproducing_factor;            // pi / tau (equals 1 at tau = pi)
  double f_norm;                        // L2 norm of f on the real line
  double radius;
};

// Pairs f against the kernel at each lambda on one shared adaptive grid;
// f is sampled once per grid point and reused across all lambdas.
ReproducingCheck reproducing_check(const PWFunction& f, std::span<const Complex> lambdas,
                                   LineIntegralOptions options = {});

}  // namespace pwinterp
