#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pwinterp/quadrature.hpp"

namespace pwinterp {

struct SynthesisOptions {
  int initial_panels = 16;
  int points_per_panel = 12;
  int max_panels = 1 << 15;
  double rel_tol = 1e-11;
};

// Band-limited function f(z) = integral over [-tau, tau] of density(t) e^{itz} dt.
// Instances built from a callable density refine their quadrature per
// evaluation until two consecutive panel doublings agree; instances rebuilt
// from stored samples evaluate on the stored grid only.
class PWFunction {
 public:
  static PWFunction synthesize(std::function<Complex(double)> density, double tau,
                               std::string label = "", SynthesisOptions options = {});
  static PWFunction from_samples(PanelGrid grid, std::vector<Complex> values, double tau,
                                 std::string label = "");

  double tau() const { return tau_; }
  const std::string& label() const { return label_; }
  bool refinable() const { return static_cast<bool>(density_); }

  EvalResult evaluate(Complex z) const;
  Complex operator()(Complex z) const { return evaluate(z).value; }

  // Spectral samples: the grid the function was settled (or loaded) on.
  const PanelGrid& grid() const { return grid_; }
  const std::vector<Complex>& samples() const { return samples_; }

  const SynthesisOptions& options() const { return options_; }

 private:
  PWFunction() = default;
  double tau_ = 0.0;
  std::string label_;
  std::function<Complex(double)> density_;
  PanelGrid grid_;
  std::vector<Complex> samples_;
  SynthesisOptions options_;
  double scale_ = 0.0;  // integral of |density|, absolute floor for convergence tests
};

// sin(tau (z - conj(lambda))) / (tau (z - conj(lambda))), continued through
// the removable zero.
Complex kernel_eval(Complex lambda, double tau, Complex z);

// The kernel at lambda as a synthesized function (spectral density
// e^{-i conj(lambda) t} / (2 tau)).
PWFunction kernel_function(Complex lambda, double tau);

// Squared L2 line norm of the kernel at lambda, in closed form:
// (pi/tau) sinh(2 tau y)/(2 tau y) with y = Im lambda (value pi/tau at y = 0).
double kernel_norm_sq_exact(Complex lambda, double tau);

// Growth envelope e^{tau |Im z|} (1 + |Im z|)^{-1/p} used to normalize
// off-axis magnitudes.
double growth_envelope(Complex z, double tau, double p);

}  // namespace pwinterp
