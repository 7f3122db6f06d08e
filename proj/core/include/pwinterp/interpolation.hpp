#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "pwinterp/biorthogonal.hpp"
#include "pwinterp/multiplier.hpp"
#include "pwinterp/sequence.hpp"

namespace pwinterp {

// Node targets a_n with the norm exponent and bandwidth budget. Empty
// weights select the canonical weight at each node; explicit weights (all
// positive, one per node) override it.
struct InterpolationProblem {
  ComplexSequence nodes;
  std::vector<Complex> data;
  double p = 2.0;
  double tau = M_PI;  // bandwidth of the node family
  double eps = 0.5;   // multiplier width; the solution lives at tau + eps
  std::vector<double> weights;
};

void validate_problem(const InterpolationProblem&);

// (1 + |Im z|)^{1/p} e^{-bandwidth |Im z|}; equals 1 on the real line. The
// weighted target W(lambda_n) f(lambda_n) = a_n makes the plain l^p norm of
// the data the correct yardstick for the solution norm.
double canonical_weight(Complex node, double p, double bandwidth);

// f(z) = sum_n c_n f_n(z) H(z - lambda_n): biorthogonal member times a
// translated multiplier per node. Bandwidth tau + eps.
class Interpolant {
 public:
  Interpolant(std::shared_ptr<const BiorthogonalFamily> family,
              std::shared_ptr<const BumpMultiplier> multiplier, std::vector<Complex> coefficients,
              double tau);

  Complex operator()(Complex z) const;
  // Values along Im z = height. Generated families with real nodes take a
  // table-accelerated path (one multiplier table per call, one generating-
  // function evaluation per point); anything else falls back to direct sums.
  std::vector<Complex> sample_line(const std::vector<double>& xs, double height) const;
  // Per-member values f_n(x_j) H(x_j - lambda_n) on a shared sweep
  // (coefficients are ignored). members[n][j] aligns with xs.
  std::vector<std::vector<Complex>> member_line_samples(const std::vector<double>& xs,
                                                        double height) const;

  double tau() const { return tau_; }
  double epsilon() const { return multiplier_->epsilon(); }
  double bandwidth() const { return tau_ + multiplier_->epsilon(); }
  const std::vector<Complex>& coefficients() const { return coefficients_; }
  const BiorthogonalFamily& family() const { return *family_; }
  const BumpMultiplier& multiplier() const { return *multiplier_; }

 private:
  std::shared_ptr<const BiorthogonalFamily> family_;
  std::shared_ptr<const BumpMultiplier> multiplier_;
  std::vector<Complex> coefficients_;
  double tau_;
};

struct InterpolantNorm {
  double value;  // integral of |f(x+iy)|^p
  double norm;
  double radius;
  double tail_estimate;
};

// Adaptive L^p norm along Im z = height using the interpolant's fast sweep.
InterpolantNorm interpolant_line_norm(const Interpolant&, double height, double p,
                                      LineIntegralOptions options = {});

struct SolveReport {
  Interpolant interpolant;
  std::vector<double> weights_used;
  std::vector<double> node_residuals;  // |W_k f(lambda_k) - a_k|
  double max_node_residual;
  double data_norm;  // plain l^p of the targets
  InterpolantNorm line_norm;
  double norm_ratio;  // line norm / data norm
};

SolveReport solve_interpolation(const InterpolationProblem&, const BiorthogonalFamily&,
                                std::shared_ptr<const BumpMultiplier>,
                                LineIntegralOptions options = {});

struct VerifyOptions {
  LineIntegralOptions line;           // defaults are deliberately offset from the solver's
  std::vector<double> slope_heights;  // heights for the growth fit
  double slope_grid_extent = 24.0;    // probe |Re z| range beyond the nodes
  double slope_grid_step = 0.05;
  double slope_margin = 0.01;  // allowed excess over the bandwidth
  VerifyOptions();
};

struct VerifyReport {
  double max_node_residual;
  InterpolantNorm line_norm;
  double norm_agreement;  // relative gap to the solver's norm
  std::vector<double> heights;
  std::vector<double> log_sup;  // log max |f| on each height
  double growth_slope;          // least-squares slope of log_sup vs height
  double slope_bound;           // bandwidth * (1 + slope_margin)
  bool slope_ok;
};

// Independent quadrature settings, recomputed residuals, and an off-axis
// growth fit against the bandwidth.
VerifyReport verify_interpolant(const Interpolant&, const InterpolationProblem&,
                                double reference_norm, VerifyOptions options = {});

struct StabilityOptions {
  LineIntegralOptions line;
  double grid_margin = 2.0;  // extra radius factor frozen after the first trial
};

struct StabilityStudy {
  std::vector<double> ratios;  // interpolant norm per unit-norm random data
  double min;
  double median;
  double max;
  int trials;
  std::uint64_t seed;
  double radius;  // frozen quadrature radius
};

// Random unit-l^p data against a fixed family/multiplier: the distribution of
// norm ratios. The quadrature grid is settled on the first trial and frozen
// (with a margin) so later trials are matrix-vector products against cached
// member/multiplier samples; every trial still re-checks its own tail.
StabilityStudy norm_stability_study(const BiorthogonalFamily&,
                                    std::shared_ptr<const BumpMultiplier>, double p, double tau,
                                    int trials, std::uint64_t seed, StabilityOptions options = {});

}  // namespace pwinterp
