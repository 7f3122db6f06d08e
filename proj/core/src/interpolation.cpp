#include "pwinterp/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace pwinterp {

namespace {

// 8-point Lagrange interpolation on a uniform table.
class UniformTable {
 public:
  UniformTable() = default;
  UniformTable(double u0, double step, std::vector<Complex> values)
      : u0_(u0), step_(step), values_(std::move(values)) {}

  Complex operator()(double u) const {
    const double pos = (u - u0_) / step_;
    long base = long(std::floor(pos)) - 3;
    base = std::clamp(base, long(0), long(values_.size()) - 8);
    Complex acc = 0.0;
    for (int i = 0; i < 8; ++i) {
      double weight = 1.0;
      for (int j = 0; j < 8; ++j)
        if (j != i) weight *= (pos - double(base + j)) / double(i - j);
      acc += weight * values_[std::size_t(base) + std::size_t(i)];
    }
    return acc;
  }

  bool covers(double u) const {
    return u >= u0_ + 3.0 * step_ && u <= u0_ + step_ * double(values_.size() - 4);
  }

 private:
  double u0_ = 0.0;
  double step_ = 1.0;
  std::vector<Complex> values_;
};

constexpr double kTableStep = 0.02;

UniformTable build_multiplier_table(const BumpMultiplier& mult, double height, double u_min,
                                    double u_max) {
  const double u0 = u_min - 5.0 * kTableStep;
  const std::size_t count = std::size_t(std::ceil((u_max - u0) / kTableStep)) + 6;
  return UniformTable(u0, kTableStep, mult.sample_line(height, u0, kTableStep, count));
}

double lp_norm(const std::vector<Complex>& v, double p) {
  double acc = 0.0;
  for (const Complex& x : v) acc += std::pow(std::abs(x), p);
  return std::pow(acc, 1.0 / p);
}

}  // namespace

void validate_problem(const InterpolationProblem& problem) {
  if (problem.nodes.size() != problem.data.size())
    throw InvalidArgument("interpolation problem: node/data size mismatch");
  if (!(problem.p > 1.0)) throw ParameterRange("interpolation problem: p must exceed 1");
  if (!(problem.tau > 0.0)) throw ParameterRange("interpolation problem: tau must be positive");
  if (!(problem.eps > 0.0)) throw ParameterRange("interpolation problem: eps must be positive");
  if (!problem.weights.empty()) {
    if (problem.weights.size() != problem.nodes.size())
      throw InvalidArgument("interpolation problem: weight count mismatch");
    for (double w : problem.weights)
      if (!(w > 0.0) || !std::isfinite(w))
        throw InvalidArgument("interpolation problem: weights must be positive");
  }
}

double canonical_weight(Complex node, double p, double bandwidth) {
  if (!(p > 1.0)) throw ParameterRange("canonical_weight: p must exceed 1");
  const double y = std::abs(node.imag());
  return std::pow(1.0 + y, 1.0 / p) * std::exp(-bandwidth * y);
}

Interpolant::Interpolant(std::shared_ptr<const BiorthogonalFamily> family,
                         std::shared_ptr<const BumpMultiplier> multiplier,
                         std::vector<Complex> coefficients, double tau)
    : family_(std::move(family)),
      multiplier_(std::move(multiplier)),
      coefficients_(std::move(coefficients)),
      tau_(tau) {
  if (!family_ || !multiplier_) throw InvalidArgument("Interpolant: missing family or multiplier");
  if (coefficients_.size() != family_->size())
    throw InvalidArgument("Interpolant: coefficient count mismatch");
  if (!(tau_ > 0.0)) throw ParameterRange("Interpolant: tau must be positive");
}

Complex Interpolant::operator()(Complex z) const {
  Complex acc = 0.0;
  for (std::size_t n = 0; n < coefficients_.size(); ++n) {
    if (coefficients_[n] == Complex(0.0)) continue;
    acc += coefficients_[n] * family_->evaluate(n, z) * (*multiplier_)(z - family_->node(n));
  }
  return acc;
}

std::vector<Complex> Interpolant::sample_line(const std::vector<double>& xs, double height) const {
  std::vector<Complex> out(xs.size());
  const GeneratingFunction* gen = family_->generating();
  const bool fast = gen != nullptr && xs.size() * coefficients_.size() > 4000;
  if (!fast) {
    for (std::size_t j = 0; j < xs.size(); ++j) out[j] = (*this)(Complex(xs[j], height));
    return out;
  }

  const auto [x_lo, x_hi] = std::minmax_element(xs.begin(), xs.end());
  double node_lo = family_->node(0).real(), node_hi = node_lo;
  for (std::size_t n = 1; n < family_->size(); ++n) {
    node_lo = std::min(node_lo, family_->node(n).real());
    node_hi = std::max(node_hi, family_->node(n).real());
  }
  const UniformTable table =
      build_multiplier_table(*multiplier_, height, *x_lo - node_hi, *x_hi - node_lo);

  // Precompute c_n / S'(lambda_n) once; each point costs one generating-
  // function evaluation plus an O(size) accumulation.
  std::vector<Complex> scaled(coefficients_.size());
  for (std::size_t n = 0; n < scaled.size(); ++n)
    scaled[n] = coefficients_[n] / family_->derivative(n);

  for (std::size_t j = 0; j < xs.size(); ++j) {
    const Complex z(xs[j], height);
    const Complex sz = (*gen)(z);
    if (sz == Complex(0.0)) {
      // z sits on a zero of S (a node or a tail-model zero): direct path.
      out[j] = (*this)(z);
      continue;
    }
    Complex acc = 0.0;
    for (std::size_t n = 0; n < scaled.size(); ++n) {
      if (coefficients_[n] == Complex(0.0)) continue;
      const Complex dz = z - family_->node(n);
      acc += scaled[n] / dz * table(xs[j] - family_->node(n).real());
    }
    out[j] = sz * acc;
  }
  return out;
}

std::vector<std::vector<Complex>> Interpolant::member_line_samples(const std::vector<double>& xs,
                                                                   double height) const {
  const std::size_t count = coefficients_.size();
  std::vector<std::vector<Complex>> members(count);
  const GeneratingFunction* gen = family_->generating();
  if (!gen) {
    for (std::size_t n = 0; n < count; ++n) {
      members[n].resize(xs.size());
      for (std::size_t j = 0; j < xs.size(); ++j) {
        const Complex z(xs[j], height);
        members[n][j] = family_->evaluate(n, z) * (*multiplier_)(z - family_->node(n));
      }
    }
    return members;
  }
  const auto [x_lo, x_hi] = std::minmax_element(xs.begin(), xs.end());
  double node_lo = family_->node(0).real(), node_hi = node_lo;
  for (std::size_t n = 1; n < count; ++n) {
    node_lo = std::min(node_lo, family_->node(n).real());
    node_hi = std::max(node_hi, family_->node(n).real());
  }
  const UniformTable table =
      build_multiplier_table(*multiplier_, height, *x_lo - node_hi, *x_hi - node_lo);
  for (std::size_t n = 0; n < count; ++n) members[n].resize(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const Complex z(xs[j], height);
    const Complex sz = (*gen)(z);
    for (std::size_t n = 0; n < count; ++n) {
      const Complex dz = z - family_->node(n);
      if (dz == Complex(0.0) || sz == Complex(0.0))
        members[n][j] = family_->evaluate(n, z) * (*multiplier_)(z - family_->node(n));
      else
        members[n][j] =
            sz / (family_->derivative(n) * dz) * table(xs[j] - family_->node(n).real());
    }
  }
  return members;
}

InterpolantNorm interpolant_line_norm(const Interpolant& f, double height, double p,
                                      LineIntegralOptions options) {
  if (!(p > 1.0)) throw ParameterRange("interpolant_line_norm: p must exceed 1");
  const double decay = std::max(options.decay_power, p);
  double node_extent = 0.0;
  for (std::size_t n = 0; n < f.family().size(); ++n)
    node_extent = std::max(node_extent, std::abs(f.family().node(n).real()));
  double radius = std::max(options.initial_radius, 2.0 * node_extent + 8.0);
  while (true) {
    const int panels = std::max(1, int(std::ceil(2.0 * radius / options.panel_width)));
    PanelGrid grid = PanelGrid::uniform(-radius, radius, panels, options.points_per_panel);
    const std::vector<Complex> values = f.sample_line(grid.nodes(), height);
    double integral = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
      integral += grid.weights()[i] * std::pow(std::abs(values[i]), p);
    const std::size_t edge =
        grid.size() -
        std::min(grid.size(), std::size_t(options.edge_panels * options.points_per_panel));
    double amplitude = 0.0;
    for (std::size_t i = edge; i < grid.size(); ++i)
      amplitude = std::max(amplitude, std::pow(std::abs(values[i]), p) *
                                          std::pow(std::abs(grid.nodes()[i]), decay));
    for (std::size_t i = 0; i < grid.size() - edge; ++i)
      amplitude = std::max(amplitude, std::pow(std::abs(values[i]), p) *
                                          std::pow(std::abs(grid.nodes()[i]), decay));
    const double tail = 2.0 * amplitude * std::pow(radius, 1.0 - decay) / (decay - 1.0);
    if (tail <= std::max(options.abs_tol, options.rel_tol * integral))
      return InterpolantNorm{integral, std::pow(integral, 1.0 / p), radius, tail};
    if (2.0 * radius > options.max_radius)
      throw TruncationInsufficient("interpolant_line_norm: radius cap reached", integral, tail);
    radius *= 2.0;
  }
}

SolveReport solve_interpolation(const InterpolationProblem& problem,
                                const BiorthogonalFamily& family,
                                std::shared_ptr<const BumpMultiplier> multiplier,
                                LineIntegralOptions options) {
  validate_problem(problem);
  if (!multiplier) throw InvalidArgument("solve_interpolation: missing multiplier");
  if (family.size() != problem.nodes.size())
    throw InvalidArgument("solve_interpolation: family does not match the problem nodes");
  for (std::size_t n = 0; n < family.size(); ++n)
    if (std::abs(family.node(n) - problem.nodes[n]) > 1e-12)
      throw InvalidArgument("solve_interpolation: family node " + std::to_string(n) +
                            " differs from the problem node");
  if (std::abs(multiplier->epsilon() - problem.eps) > 1e-12)
    throw InvalidArgument("solve_interpolation: multiplier width differs from the problem eps");

  const double bandwidth = problem.tau + problem.eps;
  std::vector<double> weights(problem.nodes.size());
  for (std::size_t n = 0; n < weights.size(); ++n)
    weights[n] = problem.weights.empty()
                     ? canonical_weight(problem.nodes[n], problem.p, bandwidth)
                     : problem.weights[n];

  std::vector<Complex> coefficients(problem.data.size());
  for (std::size_t n = 0; n < coefficients.size(); ++n)
    coefficients[n] = problem.data[n] / weights[n];

  auto shared_family = std::make_shared<BiorthogonalFamily>(family);
  Interpolant interpolant(shared_family, std::move(multiplier), std::move(coefficients),
                          problem.tau);

  SolveReport report{interpolant, std::move(weights), {}, 0.0, 0.0, {}, 0.0};
  report.node_residuals.resize(problem.nodes.size());
  for (std::size_t k = 0; k < problem.nodes.size(); ++k) {
    const Complex fk = interpolant(problem.nodes[k]);
    report.node_residuals[k] = std::abs(report.weights_used[k] * fk - problem.data[k]);
    report.max_node_residual = std::max(report.max_node_residual, report.node_residuals[k]);
  }
  report.data_norm = lp_norm(problem.data, problem.p);
  report.line_norm = interpolant_line_norm(interpolant, 0.0, problem.p, options);
  report.norm_ratio = report.data_norm > 0.0 ? report.line_norm.norm / report.data_norm
                                             : (report.line_norm.norm > 0.0
                                                    ? std::numeric_limits<double>::infinity()
                                                    : 0.0);
  return report;
}

VerifyOptions::VerifyOptions() {
  // Deliberately incommensurate with the solver defaults so agreement is a
  // genuine cross-check, not a repeat of the same sums.
  line.panel_width = 0.41;
  line.points_per_panel = 10;
  line.initial_radius = 37.0;
  slope_heights = {0.5, 1.0, 2.0};
}

VerifyReport verify_interpolant(const Interpolant& f, const InterpolationProblem& problem,
                                double reference_norm, VerifyOptions options) {
  validate_problem(problem);
  VerifyReport report{};
  const double bandwidth = f.bandwidth();
  for (std::size_t k = 0; k < problem.nodes.size(); ++k) {
    const double weight = problem.weights.empty()
                              ? canonical_weight(problem.nodes[k], problem.p, bandwidth)
                              : problem.weights[k];
    report.max_node_residual =
        std::max(report.max_node_residual,
                 std::abs(weight * f(problem.nodes[k]) - problem.data[k]));
  }
  report.line_norm = interpolant_line_norm(f, 0.0, problem.p, options.line);
  report.norm_agreement = reference_norm > 0.0
                              ? std::abs(report.line_norm.norm - reference_norm) / reference_norm
                              : report.line_norm.norm;

  double node_extent = 0.0;
  for (std::size_t n = 0; n < f.family().size(); ++n)
    node_extent = std::max(node_extent, std::abs(f.family().node(n).real()));
  const double extent = node_extent + options.slope_grid_extent;
  std::vector<double> xs;
  for (double x = -extent; x <= extent; x += options.slope_grid_step) xs.push_back(x);

  report.heights = options.slope_heights;
  for (double y : options.slope_heights) {
    const std::vector<Complex> values = f.sample_line(xs, y);
    double sup = 0.0;
    for (const Complex& v : values) sup = std::max(sup, std::abs(v));
    if (!(sup > 0.0)) throw NumericError("verify_interpolant: vanishing line supremum");
    report.log_sup.push_back(std::log(sup));
  }
  // Least-squares slope of log sup versus height.
  const std::size_t m = report.heights.size();
  double mean_y = 0.0, mean_l = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mean_y += report.heights[i];
    mean_l += report.log_sup[i];
  }
  mean_y /= double(m);
  mean_l /= double(m);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    num += (report.heights[i] - mean_y) * (report.log_sup[i] - mean_l);
    den += (report.heights[i] - mean_y) * (report.heights[i] - mean_y);
  }
  if (den == 0.0) throw ParameterRange("verify_interpolant: need at least two distinct heights");
  report.growth_slope = num / den;
  report.slope_bound = bandwidth * (1.0 + options.slope_margin);
  report.slope_ok = report.growth_slope <= report.slope_bound;
  return report;
}

StabilityStudy norm_stability_study(const BiorthogonalFamily& family,
                                    std::shared_ptr<const BumpMultiplier> multiplier,
                                    double p, double tau, int trials, std::uint64_t seed,
                                    StabilityOptions options) {
  if (trials < 1) throw ParameterRange("norm_stability_study: need at least one trial");
  if (!(p > 1.0)) throw ParameterRange("norm_stability_study: p must exceed 1");
  if (!multiplier) throw InvalidArgument("norm_stability_study: missing multiplier");
  const std::size_t count = family.size();
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  auto draw_unit_data = [&]() {
    std::vector<Complex> data(count);
    for (Complex& a : data) a = Complex(normal(engine), normal(engine)) / std::sqrt(2.0);
    const double norm = lp_norm(data, p);
    for (Complex& a : data) a /= norm;
    return data;
  };

  auto shared_family = std::make_shared<BiorthogonalFamily>(family);
  const double bandwidth = tau + multiplier->epsilon();
  auto coefficients_for = [&](const std::vector<Complex>& data) {
    std::vector<Complex> c(count);
    for (std::size_t n = 0; n < count; ++n)
      c[n] = data[n] / canonical_weight(family.node(n), p, bandwidth);
    return c;
  };

  StabilityStudy study;
  study.trials = trials;
  study.seed = seed;

  // First trial settles the radius; the frozen grid (with margin) then turns
  // every later trial into a cached matrix-vector product.
  const std::vector<Complex> first = draw_unit_data();
  Interpolant probe(shared_family, multiplier, coefficients_for(first), tau);
  const InterpolantNorm settled = interpolant_line_norm(probe, 0.0, p, options.line);
  study.ratios.push_back(settled.norm);
  const double radius = settled.radius * options.grid_margin;
  study.radius = radius;

  const int panels = std::max(1, int(std::ceil(2.0 * radius / options.line.panel_width)));
  PanelGrid grid = PanelGrid::uniform(-radius, radius, panels, options.line.points_per_panel);
  // columns[n][j] = f_n(x_j) H(x_j - lambda_n)
  const std::vector<std::vector<Complex>> columns = probe.member_line_samples(grid.nodes(), 0.0);

  const double decay = std::max(options.line.decay_power, p);
  const std::size_t edge =
      grid.size() -
      std::min(grid.size(), std::size_t(options.line.edge_panels * options.line.points_per_panel));
  for (int t = 1; t < trials; ++t) {
    const std::vector<Complex> data = draw_unit_data();
    const std::vector<Complex> c = coefficients_for(data);
    double integral = 0.0;
    double amplitude = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      Complex v = 0.0;
      for (std::size_t n = 0; n < count; ++n) v += c[n] * columns[n][j];
      const double mag_p = std::pow(std::abs(v), p);
      integral += grid.weights()[j] * mag_p;
      if (j >= edge)
        amplitude = std::max(amplitude, mag_p * std::pow(std::abs(grid.nodes()[j]), decay));
    }
    const double tail =
        2.0 * amplitude * std::pow(radius, 1.0 - decay) / (decay - 1.0);
    if (tail > std::max(options.line.abs_tol, options.line.rel_tol * integral)) {
      // Rare: this draw decays slower than the frozen grid allows for.
      Interpolant f(shared_family, multiplier, c, tau);
      study.ratios.push_back(interpolant_line_norm(f, 0.0, p, options.line).norm);
    } else {
      study.ratios.push_back(std::pow(integral, 1.0 / p));
    }
  }

  std::vector<double> sorted = study.ratios;
  std::sort(sorted.begin(), sorted.end());
  study.min = sorted.front();
  study.max = sorted.back();
  study.median = sorted.size() % 2 == 1
                     ? sorted[sorted.size() / 2]
                     : 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
  return study;
}

}  // namespace pwinterp
