#include "pwinterp/line_norm.hpp"

#include <algorithm>
#include <cmath>

namespace pwinterp {

namespace {

// Shared incremental window: symmetric panel rows around the center, extended
// by doubling the per-side panel count.
class Window {
 public:
  Window(const LineIntegralOptions& opt) : opt_(opt) {
    if (!(opt.panel_width > 0.0) || opt.points_per_panel < 2)
      throw ParameterRange("line integral: bad panel options");
    if (!(opt.decay_power > 1.0))
      throw ParameterRange("line integral: decay_power must exceed 1");
    if (!(opt.initial_radius > 0.0) || opt.max_radius < opt.initial_radius)
      throw ParameterRange("line integral: bad radius limits");
    per_side_ = std::max(1, int(std::ceil(opt.initial_radius / opt.panel_width)));
  }

  // Appends the nodes of panels [from, to) on both sides to xs/ws.
  template <class Sampler>
  void extend(int from, int to, Sampler&& sample) {
    const auto& rule = gauss_legendre(opt_.points_per_panel);
    for (int j = from; j < to; ++j) {
      for (int side = 0; side < 2; ++side) {
        const double left = opt_.center + (side == 0 ? j * opt_.panel_width
                                                     : -(j + 1) * opt_.panel_width);
        const double mid = left + 0.5 * opt_.panel_width;
        const double half = 0.5 * opt_.panel_width;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          xs_.push_back(mid + half * rule.nodes[i]);
          ws_.push_back(half * rule.weights[i]);
          sample(xs_.back());
        }
      }
    }
  }

  // Envelope magnitude -> extrapolated tail beyond the current radius.
  double tail_from_envelope(double amplitude) const {
    const double r = radius();
    return 2.0 * amplitude * std::pow(r, 1.0 - opt_.decay_power) / (opt_.decay_power - 1.0);
  }

  double radius() const { return per_side_ * opt_.panel_width; }
  int per_side() const { return per_side_; }
  void set_per_side(int m) { per_side_ = m; }
  bool can_double() const { return 2.0 * radius() <= opt_.max_radius; }

  // Indices of the nodes inside the outermost edge_panels panels per side.
  std::vector<std::size_t> edge_indices() const {
    const std::size_t per_panel = std::size_t(opt_.points_per_panel) * 2;
    const std::size_t probe = std::min(xs_.size(), per_panel * std::size_t(opt_.edge_panels));
    std::vector<std::size_t> idx(probe);
    for (std::size_t i = 0; i < probe; ++i) idx[i] = xs_.size() - probe + i;
    return idx;
  }

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ws() const { return ws_; }
  const LineIntegralOptions& options() const { return opt_; }

 private:
  LineIntegralOptions opt_;
  int per_side_;
  std::vector<double> xs_, ws_;
};

double envelope_at(const Window& w, const std::vector<double>& magnitudes) {
  double amplitude = 0.0;
  for (std::size_t i : w.edge_indices()) {
    const double dist = std::abs(w.xs()[i] - w.options().center);
    amplitude = std::max(amplitude,
                         magnitudes[i] * std::pow(dist, w.options().decay_power));
  }
  return amplitude;
}

}  // namespace

LineIntegral adaptive_line_integral(const std::function<Complex(double)>& integrand,
                                    LineIntegralOptions options) {
  Window window(options);
  std::vector<Complex> values;
  std::vector<double> magnitudes;
  auto sample = [&](double x) {
    values.push_back(integrand(x));
    magnitudes.push_back(std::abs(values.back()));
  };
  window.extend(0, window.per_side(), sample);
  while (true) {
    Complex value = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) value += window.ws()[i] * values[i];
    const double tail = window.tail_from_envelope(envelope_at(window, magnitudes));
    if (tail <= std::max(options.abs_tol, options.rel_tol * std::abs(value)))
      return LineIntegral{value, window.radius(), tail, values.size()};
    if (!window.can_double())
      throw TruncationInsufficient("adaptive_line_integral: radius cap reached",
                                   std::abs(value), tail);
    const int m = window.per_side();
    window.set_per_side(2 * m);
    window.extend(m, 2 * m, sample);
  }
}

LineNorm line_norm(const std::function<Complex(Complex)>& f, double height, double p,
                   LineIntegralOptions options) {
  if (!(p > 1.0)) throw ParameterRange("line_norm: p must exceed 1");
  options.decay_power = std::max(options.decay_power, p);
  auto integrand = [&](double x) {
    return Complex(std::pow(std::abs(f(Complex(x, height))), p), 0.0);
  };
  LineIntegral integral = adaptive_line_integral(integrand, options);
  LineNorm result;
  result.height = height;
  result.exponent = p;
  result.value = integral.value.real();
  result.norm = std::pow(result.value, 1.0 / p);
  result.radius = integral.radius;
  result.tail_estimate = integral.tail_estimate;
  return result;
}

LineNorm line_norm(const PWFunction& f, double height, double p, LineIntegralOptions options) {
  return line_norm([&f](Complex z) { return f(z); }, height, p, options);
}

LineIntegral real_line_inner_product(const std::function<Complex(Complex)>& f,
                                     const std::function<Complex(Complex)>& g,
                                     LineIntegralOptions options) {
  auto integrand = [&](double x) { return f(Complex(x, 0.0)) * std::conj(g(Complex(x, 0.0))); };
  return adaptive_line_integral(integrand, options);
}

GrowthComparison shifted_line_growth_check(const PWFunction& f, double height, double p,
                                           LineIntegralOptions options) {
  GrowthComparison cmp;
  cmp.shifted = line_norm(f, height, p, options);
  cmp.base = line_norm(f, 0.0, p, options);
  cmp.shifted_value = cmp.shifted.value;
  cmp.bound = std::exp(p * f.tau() * std::abs(height)) * cmp.base.value;
  cmp.ratio = cmp.shifted_value / cmp.bound;
  cmp.within_bound = cmp.shifted_value <= cmp.bound * (1.0 + 1e-6);
  return cmp;
}

PointwiseGrowth pointwise_growth_check(const PWFunction& f, double p, double norm,
                                       std::span<const Complex> probes) {
  if (!(norm > 0.0)) throw ParameterRange("pointwise_growth_check: norm must be positive");
  PointwiseGrowth g{0.0, Complex(0.0, 0.0)};
  for (const Complex& z : probes) {
    const double ratio = std::abs(f(z)) / (growth_envelope(z, f.tau(), p) * norm);
    if (ratio > g.max_ratio) {
      g.max_ratio = ratio;
      g.arg_max = z;
    }
  }
  return g;
}

ReproducingCheck reproducing_check(const PWFunction& f, std::span<const Complex> lambdas,
                                   LineIntegralOptions options) {
  if (lambdas.empty()) throw InvalidArgument("reproducing_check: no evaluation points");
  const double tau = f.tau();
  Window window(options);
  std::vector<Complex> fvals;
  auto sample = [&](double x) { fvals.push_back(f(Complex(x, 0.0))); };
  window.extend(0, window.per_side(), sample);

  ReproducingCheck check;
  check.reproducing_factor = M_PI / tau;
  while (true) {
    const auto& xs = window.xs();
    const auto& ws = window.ws();
    // Norm of f and all pairings on the shared grid.
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) norm_sq += ws[i] * std::norm(fvals[i]);
    check.inner_products.assign(lambdas.size(), Complex(0.0));
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
      Complex acc = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i)
        acc += ws[i] * fvals[i] * std::conj(kernel_eval(lambdas[j], tau, Complex(xs[i], 0.0)));
      check.inner_products[j] = acc;
    }
    // Per-target tails from the shared edge envelope of |f| and the kernel's
    // own 1/|x| falloff folded into the 1/x^2 model.
    bool all_converged = true;
    double worst_tail = 0.0;
    for (std::size_t j = 0; j < lambdas.size() && all_converged; ++j) {
      double amplitude = 0.0;
      for (std::size_t i : window.edge_indices()) {
        const double mag =
            std::abs(fvals[i] * kernel_eval(lambdas[j], tau, Complex(xs[i], 0.0)));
        amplitude = std::max(amplitude, mag * xs[i] * xs[i]);
      }
      const double tail = window.tail_from_envelope(amplitude);
      worst_tail = std::max(worst_tail, tail);
      if (tail > std::max(options.abs_tol, options.rel_tol * std::abs(check.inner_products[j])))
        all_converged = false;
    }
    {
      double amplitude = 0.0;
      for (std::size_t i : window.edge_indices())
        amplitude = std::max(amplitude, std::norm(fvals[i]) * xs[i] * xs[i]);
      const double tail = window.tail_from_envelope(amplitude);
      if (tail > std::max(options.abs_tol, options.rel_tol * norm_sq)) all_converged = false;
    }
    if (all_converged) {
      check.f_norm = std::sqrt(norm_sq);
      check.radius = window.radius();
      break;
    }
    if (!window.can_double())
      throw TruncationInsufficient("reproducing_check: radius cap reached", 0.0, worst_tail);
    const int m = window.per_side();
    window.set_per_side(2 * m);
    window.extend(m, 2 * m, sample);
  }

  check.values.resize(lambdas.size());
  check.residuals.resize(lambdas.size());
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    check.values[j] = f(lambdas[j]);
    check.residuals[j] =
        std::abs(check.inner_products[j] - check.reproducing_factor * check.values[j]);
  }
  return check;
}

}  // namespace pwinterp
