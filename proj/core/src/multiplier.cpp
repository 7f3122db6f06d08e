#include "pwinterp/multiplier.hpp"

#include <algorithm>
#include <cmath>

#include "pwinterp/special.hpp"

namespace pwinterp {

namespace {

// Symmetric breakpoints on [-half, half] with panels halving toward both
// edges: +-half (1 - 2^{-j}) for j = 0..levels-1, plus the edges themselves.
std::vector<double> graded_breakpoints(double half, int levels) {
  std::vector<double> pts;
  pts.push_back(-half);
  for (int j = levels - 1; j >= 1; --j) pts.push_back(-half * (1.0 - std::ldexp(1.0, -j)));
  pts.push_back(0.0);
  for (int j = 1; j <= levels - 1; ++j) pts.push_back(half * (1.0 - std::ldexp(1.0, -j)));
  pts.push_back(half);
  return pts;
}

}  // namespace

BumpMultiplier BumpMultiplier::build(double epsilon, MultiplierOptions options) {
  if (!(epsilon > 0.0) || !(epsilon <= 64.0))
    throw ParameterRange("BumpMultiplier: epsilon must be in (0, 64]");
  if (options.grading_levels < 2 || options.max_refinements < 0)
    throw ParameterRange("BumpMultiplier: bad grid options");

  BumpMultiplier h;
  h.eps_ = epsilon;
  h.opts_ = options;
  const double half = epsilon / 2.0;
  PanelGrid grid =
      PanelGrid::from_breakpoints(graded_breakpoints(half, options.grading_levels),
                                  options.points_per_panel);
  for (int level = 0; level <= options.max_refinements; ++level) {
    Level entry;
    entry.phi.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
      entry.phi[i] = bump_profile(grid.nodes()[i] / half);
    entry.grid = grid;
    if (level < options.max_refinements) grid = grid.refined();
    h.levels_.push_back(std::move(entry));
  }
  // Normalize against the base grid; evaluate() reuses the same nodes,
  // weights, and summation order, so H(0) reproduces the ratio exactly.
  const Level& base = h.levels_.front();
  double integral = 0.0;
  for (std::size_t i = 0; i < base.grid.size(); ++i)
    integral += base.grid.weights()[i] * base.phi[i];
  h.c_ = 1.0 / integral;
  return h;
}

Complex BumpMultiplier::transform(const Level& level, Complex z) const {
  const auto& ts = level.grid.nodes();
  const auto& ws = level.grid.weights();
  Complex acc = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i)
    acc += ws[i] * level.phi[i] * std::exp(Complex(ts[i] * z.imag(), -ts[i] * z.real()));
  return c_ * acc;
}

EvalResult BumpMultiplier::evaluate(Complex z) const {
  if (eps_ * std::abs(z.imag()) > 1400.0)
    throw ParameterRange("BumpMultiplier::evaluate: e^{(eps/2)|Im z|} overflows");
  const double floor = std::exp(0.5 * eps_ * std::abs(z.imag()));
  Complex prev = transform(levels_[0], z);
  Complex before_prev = prev;
  for (std::size_t level = 1; level < levels_.size(); ++level) {
    const Complex value = transform(levels_[level], z);
    const double delta = std::abs(value - prev);
    if (delta <= opts_.rel_tol * std::max(std::abs(value), floor))
      return EvalResult{value, delta, levels_[level].grid.panel_count(), true};
    before_prev = prev;
    prev = value;
  }
  throw QuadratureNotConverged("BumpMultiplier::evaluate: refinement cap reached before tolerance",
                               prev, before_prev, levels_.back().grid.panel_count());
}

std::vector<Complex> BumpMultiplier::sample_line(double height, double u0, double step,
                                                 std::size_t count) const {
  if (count == 0) return {};
  if (!(step > 0.0)) throw ParameterRange("BumpMultiplier::sample_line: step must be positive");
  // Probe once to find the grid level the adaptive evaluation settles on.
  const double mid = u0 + step * double(count / 2);
  const EvalResult probe = evaluate(Complex(mid, height));
  std::size_t level = levels_.size() - 1;
  for (std::size_t l = 0; l < levels_.size(); ++l)
    if (levels_[l].grid.panel_count() >= probe.panels) {
      level = l;
      break;
    }
  const Level& entry = levels_[level];
  const auto& ts = entry.grid.nodes();
  const auto& ws = entry.grid.weights();

  const std::size_t m = ts.size();
  std::vector<double> amp(m);
  std::vector<Complex> phase(m), ratio(m);
  for (std::size_t i = 0; i < m; ++i) {
    amp[i] = c_ * ws[i] * entry.phi[i] * std::exp(ts[i] * height);
    phase[i] = std::exp(Complex(0.0, -ts[i] * u0));
    ratio[i] = std::exp(Complex(0.0, -ts[i] * step));
  }
  std::vector<Complex> values(count);
  for (std::size_t k = 0; k < count; ++k) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      acc += amp[i] * phase[i];
      phase[i] *= ratio[i];
    }
    values[k] = acc;
  }
  // Phase recurrences drift by ~count*eps; spot-check against the adaptive
  // path at three sample points.
  for (std::size_t k : {std::size_t{0}, count / 2, count - 1}) {
    const Complex direct = evaluate(Complex(u0 + step * double(k), height)).value;
    const double scale = std::max(1.0, std::exp(0.5 * eps_ * std::abs(height)));
    if (std::abs(direct - values[k]) > 1e-8 * scale)
      throw NumericError("BumpMultiplier::sample_line: recurrence drifted from direct evaluation");
  }
  return values;
}

DecayCertificate decay_certificate(const BumpMultiplier& h, DecayCertificateOptions options) {
  if (options.real_points < 2 || options.imag_points < 2)
    throw ParameterRange("decay_certificate: need at least a 2x2 probe grid");
  auto scan = [&](int nx, int ny, Complex* arg_max) {
    double best = 0.0;
    for (int iy = 0; iy < ny; ++iy) {
      const double y = options.imag_extent * iy / (ny - 1);
      for (int ix = 0; ix < nx; ++ix) {
        const double x = options.real_extent * ix / (nx - 1);
        const Complex z(x, y);
        const double weighted = std::abs(h(z)) * (1.0 + std::abs(z)) *
                                std::exp(-0.5 * h.epsilon() * y);
        if (weighted > best) {
          best = weighted;
          if (arg_max) *arg_max = z;
        }
      }
    }
    return best;
  };
  DecayCertificate cert;
  cert.coarse_constant = scan(options.real_points, options.imag_points, nullptr);
  cert.constant = scan(2 * options.real_points - 1, 2 * options.imag_points - 1, &cert.arg_max);
  cert.drift = std::abs(cert.constant - cert.coarse_constant) / cert.constant;
  cert.stable = cert.drift <= options.drift_tolerance;
  return cert;
}

}  // namespace pwinterp
