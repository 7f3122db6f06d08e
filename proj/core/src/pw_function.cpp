#include "pwinterp/pw_function.hpp"

#include <cmath>

#include "pwinterp/special.hpp"

namespace pwinterp {

namespace {

// Integral of density * e^{itz} over one fixed grid.
Complex transform_on_grid(const PanelGrid& grid, const std::vector<Complex>& values, Complex z) {
  const auto& ts = grid.nodes();
  const auto& ws = grid.weights();
  Complex acc = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    // e^{itz} = e^{-t Im z} (cos(t Re z) + i sin(t Re z))
    acc += ws[i] * values[i] * std::exp(Complex(-ts[i] * z.imag(), ts[i] * z.real()));
  }
  return acc;
}

std::vector<Complex> sample_density(const std::function<Complex(double)>& density,
                                    const PanelGrid& grid) {
  std::vector<Complex> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = density(grid.nodes()[i]);
  return values;
}

}  // namespace

PWFunction PWFunction::synthesize(std::function<Complex(double)> density, double tau,
                                  std::string label, SynthesisOptions options) {
  if (!(tau > 0.0)) throw ParameterRange("PWFunction::synthesize: tau must be positive");
  if (!density) throw InvalidArgument("PWFunction::synthesize: empty density");
  if (options.initial_panels < 1 || options.max_panels < options.initial_panels)
    throw ParameterRange("PWFunction::synthesize: bad panel limits");

  PWFunction f;
  f.tau_ = tau;
  f.label_ = std::move(label);
  f.density_ = std::move(density);
  f.options_ = options;

  // Settle a stored grid by refining the value at z = 0 to tolerance; the
  // stored samples are what exports write and imports rebuild.
  int panels = options.initial_panels;
  PanelGrid grid = PanelGrid::uniform(-tau, tau, panels, options.points_per_panel);
  std::vector<Complex> values = sample_density(f.density_, grid);
  auto scale_of = [&](const PanelGrid& g, const std::vector<Complex>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g.weights()[i] * std::abs(v[i]);
    return s;
  };
  Complex prev = transform_on_grid(grid, values, 0.0);
  while (true) {
    if (panels * 2 > options.max_panels) {
      // Keep the finest grid; per-evaluation refinement will raise the error.
      break;
    }
    panels *= 2;
    PanelGrid next = PanelGrid::uniform(-tau, tau, panels, options.points_per_panel);
    std::vector<Complex> next_values = sample_density(f.density_, next);
    const Complex value = transform_on_grid(next, next_values, 0.0);
    const double floor = scale_of(next, next_values);
    grid = std::move(next);
    values = std::move(next_values);
    if (std::abs(value - prev) <= options.rel_tol * std::max(std::abs(value), floor)) break;
    prev = value;
  }
  f.scale_ = scale_of(grid, values);
  f.grid_ = std::move(grid);
  f.samples_ = std::move(values);
  return f;
}

PWFunction PWFunction::from_samples(PanelGrid grid, std::vector<Complex> values, double tau,
                                    std::string label) {
  if (!(tau > 0.0)) throw ParameterRange("PWFunction::from_samples: tau must be positive");
  if (grid.size() != values.size())
    throw InvalidArgument("PWFunction::from_samples: grid/value size mismatch");
  if (std::abs(grid.lower() + tau) > 1e-9 * tau || std::abs(grid.upper() - tau) > 1e-9 * tau)
    throw InvalidArgument("PWFunction::from_samples: grid must span [-tau, tau]");
  PWFunction f;
  f.tau_ = tau;
  f.label_ = std::move(label);
  f.grid_ = std::move(grid);
  f.samples_ = std::move(values);
  double s = 0.0;
  for (std::size_t i = 0; i < f.grid_.size(); ++i)
    s += f.grid_.weights()[i] * std::abs(f.samples_[i]);
  f.scale_ = s;
  return f;
}

EvalResult PWFunction::evaluate(Complex z) const {
  if (tau_ * std::abs(z.imag()) > 700.0)
    throw ParameterRange("PWFunction::evaluate: e^{tau |Im z|} overflows");
  if (!density_) {
    Complex value = transform_on_grid(grid_, samples_, z);
    return EvalResult{value, 0.0, grid_.panel_count(), false};
  }
  // Double panels until two consecutive values agree. The convergence floor
  // mixes the value with the density's L1 size so exact zeros of f converge.
  const double off_axis = std::exp(tau_ * std::abs(z.imag()));
  int panels = options_.initial_panels;
  PanelGrid grid = PanelGrid::uniform(-tau_, tau_, panels, options_.points_per_panel);
  Complex prev = transform_on_grid(grid, sample_density(density_, grid), z);
  while (panels * 2 <= options_.max_panels) {
    panels *= 2;
    grid = PanelGrid::uniform(-tau_, tau_, panels, options_.points_per_panel);
    const Complex value = transform_on_grid(grid, sample_density(density_, grid), z);
    const double delta = std::abs(value - prev);
    if (delta <= options_.rel_tol * std::max(std::abs(value), scale_ * off_axis))
      return EvalResult{value, delta, panels, true};
    prev = value;
  }
  PanelGrid finest = PanelGrid::uniform(-tau_, tau_, options_.max_panels, options_.points_per_panel);
  const Complex value = transform_on_grid(finest, sample_density(density_, finest), z);
  throw QuadratureNotConverged("PWFunction::evaluate: panel cap reached before tolerance", value,
                               prev, options_.max_panels);
}

Complex kernel_eval(Complex lambda, double tau, Complex z) {
  if (!(tau > 0.0)) throw ParameterRange("kernel_eval: tau must be positive");
  return complex_sinc(tau * (z - std::conj(lambda)));
}

PWFunction kernel_function(Complex lambda, double tau) {
  if (!(tau > 0.0)) throw ParameterRange("kernel_function: tau must be positive");
  const Complex lbar = std::conj(lambda);
  auto density = [lbar, tau](double t) {
    return std::exp(Complex(lbar.imag() * t, -lbar.real() * t)) / (2.0 * tau);
  };
  return PWFunction::synthesize(density, tau, "kernel");
}

double kernel_norm_sq_exact(Complex lambda, double tau) {
  if (!(tau > 0.0)) throw ParameterRange("kernel_norm_sq_exact: tau must be positive");
  const double y = lambda.imag();
  if (y == 0.0) return M_PI / tau;
  const double w = 2.0 * tau * y;
  return (M_PI / tau) * std::sinh(w) / w;
}

double growth_envelope(Complex z, double tau, double p) {
  if (!(p > 1.0)) throw ParameterRange("growth_envelope: p must be > 1");
  const double y = std::abs(z.imag());
  return std::exp(tau * y) * std::pow(1.0 + y, -1.0 / p);
}

}  // namespace pwinterp
