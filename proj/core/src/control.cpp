#include "pwinterp/control.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "pwinterp/quadprec.hpp"

namespace pwinterp {

// Full-precision modal form of a solved control. Hidden behind the public
// header so binary128 stays an implementation detail.
class ControlSignal::ExponentialForm {
 public:
  std::vector<qp::Cx> rates;   // conj(system rate) per active mode
  std::vector<qp::Cx> coeffs;

  qp::Cx value_at(qp::Real horizon, qp::Real t) const {
    qp::Cx acc;
    for (std::size_t m = 0; m < rates.size(); ++m)
      acc = acc + coeffs[m] * qp::qexp(-(horizon - t) * rates[m]);
    return acc;
  }
};

namespace {

using qp::Cx;
using qp::Real;

Cx to_q(Complex z) { return qp::from_std(z.real(), z.imag()); }
Complex to_d(Cx z) { return Complex(qp::to_double(z.re), qp::to_double(z.im)); }

// (1 - e^{-mu tau}) / mu, the pairing of two mode exponentials over [0, tau].
Cx pairing(Cx mu, Real tau) {
  const Cx one(Real(1), Real(0));
  return (one - qp::qexp(-tau * mu)) / mu;
}

struct ActiveSplit {
  std::vector<std::size_t> active;
  std::vector<std::size_t> excluded;
};

ActiveSplit split_by_coupling(const DiagonalSystem& system) {
  ActiveSplit split;
  for (std::size_t n = 0; n < system.rates.size(); ++n) {
    if (system.couplings[n] == Complex(0.0))
      split.excluded.push_back(n);
    else
      split.active.push_back(n);
  }
  return split;
}

// Zero-coupling modes cannot be steered; their targets must already be the
// free decay of the initial state.
void require_free_decay(const DiagonalSystem& system, double tau,
                        std::span<const Complex> x0, std::span<const Complex> x1,
                        const std::vector<std::size_t>& excluded, double tol) {
  for (std::size_t n : excluded) {
    const Complex free = std::exp(-system.rates[n] * tau) * x0[n];
    const double scale = std::max({1.0, std::abs(x0[n]), std::abs(x1[n])});
    if (std::abs(x1[n] - free) > tol * scale)
      throw UncontrollableMode(
          "mode " + std::to_string(n) +
              " has zero coupling but its target differs from free decay",
          n);
  }
}

void check_state_sizes(const DiagonalSystem& system, std::span<const Complex> x0,
                       std::span<const Complex> x1) {
  if (x0.size() != system.rates.size() || x1.size() != system.rates.size())
    throw InvalidArgument("state vectors must match the system dimension");
}

std::vector<Cx> build_gram(const std::vector<Cx>& rates, Real tau) {
  const std::size_t k = rates.size();
  std::vector<Cx> gram(k * k);
  for (std::size_t n = 0; n < k; ++n)
    for (std::size_t m = 0; m < k; ++m)
      gram[n * k + m] = pairing(rates[n] + qp::conj(rates[m]), tau);
  return gram;
}

double gram_condition_of(const std::vector<Cx>& gram, std::size_t k) {
  const std::vector<double> eigen = qp::hermitian_eigenvalues(gram, k);
  if (eigen.empty()) return 0.0;
  if (!(eigen.back() > 0.0)) return std::numeric_limits<double>::infinity();
  return eigen.front() / eigen.back();
}

struct FactoredGram {
  std::vector<Cx> gram;      // as assembled
  std::vector<Cx> factored;  // LDL* factors (possibly of the ridged matrix)
  std::size_t size = 0;
  bool regularized = false;
  double condition = 0.0;
};

FactoredGram factor_gram(const std::vector<Cx>& rates, Real tau) {
  FactoredGram fg;
  fg.size = rates.size();
  fg.gram = build_gram(rates, tau);
  fg.condition = gram_condition_of(fg.gram, fg.size);
  fg.factored = fg.gram;
  if (!qp::ldlt_factor(fg.factored, fg.size)) {
    Real trace(0);
    for (std::size_t n = 0; n < fg.size; ++n) trace += fg.gram[n * fg.size + n].re;
    const Real ridge = Real(1e-12) * trace;
    fg.factored = fg.gram;
    for (std::size_t n = 0; n < fg.size; ++n)
      fg.factored[n * fg.size + n].re += ridge;
    if (!qp::ldlt_factor(fg.factored, fg.size))
      throw NumericError("min_norm_control: Gram matrix is not positive definite");
    fg.regularized = true;
  }
  return fg;
}

// Solves for one target given a prepared factorization and fills everything
// downstream of the coefficients.
ControlSolveReport solve_with_factor(const DiagonalSystem& system, double tau,
                                     const ActiveSplit& split, const FactoredGram& fg,
                                     const std::vector<Cx>& rates_q,
                                     std::span<const Complex> x0, std::span<const Complex> x1,
                                     const ControlOptions& options) {
  const std::size_t k = split.active.size();
  const Real tau_q = qp::from_double(tau);

  std::vector<Cx> moments(k);
  for (std::size_t n = 0; n < k; ++n) {
    const std::size_t i = split.active[n];
    const Cx decayed = qp::qexp(-tau_q * rates_q[n]) * to_q(x0[i]);
    moments[n] = (to_q(x1[i]) - decayed) / to_q(system.couplings[i]);
  }

  std::vector<Cx> coeffs = moments;
  qp::ldlt_solve(fg.factored, k, coeffs);

  // Residual and norm both come from the unridged Gram.
  std::vector<Cx> gc(k);
  Real max_residual(0), moment_scale(0), norm_sq(0);
  for (std::size_t n = 0; n < k; ++n) {
    Cx acc;
    for (std::size_t m = 0; m < k; ++m) acc = acc + fg.gram[n * k + m] * coeffs[m];
    gc[n] = acc;
    const Real r = qp::abs(acc - moments[n]);
    if (r > max_residual) max_residual = r;
    const Real ms = qp::abs(moments[n]);
    if (ms > moment_scale) moment_scale = ms;
    norm_sq += (qp::conj(coeffs[n]) * acc).re;
  }
  if (moment_scale > Real(0)) max_residual = max_residual / moment_scale;
  if (!(norm_sq > Real(0))) norm_sq = Real(0);

  ControlSolveReport report;
  report.active_indices = split.active;
  report.excluded = split.excluded;
  report.gram_condition = fg.condition;
  report.regularized = fg.regularized;
  report.moment_residual = qp::to_double(max_residual);
  report.norm = qp::to_double(qp::qsqrt(norm_sq));

  report.coefficients.resize(k);
  for (std::size_t n = 0; n < k; ++n) report.coefficients[n] = to_d(coeffs[n]);

  auto form = std::make_shared<ControlSignal::ExponentialForm>();
  form->rates.resize(k);
  form->coeffs = std::move(coeffs);
  for (std::size_t n = 0; n < k; ++n) form->rates[n] = qp::conj(rates_q[n]);

  ControlSignal signal;
  signal.horizon = tau;
  signal.norm = report.norm;
  const std::size_t points = std::max<std::size_t>(options.sample_points, 2);
  signal.times.resize(points);
  signal.values.resize(points);
  for (std::size_t j = 0; j < points; ++j) {
    const double t = tau * double(j) / double(points - 1);
    signal.times[j] = j + 1 == points ? tau : t;
    signal.values[j] = to_d(form->value_at(tau_q, qp::from_double(signal.times[j])));
  }
  signal.form = std::move(form);
  report.signal = std::move(signal);
  return report;
}

// Cubic read of a sampled signal on its own (uniform) grid.
Complex sampled_value(const ControlSignal& signal, double t) {
  const std::size_t count = signal.times.size();
  if (count < 4) throw InvalidArgument("simulate: sampled signal needs at least 4 samples");
  const double t0 = signal.times.front();
  const double step = (signal.times.back() - t0) / double(count - 1);
  double u = (t - t0) / step;
  const std::ptrdiff_t cell = std::clamp<std::ptrdiff_t>(
      std::ptrdiff_t(std::floor(u)), 0, std::ptrdiff_t(count) - 2);
  const std::ptrdiff_t lo = std::clamp<std::ptrdiff_t>(cell - 1, 0, std::ptrdiff_t(count) - 4);
  Complex acc = 0.0;
  for (std::ptrdiff_t i = lo; i < lo + 4; ++i) {
    double basis = 1.0;
    for (std::ptrdiff_t j = lo; j < lo + 4; ++j)
      if (j != i) basis *= (u - double(j)) / double(i - j);
    acc += basis * signal.values[std::size_t(i)];
  }
  return acc;
}

}  // namespace

DiagonalSystem make_diagonal_system(std::vector<Complex> rates, std::vector<Complex> couplings) {
  if (rates.empty()) throw InvalidArgument("diagonal system: no modes");
  if (rates.size() != couplings.size())
    throw InvalidArgument("diagonal system: rate/coupling count mismatch");
  for (const Complex& r : rates) {
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
      throw InvalidArgument("diagonal system: rates must be finite");
    if (!(r.real() > 0.0))
      throw InvalidArgument("diagonal system: every rate needs positive real part");
  }
  for (const Complex& b : couplings)
    if (!std::isfinite(b.real()) || !std::isfinite(b.imag()))
      throw InvalidArgument("diagonal system: couplings must be finite");
  for (std::size_t i = 0; i < rates.size(); ++i)
    for (std::size_t j = i + 1; j < rates.size(); ++j)
      if (std::abs(rates[i] - rates[j]) <= 1e-12)
        throw InvalidArgument("diagonal system: rates must be distinct");
  return DiagonalSystem{std::move(rates), std::move(couplings)};
}

double stability_margin(const DiagonalSystem& system) {
  double margin = std::numeric_limits<double>::infinity();
  for (const Complex& r : system.rates) margin = std::min(margin, r.real());
  return margin;
}

WeightedNodeSet moment_nodes_unlimited(const DiagonalSystem& system) {
  std::vector<Complex> nodes;
  std::vector<double> weights;
  for (std::size_t n = 0; n < system.rates.size(); ++n) {
    if (system.couplings[n] == Complex(0.0)) continue;
    nodes.push_back(Complex(0.0, 1.0) * system.rates[n]);
    weights.push_back(std::abs(system.couplings[n]));
  }
  if (nodes.empty()) throw InvalidArgument("moment nodes: every coupling is zero");
  return make_weighted_nodes(ComplexSequence(std::move(nodes)), std::move(weights));
}

WeightedNodeSet moment_nodes(const DiagonalSystem& system, double tau) {
  if (!(tau > 0.0)) throw ParameterRange("moment nodes: tau must be positive");
  WeightedNodeSet set = moment_nodes_unlimited(system);
  for (std::size_t n = 0; n < set.nodes.size(); ++n)
    set.weights[n] *= std::exp(-0.5 * tau * set.nodes[n].imag());
  return set;
}

InterpolationProblem moment_interpolation_problem(const DiagonalSystem& system, double tau,
                                                  std::span<const Complex> x0,
                                                  std::span<const Complex> x1) {
  if (!(tau > 0.0)) throw ParameterRange("moment problem: tau must be positive");
  check_state_sizes(system, x0, x1);
  const ActiveSplit split = split_by_coupling(system);
  require_free_decay(system, tau, x0, x1, split.excluded, 1e-12);

  std::vector<Complex> nodes;
  std::vector<double> weights;
  std::vector<Complex> data;
  for (std::size_t n : split.active) {
    const Complex rate = system.rates[n];
    const Complex moment =
        (x1[n] - std::exp(-rate * tau) * x0[n]) / system.couplings[n];
    nodes.push_back(Complex(0.0, 1.0) * rate);
    weights.push_back(std::abs(system.couplings[n]) * std::exp(-0.5 * tau * rate.real()));
    // weight * e^{rate tau/2} collapses to |coupling| e^{i Im(rate) tau/2}:
    // the weighted datum has exactly the moment's magnitude.
    data.push_back(moment * std::abs(system.couplings[n]) *
                   std::exp(Complex(0.0, 0.5 * tau * rate.imag())));
  }
  InterpolationProblem problem{ComplexSequence(std::move(nodes)), std::move(data), 2.0,
                               0.5 * tau, 0.5, std::move(weights)};
  validate_problem(problem);
  return problem;
}

ControlSolveReport min_norm_control(const DiagonalSystem& system, double tau,
                                    std::span<const Complex> x0, std::span<const Complex> x1,
                                    const ControlOptions& options) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw ParameterRange("min_norm_control: tau must be positive and finite");
  check_state_sizes(system, x0, x1);
  const ActiveSplit split = split_by_coupling(system);
  require_free_decay(system, tau, x0, x1, split.excluded, options.free_decay_tol);

  if (split.active.empty()) {
    // Nothing to steer; the zero control is optimal.
    ControlSolveReport report;
    report.excluded = split.excluded;
    report.signal.horizon = tau;
    report.signal.times = {0.0, tau};
    report.signal.values = {Complex(0.0), Complex(0.0)};
    return report;
  }

  std::vector<Cx> rates_q(split.active.size());
  for (std::size_t n = 0; n < split.active.size(); ++n)
    rates_q[n] = to_q(system.rates[split.active[n]]);
  const FactoredGram fg = factor_gram(rates_q, qp::from_double(tau));
  return solve_with_factor(system, tau, split, fg, rates_q, x0, x1, options);
}

Trajectory simulate(const DiagonalSystem& system, double tau, std::span<const Complex> x0,
                    const ControlSignal& signal, const SimulateOptions& options) {
  if (!(tau > 0.0)) throw ParameterRange("simulate: tau must be positive");
  if (x0.size() != system.rates.size())
    throw InvalidArgument("simulate: initial state must match the system dimension");
  if (std::abs(signal.horizon - tau) > 1e-12 * std::max(1.0, tau))
    throw InvalidArgument("simulate: signal horizon does not match the requested span");
  if (options.output_points < 2) throw ParameterRange("simulate: need at least 2 output points");
  if (options.panels < 1 || options.points_per_panel < 2 || options.points_per_panel > 64)
    throw ParameterRange("simulate: bad quadrature shape");
  if (!signal.form && signal.times.size() < 4)
    throw InvalidArgument("simulate: sampled signal needs at least 4 samples");

  const std::size_t modes = system.rates.size();
  const std::size_t steps = options.output_points - 1;
  const Real tau_q = qp::from_double(tau);

  std::vector<Real> gl_nodes, gl_weights;
  qp::gauss_legendre_q(options.points_per_panel, gl_nodes, gl_weights);

  std::vector<Cx> rates_q(modes);
  for (std::size_t n = 0; n < modes; ++n) rates_q[n] = to_q(system.rates[n]);

  std::vector<double> times(options.output_points);
  for (std::size_t j = 0; j < options.output_points; ++j)
    times[j] = j == steps ? tau : tau * double(j) / double(steps);

  const auto control_at = [&](Real t) -> Cx {
    if (signal.form) return signal.form->value_at(tau_q, t);
    return to_q(sampled_value(signal, qp::to_double(t)));
  };

  // One full sweep at the given panel density; returns states on the output
  // grid (kept in quad until the caller converts).
  const auto sweep = [&](int panels_per_step) {
    std::vector<std::vector<Cx>> states(options.output_points, std::vector<Cx>(modes));
    std::vector<Cx> forced(modes);  // int_0^t e^{-rate (t - s)} u(s) ds
    for (std::size_t n = 0; n < modes; ++n)
      states[0][n] = to_q(x0[n]);
    for (std::size_t j = 0; j < steps; ++j) {
      const Real a = qp::from_double(times[j]);
      const Real b = qp::from_double(times[j + 1]);
      const Real width = (b - a) / Real(panels_per_step);
      std::vector<Cx> gain(modes);
      for (std::size_t n = 0; n < modes; ++n) gain[n] = qp::qexp(-(b - a) * rates_q[n]);
      std::vector<Cx> increment(modes);
      for (int panel = 0; panel < panels_per_step; ++panel) {
        const Real lo = a + Real(panel) * width;
        const Real half = width / Real(2);
        const Real mid = lo + half;
        for (int i = 0; i < options.points_per_panel; ++i) {
          const Real s = mid + half * gl_nodes[i];
          const Real w = half * gl_weights[i];
          const Cx u = control_at(s);
          for (std::size_t n = 0; n < modes; ++n)
            increment[n] = increment[n] + w * (qp::qexp(-(b - s) * rates_q[n]) * u);
        }
      }
      for (std::size_t n = 0; n < modes; ++n) {
        forced[n] = gain[n] * forced[n] + increment[n];
        states[j + 1][n] = qp::qexp(-qp::from_double(times[j + 1]) * rates_q[n]) * to_q(x0[n]) +
                           to_q(system.couplings[n]) * forced[n];
      }
    }
    return states;
  };

  const int base = std::max(1, options.panels / int(steps));
  const auto coarse = sweep(base);
  const auto fine = sweep(2 * base);

  Trajectory trajectory;
  trajectory.times = std::move(times);
  trajectory.states.resize(options.output_points);
  for (std::size_t j = 0; j < options.output_points; ++j) {
    trajectory.states[j].resize(modes);
    for (std::size_t n = 0; n < modes; ++n) trajectory.states[j][n] = to_d(fine[j][n]);
  }
  trajectory.endpoint = trajectory.states.back();
  Real err(0);
  for (std::size_t n = 0; n < modes; ++n) {
    const Real e = qp::abs(fine.back()[n] - coarse.back()[n]);
    if (e > err) err = e;
  }
  trajectory.endpoint_error = qp::to_double(err);
  return trajectory;
}

std::vector<Complex> closed_form_endpoint(const DiagonalSystem& system, double tau,
                                          std::span<const Complex> x0,
                                          const ControlSignal& signal) {
  if (!signal.form)
    throw InvalidArgument("closed_form_endpoint: signal carries no exponential form");
  if (x0.size() != system.rates.size())
    throw InvalidArgument("closed_form_endpoint: initial state size mismatch");
  const Real tau_q = qp::from_double(tau);
  const ControlSignal::ExponentialForm& form = *signal.form;
  std::vector<Complex> endpoint(system.rates.size());
  for (std::size_t n = 0; n < system.rates.size(); ++n) {
    const Cx rate = to_q(system.rates[n]);
    Cx forced;
    for (std::size_t m = 0; m < form.rates.size(); ++m)
      forced = forced + form.coeffs[m] * pairing(rate + form.rates[m], tau_q);
    endpoint[n] = to_d(qp::qexp(-tau_q * rate) * to_q(x0[n]) + to_q(system.couplings[n]) * forced);
  }
  return endpoint;
}

OscillationStudy simple_oscillation_controls(double damping, double frequency, int modes,
                                             double tau, const ControlOptions& options) {
  if (!(damping > 0.0)) throw ParameterRange("oscillation controls: damping must be positive");
  if (!(frequency > 0.0)) throw ParameterRange("oscillation controls: frequency must be positive");
  if (modes < 0 || modes > 64) throw ParameterRange("oscillation controls: modes out of range");
  if (!(tau > 0.0)) throw ParameterRange("oscillation controls: tau must be positive");

  std::vector<Complex> rates;
  std::vector<Complex> couplings;
  for (int k = -modes; k <= modes; ++k) {
    rates.push_back(Complex(damping, frequency * double(k)));
    couplings.push_back(Complex(1.0));
  }
  OscillationStudy study{make_diagonal_system(std::move(rates), std::move(couplings)), tau, {}};

  const std::size_t dim = study.system.rates.size();
  const ActiveSplit split = split_by_coupling(study.system);
  std::vector<Cx> rates_q(dim);
  for (std::size_t n = 0; n < dim; ++n) rates_q[n] = to_q(study.system.rates[n]);
  const FactoredGram fg = factor_gram(rates_q, qp::from_double(tau));

  const std::vector<Complex> zero(dim, Complex(0.0));
  for (std::size_t target = 0; target < dim; ++target) {
    std::vector<Complex> x1(dim, Complex(0.0));
    x1[target] = Complex(1.0);
    study.per_target.push_back(
        solve_with_factor(study.system, tau, split, fg, rates_q, zero, x1, options));
  }
  return study;
}

ControllabilityReport controllability_report(const DiagonalSystem& system, double tau) {
  if (!(tau > 0.0)) throw ParameterRange("controllability report: tau must be positive");
  ControllabilityReport report;
  report.margin = stability_margin(system);
  report.uncontrollable = split_by_coupling(system).excluded;

  const WeightedNodeSet set = moment_nodes_unlimited(system);
  report.offsets = {0.0, report.margin / 4.0, report.margin / 2.0};
  for (double offset : report.offsets) {
    const HalfPlane hp{offset, Side::upper};
    const DiscreteMeasure measure = interpolation_test_measure(set, hp, 2.0);
    report.offset_constants.push_back(carleson_measure_constant(measure, hp).constant);
  }
  report.unlimited_constant = report.offset_constants.front();

  std::vector<Cx> rates_q;
  for (std::size_t n = 0; n < system.rates.size(); ++n)
    if (system.couplings[n] != Complex(0.0)) rates_q.push_back(to_q(system.rates[n]));
  report.tau_grid = {0.5 * tau, tau, 2.0 * tau, 4.0 * tau};
  for (double horizon : report.tau_grid) {
    const std::vector<Cx> gram = build_gram(rates_q, qp::from_double(horizon));
    report.gram_conditions.push_back(gram_condition_of(gram, rates_q.size()));
  }

  char line[160];
  if (!report.uncontrollable.empty()) {
    std::snprintf(line, sizeof line, "%zu mode(s) have zero coupling and cannot be moved",
                  report.uncontrollable.size());
    report.notes.push_back(line);
  }
  std::snprintf(line, sizeof line,
                "shrinking the horizon from %g to %g raises the Gram condition from %.3g to %.3g",
                report.tau_grid.back(), report.tau_grid.front(),
                report.gram_conditions.back(), report.gram_conditions.front());
  report.notes.push_back(line);
  std::snprintf(line, sizeof line,
                "box constant %.6g at the boundary, %.6g half-way into the stability margin",
                report.offset_constants.front(), report.offset_constants.back());
  report.notes.push_back(line);
  return report;
}

}  // namespace pwinterp
