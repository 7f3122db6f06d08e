#include "pwinterp/biorthogonal.hpp"

#include <algorithm>
#include <cmath>

namespace pwinterp {

namespace {

constexpr double kDerivativeFloor = 1e-10;

}  // namespace

BiorthogonalFamily BiorthogonalFamily::from_generating(GeneratingFunction s) {
  BiorthogonalFamily family;
  auto shared = std::make_shared<GeneratingFunction>(std::move(s));
  family.generating_ = shared;
  const std::size_t count = shared->size();
  family.nodes_.resize(count);
  family.derivatives_.resize(count);
  for (std::size_t n = 0; n < count; ++n) {
    family.nodes_[n] = Complex(shared->node(n), 0.0);
    family.derivatives_[n] = shared->derivative_at(n);
    if (std::abs(family.derivatives_[n]) < kDerivativeFloor)
      throw MultipleZero("BiorthogonalFamily: numerically multiple zero at node " +
                             std::to_string(n),
                         n, std::abs(family.derivatives_[n]));
  }
  return family;
}

BiorthogonalFamily BiorthogonalFamily::from_functions(std::vector<Complex> nodes,
                                                      std::vector<PWFunction> functions) {
  if (nodes.size() != functions.size())
    throw InvalidArgument("BiorthogonalFamily: node/function count mismatch");
  if (nodes.empty()) throw InvalidArgument("BiorthogonalFamily: empty family");
  BiorthogonalFamily family;
  family.nodes_ = std::move(nodes);
  family.functions_ = std::move(functions);
  return family;
}

Complex BiorthogonalFamily::evaluate(std::size_t n, Complex z) const {
  if (n >= size()) throw InvalidArgument("BiorthogonalFamily::evaluate: index out of range");
  if (!generating_) return functions_[n](z);
  // Exact node hits resolve to the delta identity; the generating function
  // vanishes there and the quotient would be 0/0.
  for (std::size_t k = 0; k < nodes_.size(); ++k)
    if (z == nodes_[k]) return k == n ? 1.0 : 0.0;
  return (*generating_)(z) / (derivatives_[n] * (z - nodes_[n]));
}

double BiorthogonalFamily::derivative(std::size_t n) const {
  if (!generating_) throw InvalidArgument("BiorthogonalFamily: no generating function");
  return derivatives_.at(n);
}

const PWFunction& BiorthogonalFamily::function(std::size_t n) const {
  if (generating_) throw InvalidArgument("BiorthogonalFamily: generated family has no stored functions");
  return functions_.at(n);
}

BiorthogonalityCheck validate_biorthogonality(const BiorthogonalFamily& family, double tol) {
  BiorthogonalityCheck check{0.0, 0.0, false};
  for (std::size_t n = 0; n < family.size(); ++n) {
    for (std::size_t k = 0; k < family.size(); ++k) {
      const double mag = std::abs(family.evaluate(n, family.node(k)));
      if (n == k)
        check.max_diagonal_deviation = std::max(check.max_diagonal_deviation, std::abs(mag - 1.0));
      else
        check.max_off_diagonal = std::max(check.max_off_diagonal, mag);
    }
  }
  check.pass = check.max_off_diagonal <= tol && check.max_diagonal_deviation <= tol;
  return check;
}

FamilyNormReport family_norm_report(const BiorthogonalFamily& family, double tau, double p,
                                    LineIntegralOptions options) {
  if (!(p > 1.0)) throw ParameterRange("family_norm_report: p must exceed 1");
  if (!(tau > 0.0)) throw ParameterRange("family_norm_report: tau must be positive");
  FamilyNormReport report;
  report.p = p;
  report.tau = tau;
  report.norms.resize(family.size());

  auto scaling = [&](std::size_t n) {
    const double y = std::abs(family.node(n).imag());
    return std::pow(1.0 + y, 1.0 / p) * std::exp(-tau * y);
  };

  if (!family.generating()) {
    double radius = 0.0;
    for (std::size_t n = 0; n < family.size(); ++n) {
      LineNorm norm = line_norm(family.function(n), 0.0, p, options);
      report.norms[n] = scaling(n) * norm.norm;
      radius = std::max(radius, norm.radius);
    }
    report.radius = radius;
  } else {
    // Shared sweep: sample S once per grid point; each member is a scaled
    // quotient of the same samples. Tails are tracked per member.
    const GeneratingFunction& s = *family.generating();
    const std::size_t count = family.size();
    options.decay_power = std::max(options.decay_power, p);
    double max_node = 0.0;
    for (std::size_t n = 0; n < count; ++n)
      max_node = std::max(max_node, std::abs(family.node(n).real()));
    double radius = std::max(options.initial_radius, 2.0 * max_node);
    std::vector<double> value(count);
    while (true) {
      const int panels = std::max(1, int(std::ceil(2.0 * radius / options.panel_width)));
      PanelGrid grid = PanelGrid::uniform(-radius, radius, panels, options.points_per_panel);
      std::fill(value.begin(), value.end(), 0.0);
      std::vector<double> edge_amp(count, 0.0);
      const std::size_t edge_from =
          grid.size() - std::min(grid.size(),
                                 std::size_t(options.edge_panels * 2 * options.points_per_panel));
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.nodes()[i];
        const Complex sx = s(Complex(x, 0.0));
        for (std::size_t n = 0; n < count; ++n) {
          const double dist = x - family.node(n).real();
          double mag;
          if (dist == 0.0)
            mag = 1.0;  // exact node hit: the member equals its delta value
          else
            mag = std::abs(sx) / (std::abs(family.derivative(n)) * std::abs(dist));
          value[n] += grid.weights()[i] * std::pow(mag, p);
          if (i >= edge_from)
            edge_amp[n] = std::max(edge_amp[n],
                                   std::pow(mag, p) * std::pow(std::abs(x), options.decay_power));
        }
      }
      bool converged = true;
      for (std::size_t n = 0; n < count && converged; ++n) {
        const double tail = 2.0 * edge_amp[n] * std::pow(radius, 1.0 - options.decay_power) /
                            (options.decay_power - 1.0);
        if (tail > std::max(options.abs_tol, options.rel_tol * value[n])) converged = false;
      }
      if (converged) {
        for (std::size_t n = 0; n < count; ++n)
          report.norms[n] = scaling(n) * std::pow(value[n], 1.0 / p);
        report.radius = radius;
        break;
      }
      if (2.0 * radius > options.max_radius)
        throw TruncationInsufficient("family_norm_report: radius cap reached", value[0], 0.0);
      radius *= 2.0;
      if (radius > s.max_radius())
        throw ParameterRange("family_norm_report: radius exceeds the generating function tables");
    }
  }

  report.sup = 0.0;
  report.arg_sup = 0;
  for (std::size_t n = 0; n < family.size(); ++n)
    if (report.norms[n] > report.sup) {
      report.sup = report.norms[n];
      report.arg_sup = n;
    }
  return report;
}

}  // namespace pwinterp
