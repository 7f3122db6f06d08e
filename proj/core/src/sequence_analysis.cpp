#include "pwinterp/sequence_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pwinterp {

namespace {

void require_inside(const ComplexSequence& seq, const HalfPlane& hp, const char* who) {
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (!hp.contains(seq[i]))
      throw InvalidArgument(std::string(who) + ": node " + std::to_string(i) +
                            " is not strictly inside the half-plane");
}

// Indices sorted by real part, shared by the windowed scans.
std::vector<std::size_t> order_by_real(const std::vector<Complex>& pts) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pts[a].real() < pts[b].real(); });
  return order;
}

}  // namespace

double pseudo_hyperbolic(Complex lambda, Complex mu, const HalfPlane& hp) {
  const double u = hp.boundary_distance(lambda);
  const double v = hp.boundary_distance(mu);
  if (!(u > 0.0) || !(v > 0.0))
    throw InvalidArgument("pseudo_hyperbolic: points must lie strictly inside the half-plane");
  const double dx = lambda.real() - mu.real();
  const double dy = lambda.imag() - mu.imag();
  const double num = std::hypot(dx, dy);
  const double den = std::hypot(dx, u + v);
  return num / den;
}

SeparationReport separation_report(const ComplexSequence& seq, const HalfPlane& hp,
                                   double threshold) {
  require_inside(seq, hp, "separation_report");
  const auto& pts = seq.points();
  if (pts.size() < 2)
    return SeparationReport{1.0, 0, 0, std::numeric_limits<double>::infinity(), true};

  double d_max = 0.0;
  for (const Complex& z : pts) d_max = std::max(d_max, hp.boundary_distance(z));

  const auto order = order_by_real(pts);
  SeparationReport rep;
  rep.min_pseudo_hyperbolic = std::numeric_limits<double>::infinity();
  rep.min_euclidean = std::numeric_limits<double>::infinity();
  // Scan pairs in real-part order. For a pair at real distance dx the value
  // is at least dx / hypot(dx, 2 d_max), so once that bound passes the
  // current minimum no later pair in the row can improve it.
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const std::size_t i = order[a], j = order[b];
      const double dx = pts[j].real() - pts[i].real();
      if (dx / std::hypot(dx, 2.0 * d_max) > rep.min_pseudo_hyperbolic &&
          dx > rep.min_euclidean)
        break;
      const double rho = pseudo_hyperbolic(pts[i], pts[j], hp);
      if (rho < rep.min_pseudo_hyperbolic) {
        rep.min_pseudo_hyperbolic = rho;
        rep.argmin_i = std::min(i, j);
        rep.argmin_j = std::max(i, j);
      }
      rep.min_euclidean = std::min(rep.min_euclidean, std::abs(pts[i] - pts[j]));
    }
  }
  rep.separated = rep.min_pseudo_hyperbolic > threshold;
  return rep;
}

ProductReport separation_products(const ComplexSequence& seq, const HalfPlane& hp) {
  require_inside(seq, hp, "separation_products");
  const auto& pts = seq.points();
  ProductReport rep;
  rep.values.resize(pts.size());
  rep.log_values.resize(pts.size());
  rep.infimum = std::numeric_limits<double>::infinity();
  rep.argmin = 0;
  for (std::size_t n = 0; n < pts.size(); ++n) {
    rep.log_values[n] = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (k != n) rep.log_values[n] += std::log(pseudo_hyperbolic(pts[n], pts[k], hp));
    rep.values[n] = std::exp(rep.log_values[n]);
    if (rep.values[n] < rep.infimum) {
      rep.infimum = rep.values[n];
      rep.argmin = n;
    }
  }
  return rep;
}

double separation_product_at(const ComplexSequence& seq, std::size_t index, const HalfPlane& hp) {
  if (index >= seq.size()) throw InvalidArgument("separation_product_at: index out of range");
  require_inside(seq, hp, "separation_product_at");
  const auto& pts = seq.points();
  double log_value = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k)
    if (k != index) log_value += std::log(pseudo_hyperbolic(pts[index], pts[k], hp));
  return std::exp(log_value);
}

double blaschke_condition_sum(const ComplexSequence& seq, const HalfPlane& hp) {
  require_inside(seq, hp, "blaschke_condition_sum");
  double sum = 0.0;
  for (const Complex& z : seq.points()) sum += hp.boundary_distance(z) / (1.0 + std::norm(z));
  return sum;
}

DensityReport upper_uniform_density(const ComplexSequence& seq, const std::vector<double>& radii) {
  if (!seq.strip_bound())
    throw InvalidArgument("upper_uniform_density: sequence has no declared strip bound");
  if (radii.empty()) throw ParameterRange("upper_uniform_density: empty radius list");
  std::vector<double> xs(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) xs[i] = seq[i].real();
  std::sort(xs.begin(), xs.end());

  DensityReport rep;
  rep.strip_bound = *seq.strip_bound();
  for (double r : radii) {
    if (!(r > 0.0)) throw ParameterRange("upper_uniform_density: radii must be positive");
    // Closed windows of width r; a maximizing window can be slid until an
    // endpoint touches a node, so trying both endpoint families is exhaustive.
    std::size_t best = 0;
    auto count_window = [&](double lo, double hi) {
      const double slack = 1e-9 * std::max({1.0, std::abs(lo), std::abs(hi)});
      auto first = std::lower_bound(xs.begin(), xs.end(), lo - slack);
      auto last = std::upper_bound(xs.begin(), xs.end(), hi + slack);
      return static_cast<std::size_t>(last - first);
    };
    for (double x : xs) {
      best = std::max(best, count_window(x, x + r));
      best = std::max(best, count_window(x - r, x));
    }
    rep.points.push_back(DensityPoint{r, best, double(best) / r});
  }
  return rep;
}

DiscreteMeasure boundary_distance_measure(const ComplexSequence& seq, const HalfPlane& hp) {
  require_inside(seq, hp, "boundary_distance_measure");
  std::vector<double> masses(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) masses[i] = hp.boundary_distance(seq[i]);
  return make_measure(seq.points(), std::move(masses));
}

CarlesonMeasureReport carleson_measure_constant(const DiscreteMeasure& measure,
                                                const HalfPlane& hp) {
  const std::size_t n = measure.atoms.size();
  std::vector<double> depth(n);
  for (std::size_t i = 0; i < n; ++i) {
    depth[i] = hp.boundary_distance(measure.atoms[i]);
    if (!(depth[i] > 0.0))
      throw InvalidArgument("carleson_measure_constant: atom " + std::to_string(i) +
                            " is not strictly inside the half-plane");
  }

  struct Entry {
    double x;
    double d;
    double m;
  };
  std::vector<Entry> entries(n);
  for (std::size_t i = 0; i < n; ++i)
    entries[i] = Entry{measure.atoms[i].real(), depth[i], measure.masses[i]};
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.x < b.x; });

  const double d_min = *std::min_element(depth.begin(), depth.end());
  const double d_max = *std::max_element(depth.begin(), depth.end());
  const double diameter = entries.back().x - entries.front().x;
  const int k_lo = static_cast<int>(std::ceil(std::log2(d_min)));
  const int k_hi = static_cast<int>(std::ceil(std::log2(std::max(diameter, d_max))));
  if (k_hi - k_lo > 100)
    throw ParameterRange("carleson_measure_constant: atom scales span more than 2^100");

  CarlesonMeasureReport rep{};
  rep.constant = 0.0;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double h = std::ldexp(1.0, k);
    // Atoms deeper than h cannot sit in a square of side h.
    std::vector<double> xs;
    std::vector<double> prefix{0.0};
    for (const Entry& e : entries)
      if (e.d <= h) {
        xs.push_back(e.x);
        prefix.push_back(prefix.back() + e.m);
      }
    if (xs.empty()) continue;
    auto mass_in = [&](double lo, double hi) {
      auto first = std::lower_bound(xs.begin(), xs.end(), lo);
      auto last = std::upper_bound(xs.begin(), xs.end(), hi);
      return prefix[std::size_t(last - xs.begin())] - prefix[std::size_t(first - xs.begin())];
    };
    auto consider = [&](double lo, double hi) {
      const double mass = mass_in(lo, hi);
      if (mass / h > rep.constant) {
        rep.constant = mass / h;
        rep.best = CarlesonBox{lo, h, mass, mass / h};
      }
    };
    for (double x : xs) {
      consider(x, x + h);
      consider(x - h, x);
    }
    ++rep.scales_scanned;
  }
  return rep;
}

}  // namespace pwinterp
