#include "pwinterp/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace pwinterp {

namespace {

GaussLegendre compute_rule(int k) {
  GaussLegendre rule;
  rule.nodes.resize(k);
  rule.weights.resize(k);
  // Newton iteration on P_k from the asymptotic initial guess. Nodes come out
  // in decreasing order of the guess; store ascending.
  for (int i = 0; i < k; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence: p2 = P_k(x), dp = P_k'(x).
      double p0 = 1.0, p1 = x;
      for (int n = 2; n <= k; ++n) {
        double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      dp = k * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // Recompute derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int n = 2; n <= k; ++n) {
      double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
      p0 = p1;
      p1 = p2;
    }
    dp = k * (x * p1 - p0) / (x * x - 1.0);
    rule.nodes[k - 1 - i] = x;
    rule.weights[k - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int k) {
  if (k < 2 || k > 64) throw ParameterRange("gauss_legendre: points per panel must be in [2, 64]");
  static std::map<int, GaussLegendre> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, compute_rule(k)).first;
  return it->second;
}

PanelGrid PanelGrid::uniform(double a, double b, int panels, int points_per_panel) {
  if (!(a < b)) throw ParameterRange("PanelGrid::uniform: need a < b");
  if (panels < 1) throw ParameterRange("PanelGrid::uniform: need at least one panel");
  std::vector<double> breaks(panels + 1);
  for (int j = 0; j <= panels; ++j)
    breaks[j] = a + (b - a) * (static_cast<double>(j) / panels);
  breaks.back() = b;
  return from_breakpoints(std::move(breaks), points_per_panel);
}

PanelGrid PanelGrid::from_breakpoints(std::vector<double> breakpoints, int points_per_panel) {
  if (breakpoints.size() < 2) throw ParameterRange("PanelGrid: need at least two breakpoints");
  for (std::size_t j = 1; j < breakpoints.size(); ++j)
    if (!(breakpoints[j - 1] < breakpoints[j]))
      throw ParameterRange("PanelGrid: breakpoints must be strictly increasing");
  const GaussLegendre& rule = gauss_legendre(points_per_panel);
  PanelGrid grid;
  grid.points_ = points_per_panel;
  grid.breaks_ = std::move(breakpoints);
  const std::size_t panels = grid.breaks_.size() - 1;
  grid.nodes_.reserve(panels * rule.nodes.size());
  grid.weights_.reserve(panels * rule.nodes.size());
  for (std::size_t j = 0; j < panels; ++j) {
    const double mid = 0.5 * (grid.breaks_[j] + grid.breaks_[j + 1]);
    const double half = 0.5 * (grid.breaks_[j + 1] - grid.breaks_[j]);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      grid.nodes_.push_back(mid + half * rule.nodes[i]);
      grid.weights_.push_back(half * rule.weights[i]);
    }
  }
  return grid;
}

PanelGrid PanelGrid::refined() const {
  std::vector<double> breaks;
  breaks.reserve(2 * breaks_.size());
  for (std::size_t j = 0; j + 1 < breaks_.size(); ++j) {
    breaks.push_back(breaks_[j]);
    breaks.push_back(0.5 * (breaks_[j] + breaks_[j + 1]));
  }
  breaks.push_back(breaks_.back());
  return from_breakpoints(std::move(breaks), points_);
}

}  // namespace pwinterp
