#pragma once

#include <cstddef>
#include <vector>

#include "pwinterp/errors.hpp"

namespace pwinterp {

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// k-point rule, computed once per k and cached. k in [2, 64].
const GaussLegendre& gauss_legendre(int k);

// Composite Gauss-Legendre grid over consecutive panels. Panels need not be
// uniform; graded grids use from_breakpoints.
class PanelGrid {
 public:
  PanelGrid() = default;

  static PanelGrid uniform(double a, double b, int panels, int points_per_panel);
  // breakpoints strictly increasing, at least two entries.
  static PanelGrid from_breakpoints(std::vector<double> breakpoints, int points_per_panel);

  const std::vector<double>& breakpoints() const { return breaks_; }
  int points_per_panel() const { return points_; }
  int panel_count() const { return static_cast<int>(breaks_.size()) - 1; }
  double lower() const { return breaks_.front(); }
  double upper() const { return breaks_.back(); }

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }

  // Every panel split in two; preserves grading.
  PanelGrid refined() const;

 private:
  std::vector<double> breaks_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  int points_ = 0;
};

// Value of an adaptive evaluation together with how it settled.
struct EvalResult {
  Complex value;
  double refinement_delta;  // |last - previous| across the final refinement
  int panels;
  bool refinable;  // false for fixed-grid instances (delta reported as 0)
};

// Sum of w_i f(x_i) over the grid. F maps double to double or Complex.
template <class F>
auto integrate(const PanelGrid& grid, F&& f) {
  const auto& xs = grid.nodes();
  const auto& ws = grid.weights();
  using R = decltype(f(xs[0]) * 1.0);
  R acc{};
  for (std::size_t i = 0; i < xs.size(); ++i) acc += ws[i] * f(xs[i]);
  return acc;
}

}  // namespace pwinterp
