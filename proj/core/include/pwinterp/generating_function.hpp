#pragma once

#include <optional>
#include <vector>

#include "pwinterp/sequence.hpp"

namespace pwinterp {

// Entire function with simple zeros at 0 and +-r for each stored positive
// node r: S(z) = z * prod (1 - z^2/r^2), accumulated in log space. When the
// node family continues as n + delta beyond the stored range (declared via a
// tail model), the infinite continuation is folded in analytically:
//   log prod_{n >= M} (1 - z^2/(n+delta)^2) = -sum_j z^{2j} zeta(2j, M+delta)/j,
// a series convergent for |z| < M + delta. Tables of zeta coefficients are
// precomputed at construction for a dyadic ladder of cutoffs M, with the
// model factors below the chosen cutoff multiplied in explicitly, so any
// evaluation radius up to the largest cutoff is covered without rebuilding.
class GeneratingFunction {
 public:
  // Symmetric node set: one zero at 0, zeros at +-r for positive nodes r
  // (strictly increasing). tail_start: the continuation covers n >= tail_start.
  static GeneratingFunction from_positive_nodes(std::vector<double> positive_nodes,
                                                std::optional<double> tail_delta = std::nullopt,
                                                int tail_start = 0);

  // Requires a symmetric real sequence. Generator-tagged families
  // (integers, perturbed-integers, close-pair) get their tail model attached
  // automatically; other inputs are treated as plain truncated products.
  static GeneratingFunction from_sequence(const ComplexSequence&);

  Complex evaluate(Complex z) const;
  Complex operator()(Complex z) const { return evaluate(z); }

  // Central differences with step 1e-6 at the given node (nodes indexed
  // ascending over -r_max..0..r_max).
  double derivative_at(std::size_t index) const;

  std::size_t size() const { return 2 * positive_.size() + 1; }
  double node(std::size_t index) const;
  std::vector<double> nodes() const;
  const std::vector<double>& positive_nodes() const { return positive_; }
  bool has_tail() const { return tail_delta_.has_value(); }
  std::optional<double> tail_delta() const { return tail_delta_; }
  int tail_start() const { return tail_start_; }
  double max_radius() const;  // largest |z| the precomputed tables support

 private:
  GeneratingFunction() = default;

  struct TailTable {
    double cutoff;               // M + delta
    int explicit_until;          // model factors for n in [tail_start, explicit_until)
    std::vector<double> coeff;   // zeta(2j, cutoff)/j, j = 1..coeff.size()
  };

  std::vector<double> positive_;
  std::optional<double> tail_delta_;
  int tail_start_ = 0;
  std::vector<TailTable> tables_;

  Complex log_tail(Complex z2, double abs_z) const;
};

}  // namespace pwinterp
