#pragma once

#include <memory>
#include <vector>

#include "pwinterp/generating_function.hpp"
#include "pwinterp/line_norm.hpp"
#include "pwinterp/pw_function.hpp"

namespace pwinterp {

// Node family {f_n} with f_n(lambda_k) = delta_{nk}. Two backings:
//  - a generating function: f_n(z) = S(z) / (S'(lambda_n) (z - lambda_n)),
//    with the delta identity exact by construction (hits on a node short-
//    circuit the quotient);
//  - user-supplied functions, checked rather than constructed.
class BiorthogonalFamily {
 public:
  // Validates every derivative against the multiple-zero floor 1e-10.
  static BiorthogonalFamily from_generating(GeneratingFunction s);
  static BiorthogonalFamily from_functions(std::vector<Complex> nodes,
                                           std::vector<PWFunction> functions);

  std::size_t size() const { return nodes_.size(); }
  Complex node(std::size_t n) const { return nodes_[n]; }
  const std::vector<Complex>& nodes() const { return nodes_; }

  Complex evaluate(std::size_t n, Complex z) const;

  // nullptr when user-backed.
  const GeneratingFunction* generating() const { return generating_.get(); }
  // S'(lambda_n); only for generated families.
  double derivative(std::size_t n) const;
  const PWFunction& function(std::size_t n) const;

 private:
  BiorthogonalFamily() = default;
  std::vector<Complex> nodes_;
  std::shared_ptr<const GeneratingFunction> generating_;
  std::vector<double> derivatives_;
  std::vector<PWFunction> functions_;
};

struct BiorthogonalityCheck {
  double max_off_diagonal;
  double max_diagonal_deviation;  // max |f_n(lambda_n) - 1|
  bool pass;
};

// Evaluates f_n(lambda_k) over all pairs against the given tolerance.
BiorthogonalityCheck validate_biorthogonality(const BiorthogonalFamily&, double tol = 1e-8);

struct FamilyNormReport {
  std::vector<double> norms;  // scaled by (1+|Im lambda_n|)^{1/p} e^{-tau |Im lambda_n|}
  double sup;
  std::size_t arg_sup;
  double p;
  double tau;
  double radius;  // truncation radius the norms settled at
};

// L^p norms of the normalized family members along the real line. For
// generated families every member is integrated on one shared grid (the
// generating function is the costly factor and is evaluated once per point).
FamilyNormReport family_norm_report(const BiorthogonalFamily&, double tau, double p,
                                    LineIntegralOptions options = {});

}  // namespace pwinterp
