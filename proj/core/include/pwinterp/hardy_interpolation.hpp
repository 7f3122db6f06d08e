#pragma once

#include <optional>
#include <span>

#include "pwinterp/sequence_analysis.hpp"

namespace pwinterp {

// Nodes with strictly positive target weights, the input of the weighted
// interpolation tests.
struct WeightedNodeSet {
  ComplexSequence nodes;
  std::vector<double> weights;
};

WeightedNodeSet make_weighted_nodes(ComplexSequence nodes, std::vector<double> weights);

// The measure with an atom at each node of mass
//   (boundary distance)^q / (weight * separation product)^q,
// assembled in log space. Throws ProductUnderflow when a mass leaves the
// representable range (the separation product collapsed).
DiscreteMeasure interpolation_test_measure(const WeightedNodeSet&, const HalfPlane&, double q);

struct MeasureCondition {
  double constant;
  double threshold;
  bool satisfied;
  CarlesonBox best;
};

// Geometric box constant of the test measure against a threshold: finite and
// small means weighted interpolation with these targets is solvable with
// uniform control.
MeasureCondition measure_condition_check(const WeightedNodeSet&, const HalfPlane&, double q,
                                         double threshold);

struct WeightTransfer {
  WeightedNodeSet transferred;
  std::vector<std::size_t> kept;      // indices of surviving nodes
  std::vector<std::size_t> excluded;  // nodes on or outside the boundary
  double tau;
};

// Carries weights across the bandlimited-to-Hardy reduction: the weight at
// each interior node picks up the boundary factor e^{tau Im lambda} (upper
// half-plane; the sign flips on the lower side). Nodes not strictly inside
// cannot carry a transferred weight and are dropped with their indices
// reported.
WeightTransfer bandwidth_weight_transfer(const WeightedNodeSet&, double tau, const HalfPlane&);

struct SolvabilityOracle {
  double operator_norm;    // worst-case minimal norm over unit weighted data
  double gram_condition;
  bool regularized;
  std::optional<double> data_min_norm;  // minimal norm for the supplied data
};

// Exact reproducing-kernel computation for small node counts: Gram matrix of
// the half-plane kernels, Cholesky, extreme singular values. Ridge of
// 1e-12 * trace is added (and flagged) if the Gram loses definiteness.
SolvabilityOracle solvability_oracle(const WeightedNodeSet&, const HalfPlane&,
                                     std::span<const Complex> data = {}, int max_nodes = 48);

}  // namespace pwinterp
