#pragma once

#include <cstddef>
#include <vector>

#include "pwinterp/sequence.hpp"

namespace pwinterp {

// |(lambda - mu) / (lambda - conj(mu) - 2i a)| for the upper half-plane at
// offset a. The identical expression serves the lower side: with u, v the
// boundary distances of lambda, mu (same sign inside one half-plane), the
// denominator squares to |Re difference|^2 + (u + v)^2 on either side.
// Both points must lie strictly inside; throws InvalidArgument otherwise.
double pseudo_hyperbolic(Complex lambda, Complex mu, const HalfPlane& hp);

struct SeparationReport {
  double min_pseudo_hyperbolic;
  std::size_t argmin_i = 0;
  std::size_t argmin_j = 0;
  double min_euclidean;
  bool separated;  // min_pseudo_hyperbolic above the given threshold
};

SeparationReport separation_report(const ComplexSequence&, const HalfPlane&,
                                   double threshold = 0.0);

struct ProductReport {
  std::vector<double> values;      // theta_n
  std::vector<double> log_values;  // log theta_n (stable even when theta underflows)
  double infimum;
  std::size_t argmin;
};

// theta_n = prod_{k != n} pseudo_hyperbolic(lambda_n, lambda_k).
// Accumulated in log space.
ProductReport separation_products(const ComplexSequence&, const HalfPlane&);
double separation_product_at(const ComplexSequence&, std::size_t index, const HalfPlane&);

// sum of boundary_distance(lambda) / (1 + |lambda|^2) over the nodes.
// Every node must lie strictly inside the half-plane.
double blaschke_condition_sum(const ComplexSequence&, const HalfPlane&);

struct DensityPoint {
  double radius;
  std::size_t max_count;  // most nodes whose real parts fit a closed window of this width
  double ratio;           // max_count / radius
};

struct DensityReport {
  std::vector<DensityPoint> points;
  double strip_bound;
};

// Window counts of real parts at each radius. Requires a declared strip bound
// (the count/width reading of density is only meaningful for strip sequences).
DensityReport upper_uniform_density(const ComplexSequence&, const std::vector<double>& radii);

// Atom at each node, mass = boundary distance. Nodes must lie strictly inside.
DiscreteMeasure boundary_distance_measure(const ComplexSequence&, const HalfPlane&);

struct CarlesonBox {
  double x0;     // left edge on the boundary line
  double side;   // square side
  double mass;
  double ratio;  // mass / side
};

struct CarlesonMeasureReport {
  double constant;  // best ratio over the dyadic sweep
  CarlesonBox best;
  std::size_t scales_scanned;
};

// Supremum over boundary squares of mass/side, estimated over a dyadic sweep:
// sides 2^k anchored at absolute powers of two, left edges at atom real parts
// and at (real part - side). A square [x0, x0+h] x (boundary, boundary+h]
// collects atoms with boundary distance in (0, h]; counting the closed upper
// edge is the limit of slightly larger open squares, so every scanned ratio is
// a true lower bound for the supremum. The scanned family is within a factor
// 2 of the supremum: an optimal square of side h fits (in mass) inside a
// scanned square of side 2^ceil(log2 h) < 2h anchored at its leftmost atom.
// Anchoring to absolute scales makes the estimate monotone under atom removal
// and exactly linear under mass scaling. Atoms must lie strictly inside.
CarlesonMeasureReport carleson_measure_constant(const DiscreteMeasure&, const HalfPlane&);

}  // namespace pwinterp
