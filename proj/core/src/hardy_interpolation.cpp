#include "pwinterp/hardy_interpolation.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace pwinterp {

WeightedNodeSet make_weighted_nodes(ComplexSequence nodes, std::vector<double> weights) {
  if (nodes.size() != weights.size())
    throw InvalidArgument("make_weighted_nodes: node/weight count mismatch");
  for (double w : weights)
    if (!(w > 0.0) || !std::isfinite(w))
      throw InvalidArgument("make_weighted_nodes: weights must be positive and finite");
  return WeightedNodeSet{std::move(nodes), std::move(weights)};
}

DiscreteMeasure interpolation_test_measure(const WeightedNodeSet& set, const HalfPlane& hp,
                                           double q) {
  if (!(q > 0.0)) throw ParameterRange("interpolation_test_measure: q must be positive");
  const ProductReport products = separation_products(set.nodes, hp);
  std::vector<double> masses(set.nodes.size());
  for (std::size_t i = 0; i < masses.size(); ++i) {
    const double d = hp.boundary_distance(set.nodes[i]);
    const double log_mass =
        q * (std::log(d) - std::log(set.weights[i]) - products.log_values[i]);
    if (std::abs(log_mass) > 690.0)
      throw ProductUnderflow(
          "interpolation_test_measure: mass at node " + std::to_string(i) +
              " left the representable range (separation product collapsed)",
          i, log_mass);
    masses[i] = std::exp(log_mass);
  }
  return make_measure(set.nodes.points(), std::move(masses));
}

MeasureCondition measure_condition_check(const WeightedNodeSet& set, const HalfPlane& hp,
                                         double q, double threshold) {
  if (!(threshold > 0.0)) throw ParameterRange("measure_condition_check: threshold must be positive");
  const DiscreteMeasure measure = interpolation_test_measure(set, hp, q);
  const CarlesonMeasureReport report = carleson_measure_constant(measure, hp);
  return MeasureCondition{report.constant, threshold, report.constant <= threshold, report.best};
}

WeightTransfer bandwidth_weight_transfer(const WeightedNodeSet& set, double tau,
                                         const HalfPlane& hp) {
  if (!(tau >= 0.0)) throw ParameterRange("bandwidth_weight_transfer: tau must be >= 0");
  std::vector<std::size_t> kept;
  std::vector<std::size_t> excluded;
  std::vector<Complex> nodes;
  std::vector<double> weights;
  const double sign = hp.side == Side::upper ? 1.0 : -1.0;
  for (std::size_t i = 0; i < set.nodes.size(); ++i) {
    if (!hp.contains(set.nodes[i])) {
      excluded.push_back(i);
      continue;
    }
    const double factor = std::exp(sign * tau * set.nodes[i].imag());
    if (!(factor > 0.0) || !std::isfinite(factor))
      throw ParameterRange("bandwidth_weight_transfer: boundary factor overflows at node " +
                           std::to_string(i));
    kept.push_back(i);
    nodes.push_back(set.nodes[i]);
    weights.push_back(set.weights[i] * factor);
  }
  if (nodes.empty())
    throw InvalidArgument("bandwidth_weight_transfer: no nodes strictly inside the half-plane");
  return WeightTransfer{
      make_weighted_nodes(ComplexSequence(std::move(nodes), set.nodes.strip_bound()),
                          std::move(weights)),
      std::move(kept), std::move(excluded), tau};
}

SolvabilityOracle solvability_oracle(const WeightedNodeSet& set, const HalfPlane& hp,
                                     std::span<const Complex> data, int max_nodes) {
  const std::size_t n = set.nodes.size();
  if (n > std::size_t(max_nodes))
    throw ParameterRange("solvability_oracle: exact path is limited to " +
                         std::to_string(max_nodes) + " nodes");
  if (!data.empty() && data.size() != n)
    throw InvalidArgument("solvability_oracle: data size mismatch");
  for (std::size_t i = 0; i < n; ++i)
    if (!hp.contains(set.nodes[i]))
      throw InvalidArgument("solvability_oracle: nodes must lie strictly inside the half-plane");

  // Gram of the half-plane reproducing kernels. For Im z > a the kernel is
  // k(z, w) = i / (2 pi (z - conj(w) - 2ia)); the lower side flips the sign
  // of the numerator. Diagonal entries are 1 / (4 pi d) either way.
  Eigen::MatrixXcd gram(n, n);
  const double a = hp.offset;
  const double sign = hp.side == Side::upper ? 1.0 : -1.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex denom = set.nodes[j] - std::conj(set.nodes[k]) - Complex(0.0, 2.0 * a);
      gram(j, k) = Complex(0.0, sign) / (2.0 * M_PI * denom);
    }
  }

  SolvabilityOracle oracle{};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
  const Eigen::VectorXd eigenvalues = eig.eigenvalues();
  oracle.regularized = eigenvalues.minCoeff() <= 0.0;
  Eigen::MatrixXcd stabilized = gram;
  if (oracle.regularized) {
    const double ridge = 1e-12 * gram.real().trace();
    stabilized += ridge * Eigen::MatrixXcd::Identity(n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig2(stabilized);
    oracle.gram_condition = eig2.eigenvalues().maxCoeff() / eig2.eigenvalues().minCoeff();
  } else {
    oracle.gram_condition = eigenvalues.maxCoeff() / eigenvalues.minCoeff();
  }

  const Eigen::LLT<Eigen::MatrixXcd> llt(stabilized);
  if (llt.info() != Eigen::Success)
    throw NumericError("solvability_oracle: Gram factorization failed");

  // Worst case over unit weighted data: the top singular value of
  // L^{-1} diag(1/w); min-norm for given data a: |L^{-1} (a ./ w)|.
  Eigen::MatrixXcd winv = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) winv(i, i) = 1.0 / set.weights[i];
  const Eigen::MatrixXcd x = llt.matrixL().solve(winv);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(x);
  oracle.operator_norm = svd.singularValues().maxCoeff();

  if (!data.empty()) {
    Eigen::VectorXcd scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled(i) = data[i] / set.weights[i];
    oracle.data_min_norm = llt.matrixL().solve(scaled).norm();
  }
  return oracle;
}

}  // namespace pwinterp
