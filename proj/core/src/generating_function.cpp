#include "pwinterp/generating_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pwinterp/special.hpp"

namespace pwinterp {

namespace {

// Coefficients are used at |z| <= usable_fraction * cutoff, where the series
// ratio is at most usable_fraction^2: 60 terms push the truncation below
// 0.49^60 ~ 4e-19.
constexpr double kUsableFraction = 0.70;
constexpr int kSeriesTerms = 60;
constexpr int kMaxTables = 13;

}  // namespace

GeneratingFunction GeneratingFunction::from_positive_nodes(std::vector<double> positive_nodes,
                                                           std::optional<double> tail_delta,
                                                           int tail_start) {
  for (std::size_t i = 0; i < positive_nodes.size(); ++i) {
    if (!(positive_nodes[i] > 0.0))
      throw InvalidArgument("GeneratingFunction: positive nodes must be positive");
    if (i > 0 && !(positive_nodes[i] > positive_nodes[i - 1]))
      throw InvalidArgument("GeneratingFunction: positive nodes must be strictly increasing");
  }
  GeneratingFunction s;
  s.positive_ = std::move(positive_nodes);
  s.tail_delta_ = tail_delta;
  if (tail_delta) {
    if (!(*tail_delta >= 0.0) || !(*tail_delta < 1.0))
      throw ParameterRange("GeneratingFunction: tail delta must be in [0, 1)");
    if (tail_start < 1) throw ParameterRange("GeneratingFunction: tail start must be >= 1");
    s.tail_start_ = tail_start;
    int cutoff = tail_start;
    for (int level = 0; level < kMaxTables; ++level) {
      TailTable table;
      table.cutoff = cutoff + *tail_delta;
      table.explicit_until = cutoff;
      table.coeff.resize(kSeriesTerms);
      // Scaled coefficients cutoff^{2j} zeta(2j, cutoff)/j stay O(cutoff);
      // the raw zeta values would underflow against z^{2j} overflowing.
      for (int j = 1; j <= kSeriesTerms; ++j)
        table.coeff[j - 1] = hurwitz_zeta_even_scaled(2 * j, table.cutoff) / j;
      s.tables_.push_back(std::move(table));
      if (cutoff > (1 << 22)) break;
      cutoff *= 2;
    }
  }
  return s;
}

GeneratingFunction GeneratingFunction::from_sequence(const ComplexSequence& seq) {
  // Validate the symmetric-real shape: a zero node plus matched +- pairs.
  std::vector<double> values;
  bool has_zero = false;
  for (const Complex& z : seq.points()) {
    if (z.imag() != 0.0)
      throw InvalidArgument("GeneratingFunction: nodes must be real");
    if (z.real() == 0.0) {
      has_zero = true;
    } else {
      values.push_back(z.real());
    }
  }
  if (!has_zero) throw InvalidArgument("GeneratingFunction: node at 0 is required");
  std::sort(values.begin(), values.end());
  std::vector<double> positive;
  // values ascending: negatives reversed must match positives.
  const std::size_t m = values.size();
  if (m % 2 != 0) throw InvalidArgument("GeneratingFunction: nodes must come in +- pairs");
  for (std::size_t i = 0; i < m / 2; ++i) {
    const double neg = values[m / 2 - 1 - i];
    const double pos = values[m / 2 + i];
    if (!(pos > 0.0) || std::abs(pos + neg) > 1e-12 * std::max(1.0, pos))
      throw InvalidArgument("GeneratingFunction: nodes must be symmetric about 0");
    positive.push_back(pos);
  }

  std::optional<double> delta;
  int tail_start = 0;
  if (seq.tag()) {
    const GeneratorTag& tag = *seq.tag();
    if (tag.name == "integers") {
      delta = 0.0;
      tail_start = int(std::llround(*tag.param("N"))) + 1;
    } else if (tag.name == "perturbed-integers" || tag.name == "close-pair") {
      delta = *tag.param("delta");
      tail_start = int(std::llround(*tag.param("N"))) + 1;
    }
  }
  return from_positive_nodes(std::move(positive), delta, tail_start);
}

Complex GeneratingFunction::log_tail(Complex z2, double abs_z) const {
  // Smallest table whose series radius covers |z|; model factors below its
  // cutoff are folded in explicitly.
  const TailTable* chosen = nullptr;
  for (const TailTable& table : tables_) {
    if (abs_z <= kUsableFraction * table.cutoff) {
      chosen = &table;
      break;
    }
  }
  if (!chosen)
    throw ParameterRange("GeneratingFunction: evaluation radius exceeds the precomputed tables");
  Complex log_factor = 0.0;
  const double delta = *tail_delta_;
  for (int n = tail_start_; n < chosen->explicit_until; ++n) {
    const double r = n + delta;
    const Complex factor = 1.0 - z2 / (r * r);
    if (factor == Complex(0.0)) return Complex(-std::numeric_limits<double>::infinity(), 0.0);
    log_factor += std::log(factor);
  }
  // -sum_j coeff_j w^{2j} with w = z/cutoff, |w| <= usable fraction.
  const Complex ratio = z2 / (chosen->cutoff * chosen->cutoff);
  Complex series = 0.0;
  Complex power = ratio;
  for (int j = 1; j <= kSeriesTerms; ++j) {
    series -= chosen->coeff[j - 1] * power;
    power *= ratio;
  }
  return log_factor + series;
}

Complex GeneratingFunction::evaluate(Complex z) const {
  if (z == Complex(0.0)) return 0.0;
  const double abs_z = std::abs(z);
  const Complex z2 = z * z;
  Complex log_product = std::log(z);
  for (double r : positive_) {
    // (r - z)(r + z)/r^2 equals 1 - z^2/r^2 with exact cancellation near the
    // zeros, where the direct form loses all relative accuracy.
    const Complex factor = ((r - z) * (r + z)) / (r * r);
    if (factor == Complex(0.0)) return 0.0;
    log_product += std::log(factor);
  }
  if (tail_delta_) {
    const Complex tail = log_tail(z2, abs_z);
    if (tail.real() == -std::numeric_limits<double>::infinity()) return 0.0;
    log_product += tail;
  }
  return std::exp(log_product);
}

double GeneratingFunction::derivative_at(std::size_t index) const {
  const double x = node(index);
  const double h = 1e-6;
  const Complex left = evaluate(Complex(x - h, 0.0));
  const Complex right = evaluate(Complex(x + h, 0.0));
  return (right.real() - left.real()) / (2.0 * h);
}

double GeneratingFunction::node(std::size_t index) const {
  const std::size_t n = positive_.size();
  if (index >= size()) throw InvalidArgument("GeneratingFunction::node: index out of range");
  if (index < n) return -positive_[n - 1 - index];
  if (index == n) return 0.0;
  return positive_[index - n - 1];
}

std::vector<double> GeneratingFunction::nodes() const {
  std::vector<double> all(size());
  for (std::size_t i = 0; i < size(); ++i) all[i] = node(i);
  return all;
}

double GeneratingFunction::max_radius() const {
  if (!tail_delta_) return std::numeric_limits<double>::infinity();
  return kUsableFraction * tables_.back().cutoff;
}

}  // namespace pwinterp
