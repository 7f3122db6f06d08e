#include "pwinterp/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pwinterp/io.hpp"

namespace pwinterp {

namespace {

constexpr double kDistinctTol = 1e-12;

void check_distinct(const std::vector<Complex>& pts) {
  // Sort indices by real part; points closer than the tolerance must be
  // neighbors in that order up to a window of nearly-equal real parts.
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pts[a].real() < pts[b].real();
  });
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (pts[order[j]].real() - pts[order[i]].real() > kDistinctTol) break;
      if (std::abs(pts[order[i]] - pts[order[j]]) <= kDistinctTol) {
        std::ostringstream os;
        os << "ComplexSequence: nodes " << order[i] << " and " << order[j]
           << " coincide within 1e-12";
        throw InvalidArgument(os.str());
      }
    }
  }
}

}  // namespace

HalfPlane parse_half_plane(const std::string& side, double offset) {
  if (side == "upper") return HalfPlane{offset, Side::upper};
  if (side == "lower") return HalfPlane{offset, Side::lower};
  throw InvalidArgument("half-plane side must be \"upper\" or \"lower\", got \"" + side + "\"");
}

std::optional<double> GeneratorTag::param(const std::string& key) const {
  for (const auto& [k, v] : params)
    if (k == key) return v;
  return std::nullopt;
}

std::string GeneratorTag::to_string() const {
  std::ostringstream os;
  os << name;
  for (std::size_t i = 0; i < params.size(); ++i)
    os << (i == 0 ? ':' : ',') << params[i].first << '=' << format_float(params[i].second);
  return os.str();
}

GeneratorTag parse_generator_tag(const std::string& text) {
  GeneratorTag tag;
  const auto colon = text.find(':');
  tag.name = text.substr(0, colon);
  if (tag.name.empty()) throw InvalidArgument("generator tag: empty name in \"" + text + "\"");
  if (colon == std::string::npos) return tag;
  std::string rest = text.substr(colon + 1);
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw InvalidArgument("generator tag: expected key=value, got \"" + item + "\"");
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item.substr(eq + 1), &used);
    } catch (const std::exception&) {
      throw InvalidArgument("generator tag: bad numeric value in \"" + item + "\"");
    }
    if (used != item.size() - eq - 1)
      throw InvalidArgument("generator tag: trailing junk in \"" + item + "\"");
    tag.params.emplace_back(item.substr(0, eq), value);
  }
  return tag;
}

ComplexSequence::ComplexSequence(std::vector<Complex> points, std::optional<double> strip_bound,
                                 std::optional<GeneratorTag> tag)
    : points_(std::move(points)), strip_bound_(strip_bound), tag_(std::move(tag)) {
  if (points_.empty()) throw InvalidArgument("ComplexSequence: empty node set");
  for (const Complex& z : points_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw InvalidArgument("ComplexSequence: non-finite node");
  if (strip_bound_) {
    if (!(*strip_bound_ >= 0)) throw InvalidArgument("ComplexSequence: negative strip bound");
    for (const Complex& z : points_)
      if (std::abs(z.imag()) > *strip_bound_ + 1e-12)
        throw InvalidArgument("ComplexSequence: node outside declared strip");
  }
  check_distinct(points_);
}

ComplexSequence ComplexSequence::restricted_to(const HalfPlane& hp) const {
  std::vector<Complex> kept;
  for (const Complex& z : points_)
    if (hp.contains(z)) kept.push_back(z);
  if (kept.empty()) throw InvalidArgument("restricted_to: no nodes inside the half-plane");
  return ComplexSequence(std::move(kept), strip_bound_, std::nullopt);
}

ComplexSequence ComplexSequence::without_index(std::size_t i) const {
  if (i >= points_.size()) throw InvalidArgument("without_index: index out of range");
  if (points_.size() == 1) throw InvalidArgument("without_index: would leave an empty set");
  std::vector<Complex> kept;
  kept.reserve(points_.size() - 1);
  for (std::size_t j = 0; j < points_.size(); ++j)
    if (j != i) kept.push_back(points_[j]);
  return ComplexSequence(std::move(kept), strip_bound_, std::nullopt);
}

double DiscreteMeasure::total_mass() const {
  double sum = 0.0;
  for (double m : masses) sum += m;
  return sum;
}

DiscreteMeasure make_measure(std::vector<Complex> atoms, std::vector<double> masses) {
  if (atoms.size() != masses.size()) throw InvalidArgument("make_measure: size mismatch");
  if (atoms.empty()) throw InvalidArgument("make_measure: empty measure");
  for (double m : masses)
    if (!(m > 0.0) || !std::isfinite(m)) throw InvalidArgument("make_measure: masses must be positive");
  check_distinct(atoms);
  return DiscreteMeasure{std::move(atoms), std::move(masses)};
}

ComplexSequence integer_nodes(int n_max) {
  if (n_max < 1) throw ParameterRange("integer_nodes: n_max must be >= 1");
  std::vector<Complex> pts;
  pts.reserve(2 * n_max + 1);
  for (int n = -n_max; n <= n_max; ++n) pts.emplace_back(n, 0.0);
  GeneratorTag tag{"integers", {{"N", double(n_max)}}};
  return ComplexSequence(std::move(pts), 0.0, tag);
}

namespace {

double perturbation_for(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw ParameterRange("perturbed_integer_nodes: p must be > 1");
  const double q = p / (p - 1.0);
  return 1.0 / (2.0 * std::max(p, q));
}

}  // namespace

ComplexSequence perturbed_integer_nodes(double p, int n_max) {
  if (n_max < 1) throw ParameterRange("perturbed_integer_nodes: n_max must be >= 1");
  const double delta = perturbation_for(p);
  std::vector<Complex> pts;
  pts.reserve(2 * n_max + 1);
  for (int n = -n_max; n <= n_max; ++n) {
    const double x = n == 0 ? 0.0 : (n > 0 ? n + delta : n - delta);
    pts.emplace_back(x, 0.0);
  }
  GeneratorTag tag{"perturbed-integers", {{"p", p}, {"N", double(n_max)}, {"delta", delta}}};
  return ComplexSequence(std::move(pts), 0.0, tag);
}

ComplexSequence perturbed_integer_nodes_with_close_pair(double p, int n_max, double gap) {
  if (n_max < 1) throw ParameterRange("close-pair nodes: n_max must be >= 1");
  const double delta = perturbation_for(p);
  if (!(gap > 0.0) || gap >= 0.5) throw ParameterRange("close-pair nodes: gap must be in (0, 0.5)");
  std::vector<Complex> pts;
  pts.reserve(2 * n_max + 3);
  for (int n = -n_max; n <= n_max; ++n) {
    if (n == 0) {
      pts.emplace_back(-gap, 0.0);
      pts.emplace_back(0.0, 0.0);
      pts.emplace_back(gap, 0.0);
      continue;
    }
    pts.emplace_back(n > 0 ? n + delta : n - delta, 0.0);
  }
  GeneratorTag tag{"close-pair",
                   {{"p", p}, {"N", double(n_max)}, {"delta", delta}, {"gap", gap}}};
  return ComplexSequence(std::move(pts), 0.0, tag);
}

ComplexSequence shifted_integer_nodes(double shift, int n_max) {
  if (n_max < 1) throw ParameterRange("shifted_integer_nodes: n_max must be >= 1");
  std::vector<Complex> pts;
  pts.reserve(2 * n_max + 1);
  for (int n = -n_max; n <= n_max; ++n) pts.emplace_back(n + shift, 0.0);
  GeneratorTag tag{"shifted-integers", {{"shift", shift}, {"N", double(n_max)}}};
  return ComplexSequence(std::move(pts), 0.0, tag);
}

ComplexSequence geometric_ladder_nodes(double base, int count) {
  if (!(base > 1.0)) throw ParameterRange("geometric_ladder_nodes: base must be > 1");
  if (count < 1) throw ParameterRange("geometric_ladder_nodes: count must be >= 1");
  std::vector<Complex> pts;
  pts.reserve(count);
  double h = 1.0;
  for (int k = 0; k < count; ++k) {
    pts.emplace_back(0.0, h);
    h *= base;
    if (!std::isfinite(h)) throw ParameterRange("geometric_ladder_nodes: ladder overflows");
  }
  GeneratorTag tag{"geometric-ladder", {{"base", base}, {"count", double(count)}}};
  return ComplexSequence(std::move(pts), std::nullopt, tag);
}

ComplexSequence horizontal_line_nodes(double height, std::int64_t from, std::int64_t to) {
  if (from > to) throw ParameterRange("horizontal_line_nodes: need from <= to");
  if (to - from > 2000000) throw ParameterRange("horizontal_line_nodes: more than 2e6 nodes");
  std::vector<Complex> pts;
  pts.reserve(std::size_t(to - from + 1));
  for (std::int64_t n = from; n <= to; ++n) pts.emplace_back(double(n), height);
  GeneratorTag tag{"line", {{"height", height}, {"from", double(from)}, {"to", double(to)}}};
  return ComplexSequence(std::move(pts), std::abs(height), tag);
}

namespace {

double require_param(const GeneratorTag& tag, const std::string& key) {
  auto v = tag.param(key);
  if (!v) throw InvalidArgument("generator \"" + tag.name + "\": missing parameter " + key);
  return *v;
}

int int_param(const GeneratorTag& tag, const std::string& key) {
  const double v = require_param(tag, key);
  const int i = static_cast<int>(std::llround(v));
  if (std::abs(v - i) > 1e-9) throw InvalidArgument("generator \"" + tag.name + "\": " + key + " must be an integer");
  return i;
}

}  // namespace

ComplexSequence generate_nodes(const GeneratorTag& tag) {
  if (tag.name == "integers") return integer_nodes(int_param(tag, "N"));
  if (tag.name == "perturbed-integers")
    return perturbed_integer_nodes(require_param(tag, "p"), int_param(tag, "N"));
  if (tag.name == "close-pair")
    return perturbed_integer_nodes_with_close_pair(require_param(tag, "p"), int_param(tag, "N"),
                                                   require_param(tag, "gap"));
  if (tag.name == "shifted-integers")
    return shifted_integer_nodes(require_param(tag, "shift"), int_param(tag, "N"));
  if (tag.name == "geometric-ladder")
    return geometric_ladder_nodes(require_param(tag, "base"), int_param(tag, "count"));
  if (tag.name == "line")
    return horizontal_line_nodes(require_param(tag, "height"), int_param(tag, "from"),
                                 int_param(tag, "to"));
  throw InvalidArgument("unknown generator \"" + tag.name + "\"");
}

ComplexSequence generate_nodes(const std::string& tag_text) {
  return generate_nodes(parse_generator_tag(tag_text));
}

}  // namespace pwinterp
