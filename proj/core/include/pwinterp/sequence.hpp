#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pwinterp/errors.hpp"

namespace pwinterp {

enum class Side { upper, lower };

// Open half-plane {Im z > offset} or {Im z < offset}.
struct HalfPlane {
  double offset = 0.0;
  Side side = Side::upper;

  // Distance to the boundary line, signed so that the inside is positive.
  double boundary_distance(Complex z) const {
    return side == Side::upper ? z.imag() - offset : offset - z.imag();
  }
  bool contains(Complex z) const { return boundary_distance(z) > 0.0; }
};

// side is "upper" or "lower".
HalfPlane parse_half_plane(const std::string& side, double offset);

// Records which generator produced a node set, with its parameters.
// Round-trips through parse_generator_tag ("name:key=value,key=value").
struct GeneratorTag {
  std::string name;
  std::vector<std::pair<std::string, double>> params;

  std::optional<double> param(const std::string& key) const;
  std::string to_string() const;
};

GeneratorTag parse_generator_tag(const std::string& text);

// Finite list of distinct complex nodes. Distinctness is enforced at
// construction (tolerance 1e-12). An optional strip bound (|Im| <= bound for
// every node, checked) and an optional generator tag travel with the points.
class ComplexSequence {
 public:
  explicit ComplexSequence(std::vector<Complex> points,
                           std::optional<double> strip_bound = std::nullopt,
                           std::optional<GeneratorTag> tag = std::nullopt);

  const std::vector<Complex>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  Complex operator[](std::size_t i) const { return points_[i]; }
  std::optional<double> strip_bound() const { return strip_bound_; }
  const std::optional<GeneratorTag>& tag() const { return tag_; }

  // Subsets keep the strip bound but drop the tag: the generator's structure
  // (symmetry, tail model) no longer describes the points.
  ComplexSequence restricted_to(const HalfPlane&) const;
  ComplexSequence without_index(std::size_t i) const;

 private:
  std::vector<Complex> points_;
  std::optional<double> strip_bound_;
  std::optional<GeneratorTag> tag_;
};

// Atoms at distinct positions with strictly positive masses.
struct DiscreteMeasure {
  std::vector<Complex> atoms;
  std::vector<double> masses;
  double total_mass() const;
};

DiscreteMeasure make_measure(std::vector<Complex> atoms, std::vector<double> masses);

// Node generators. n_max is the one-sided count for symmetric families.
ComplexSequence integer_nodes(int n_max);
// 0 and +-(n + delta) for n = 1..n_max, delta = 1/(2 max(p, p/(p-1))).
ComplexSequence perturbed_integer_nodes(double p, int n_max);
// Same as perturbed_integer_nodes plus the extra pair +-gap next to 0.
ComplexSequence perturbed_integer_nodes_with_close_pair(double p, int n_max, double gap);
// n + shift for n = -n_max..n_max.
ComplexSequence shifted_integer_nodes(double shift, int n_max);
// i * base^k for k = 0..count-1.
ComplexSequence geometric_ladder_nodes(double base, int count);
// n + i*height for n = from..to.
ComplexSequence horizontal_line_nodes(double height, std::int64_t from, std::int64_t to);

// Builds a node set from a tag like "perturbed-integers:p=2,N=50".
// Supported names: integers, perturbed-integers, close-pair, shifted-integers,
// geometric-ladder, line.
ComplexSequence generate_nodes(const GeneratorTag& tag);
ComplexSequence generate_nodes(const std::string& tag_text);

}  // namespace pwinterp
