#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include <pwinterp/errors.hpp>
#include <pwinterp/hardy_interpolation.hpp>
#include <pwinterp/sequence.hpp>
#include <pwinterp/sequence_analysis.hpp>

using namespace pwinterp;

TEST_CASE("node generators produce the documented families") {
  const auto ints = integer_nodes(3);
  REQUIRE(ints.size() == 7);
  CHECK(ints[0] == Complex(-3.0, 0.0));
  CHECK(ints[6] == Complex(3.0, 0.0));
  REQUIRE(ints.strip_bound().has_value());
  CHECK(*ints.strip_bound() == 0.0);

  // delta = 1/(2 max(p, p/(p-1))): 1/4 at p = 2, 1/8 at p = 4.
  const auto p2 = perturbed_integer_nodes(2.0, 2);
  REQUIRE(p2.size() == 5);
  CHECK(p2[0] == Complex(-2.25, 0.0));
  CHECK(p2[1] == Complex(-1.25, 0.0));
  CHECK(p2[2] == Complex(0.0, 0.0));
  CHECK(p2[4] == Complex(2.25, 0.0));
  const auto p4 = perturbed_integer_nodes(4.0, 1);
  CHECK(p4[2] == Complex(1.125, 0.0));

  const auto close = perturbed_integer_nodes_with_close_pair(2.0, 2, 1e-3);
  CHECK(close.size() == 7);
  double min_gap = 1e300;
  for (std::size_t i = 0; i < close.size(); ++i)
    for (std::size_t j = i + 1; j < close.size(); ++j)
      min_gap = std::min(min_gap, std::abs(close[i] - close[j]));
  CHECK(min_gap == doctest::Approx(1e-3).epsilon(1e-12));

  const auto shifted = shifted_integer_nodes(0.3, 2);
  CHECK(shifted[0] == Complex(-1.7, 0.0));
  CHECK(shifted[4] == Complex(2.3, 0.0));

  const auto ladder = geometric_ladder_nodes(2.0, 4);
  REQUIRE(ladder.size() == 4);
  CHECK(ladder[3] == Complex(0.0, 8.0));

  const auto tagged = generate_nodes("integers:N=5");
  CHECK(tagged.size() == 11);
  REQUIRE(tagged.tag().has_value());
  CHECK(tagged.tag()->name == "integers");

  const auto line = horizontal_line_nodes(1.0, -2, 2);
  REQUIRE(line.size() == 5);
  CHECK(line[0] == Complex(-2.0, 1.0));
  REQUIRE(line.strip_bound().has_value());
  CHECK(*line.strip_bound() == 1.0);
}

TEST_CASE("ComplexSequence rejects duplicates and off-strip declarations") {
  CHECK_THROWS_AS(ComplexSequence({Complex(1.0, 0.0), Complex(1.0, 0.0)}, std::nullopt),
                  InvalidArgument);
  CHECK_THROWS_AS(ComplexSequence({Complex(0.0, 3.0)}, 1.0), InvalidArgument);
  const auto seq = ComplexSequence({Complex(0.0, 0.5), Complex(1.0, -0.5)}, 0.5);
  CHECK(seq.size() == 2);
  const auto sub = seq.without_index(0);
  CHECK(sub.size() == 1);
  CHECK(sub[0] == Complex(1.0, -0.5));
  CHECK(sub.strip_bound() == seq.strip_bound());
}

TEST_CASE("pseudo_hyperbolic closed forms and preconditions") {
  const HalfPlane up{};
  CHECK(pseudo_hyperbolic(Complex(0.0, 1.0), Complex(0.0, 2.0), up) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // Symmetric in its arguments.
  const Complex a(0.7, 0.4), b(-1.2, 2.5);
  CHECK(pseudo_hyperbolic(a, b, up) == pseudo_hyperbolic(b, a, up));
  // Invariant under horizontal translation.
  CHECK(pseudo_hyperbolic(a + 5.0, b + 5.0, up) ==
        doctest::Approx(pseudo_hyperbolic(a, b, up)).epsilon(1e-15));
  // Same value seen from the lower half-plane after reflection.
  const HalfPlane down{0.0, Side::lower};
  CHECK(pseudo_hyperbolic(std::conj(a), std::conj(b), down) ==
        doctest::Approx(pseudo_hyperbolic(a, b, up)).epsilon(1e-15));
  // Offset boundary.
  const HalfPlane shifted{1.0, Side::upper};
  CHECK(pseudo_hyperbolic(Complex(0.0, 2.0), Complex(0.0, 3.0), shifted) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  CHECK_THROWS_AS(pseudo_hyperbolic(Complex(0.0, 0.0), Complex(0.0, 1.0), up), InvalidArgument);
  CHECK_THROWS_AS(pseudo_hyperbolic(Complex(0.0, 1.0), Complex(0.0, -1.0), up), InvalidArgument);
}

TEST_CASE("separation_report finds the extremal pair on a shifted line") {
  const HalfPlane hp{};
  const auto seq = horizontal_line_nodes(1.0, -10, 10);
  const auto rep = separation_report(seq, hp, 0.4);
  // Adjacent nodes: distance 1, denominator sqrt(1 + 4).
  CHECK(rep.min_pseudo_hyperbolic == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
  CHECK(rep.min_euclidean == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(int(rep.argmin_i) - int(rep.argmin_j)) == 1);
  CHECK(rep.separated);
  CHECK_FALSE(separation_report(seq, hp, 0.5).separated);
}

TEST_CASE("separation products match the closed-form center value") {
  const HalfPlane hp{};
  const auto seq = horizontal_line_nodes(1.0, -50, 50);
  // theta at the center node: prod_{k=1..50} k^2 / (k^2 + 4).
  const double at = separation_product_at(seq, 50, hp);
  CHECK(at == doctest::Approx(0.025400842687198757).epsilon(1e-12));

  const auto prods = separation_products(seq, hp);
  REQUIRE(prods.values.size() == seq.size());
  CHECK(prods.values[50] == doctest::Approx(at).epsilon(1e-13));
  CHECK(std::exp(prods.log_values[50]) == doctest::Approx(at).epsilon(1e-12));
  // End nodes see fewer close neighbours, so the center is the infimum here.
  CHECK(prods.argmin == 50);
  CHECK(prods.infimum == doctest::Approx(at).epsilon(1e-13));
}

TEST_CASE("blaschke_condition_sum matches the explicit series") {
  const HalfPlane hp{};
  const auto seq = horizontal_line_nodes(1.0, 1, 10000);
  // sum 1/(n^2 + 2) over n = 1..10000.
  CHECK(blaschke_condition_sum(seq, hp) ==
        doctest::Approx(0.86092810557422782).epsilon(1e-12));
  CHECK_THROWS_AS(blaschke_condition_sum(integer_nodes(3), hp), InvalidArgument);
}

TEST_CASE("upper_uniform_density counts window occupancy") {
  const auto ints = integer_nodes(100);
  const auto rep = upper_uniform_density(ints, {10.0, 20.0});
  REQUIRE(rep.points.size() == 2);
  CHECK(rep.points[0].radius == 10.0);
  CHECK(rep.points[0].max_count == 11);  // closed window of width 10
  CHECK(rep.points[0].ratio == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(rep.points[1].max_count == 21);
  CHECK(rep.strip_bound == 0.0);

  const auto perturbed = perturbed_integer_nodes(2.0, 500);
  const auto prep = upper_uniform_density(perturbed, {100.0});
  CHECK(prep.points[0].ratio == doctest::Approx(1.01).epsilon(1e-15));

  // No declared strip bound: the count/width reading is undefined.
  const ComplexSequence loose({Complex(0.0, 1.0), Complex(1.0, 2.0)}, std::nullopt);
  CHECK_THROWS_AS(upper_uniform_density(loose, {10.0}), InvalidArgument);
}

TEST_CASE("boundary_distance_measure and the box constant") {
  const HalfPlane hp{};
  const auto seq = ComplexSequence({Complex(0.0, 1.0), Complex(2.0, 0.5)}, std::nullopt);
  const auto mu = boundary_distance_measure(seq, hp);
  REQUIRE(mu.masses.size() == 2);
  CHECK(mu.masses[0] == 1.0);
  CHECK(mu.masses[1] == 0.5);
  CHECK(mu.total_mass() == 1.5);
  CHECK_THROWS_AS(boundary_distance_measure(integer_nodes(2), hp), InvalidArgument);

  // Single atom: the optimal square has side equal to the atom height.
  const auto atom = make_measure({Complex(0.0, 1.0)}, {5.0});
  const auto rep = carleson_measure_constant(atom, hp);
  CHECK(rep.constant == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(rep.best.side == 1.0);
  CHECK(rep.best.mass == 5.0);
  CHECK(rep.scales_scanned >= 1);

  // Exactly linear in the masses.
  const auto scaled = make_measure({Complex(0.0, 1.0)}, {15.0});
  CHECK(carleson_measure_constant(scaled, hp).constant == doctest::Approx(3.0 * rep.constant));

  CHECK_THROWS_AS(make_measure({Complex(0.0, 1.0)}, {0.0}), InvalidArgument);
  CHECK_THROWS_AS(carleson_measure_constant(make_measure({Complex(0.0, -1.0)}, {1.0}), hp),
                  InvalidArgument);
}

TEST_CASE("interpolation_test_measure closed form and homogeneity") {
  const HalfPlane hp{};
  // Single node: empty separation product, mass = (height / weight)^q.
  const auto single = make_weighted_nodes(ComplexSequence({Complex(0.0, 2.0)}, std::nullopt),
                                          {0.5});
  const auto nu = interpolation_test_measure(single, hp, 2.0);
  REQUIRE(nu.masses.size() == 1);
  CHECK(nu.masses[0] == doctest::Approx(16.0).epsilon(1e-13));
  CHECK(nu.atoms[0] == Complex(0.0, 2.0));

  // nu_{c w} = c^{-q} nu, exactly, any q.
  std::vector<Complex> nodes{{1.0, 1.0}, {2.5, 0.7}, {4.0, 2.0}};
  std::vector<double> w{1.0, 2.0, 0.5}, cw{2.0, 4.0, 1.0};
  const auto nu1 =
      interpolation_test_measure(make_weighted_nodes(ComplexSequence(nodes, std::nullopt), w), hp, 3.0);
  const auto nu2 =
      interpolation_test_measure(make_weighted_nodes(ComplexSequence(nodes, std::nullopt), cw), hp, 3.0);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(nu2.masses[i] == doctest::Approx(nu1.masses[i] / 8.0).epsilon(1e-13));

  CHECK_THROWS_AS(interpolation_test_measure(single, hp, 0.0), ParameterRange);
  CHECK_THROWS_AS(make_weighted_nodes(ComplexSequence(nodes, std::nullopt), {1.0}),
                  InvalidArgument);

  const auto cond = measure_condition_check(single, hp, 2.0, 100.0);
  CHECK(cond.constant > 0.0);
  CHECK(cond.threshold == 100.0);
  CHECK(cond.satisfied == (cond.constant <= 100.0));
}

TEST_CASE("bandwidth_weight_transfer applies the boundary factor per side") {
  const std::vector<Complex> nodes{{0.0, 1.0}, {3.0, 0.0}, {1.0, 2.0}};
  const auto wn = make_weighted_nodes(ComplexSequence(nodes, std::nullopt), {1.0, 1.0, 0.5});

  const auto up = bandwidth_weight_transfer(wn, M_PI, HalfPlane{});
  REQUIRE(up.kept == std::vector<std::size_t>{0, 2});
  REQUIRE(up.excluded == std::vector<std::size_t>{1});
  CHECK(up.transferred.weights[0] == doctest::Approx(std::exp(M_PI)).epsilon(1e-14));
  CHECK(up.transferred.weights[1] == doctest::Approx(0.5 * std::exp(2.0 * M_PI)).epsilon(1e-14));
  CHECK(up.tau == M_PI);

  // Lower side: the surviving node is the reflection, same factor magnitude.
  const std::vector<Complex> lnodes{{0.0, -1.0}, {3.0, 0.0}};
  const auto lwn = make_weighted_nodes(ComplexSequence(lnodes, std::nullopt), {1.0, 1.0});
  const auto down = bandwidth_weight_transfer(lwn, M_PI, HalfPlane{0.0, Side::lower});
  REQUIRE(down.kept == std::vector<std::size_t>{0});
  CHECK(down.transferred.weights[0] == doctest::Approx(std::exp(M_PI)).epsilon(1e-14));

  CHECK_THROWS_AS(bandwidth_weight_transfer(wn, -1.0, HalfPlane{}), ParameterRange);
  const auto only_boundary = make_weighted_nodes(ComplexSequence({Complex(0.0, 0.0)}, 0.0), {1.0});
  CHECK_THROWS_AS(bandwidth_weight_transfer(only_boundary, 1.0, HalfPlane{}), InvalidArgument);
}

TEST_CASE("solvability_oracle single-kernel closed form") {
  const HalfPlane hp{};
  const auto wn = make_weighted_nodes(ComplexSequence({Complex(0.0, 1.0)}, std::nullopt), {1.0});
  const auto sol = solvability_oracle(wn, hp);
  // One kernel: minimal norm for unit data is 1/||k|| = sqrt(4 pi Im) = 2 sqrt(pi).
  CHECK(sol.operator_norm == doctest::Approx(3.5449077018110321).epsilon(1e-13));
  CHECK(sol.gram_condition == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_FALSE(sol.regularized);
  CHECK_FALSE(sol.data_min_norm.has_value());

  const std::vector<Complex> data{Complex(1.0, 0.0)};
  const auto with_data = solvability_oracle(wn, hp, data);
  REQUIRE(with_data.data_min_norm.has_value());
  CHECK(*with_data.data_min_norm == doctest::Approx(3.5449077018110321).epsilon(1e-13));

  // The exact path is capped; over the cap is an explicit refusal.
  std::vector<Complex> many;
  std::vector<double> ones;
  for (int n = 0; n < 49; ++n) {
    many.emplace_back(double(n), 1.0);
    ones.push_back(1.0);
  }
  const auto big = make_weighted_nodes(ComplexSequence(many, std::nullopt), ones);
  CHECK_THROWS_AS(solvability_oracle(big, hp), ParameterRange);
  CHECK_NOTHROW(solvability_oracle(big, hp, {}, 49));
}
