#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <pwinterp/config.hpp>
#include <pwinterp/errors.hpp>
#include <pwinterp/io.hpp>
#include <pwinterp/quadprec.hpp>
#include <pwinterp/quadrature.hpp>
#include <pwinterp/special.hpp>

using namespace pwinterp;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "pwinterp_foundation_tests";
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("gauss_legendre integrates polynomials exactly at matching degree") {
  const auto& rule = gauss_legendre(8);  // exact through degree 15
  double sum = 0.0, x14 = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i];
    x14 += rule.weights[i] * std::pow(rule.nodes[i], 14);
  }
  CHECK(sum == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(x14 == doctest::Approx(2.0 / 15.0).epsilon(1e-14));

  const auto& fine = gauss_legendre(20);
  double c = 0.0;
  for (std::size_t i = 0; i < fine.nodes.size(); ++i)
    c += fine.weights[i] * std::cos(fine.nodes[i]);
  CHECK(c == doctest::Approx(2.0 * std::sin(1.0)).epsilon(1e-15));

  CHECK_THROWS_AS(gauss_legendre(1), ParameterRange);
  CHECK_THROWS_AS(gauss_legendre(65), ParameterRange);
}

TEST_CASE("PanelGrid covers the interval and refines in place") {
  const auto grid = PanelGrid::uniform(-2.0, 3.0, 7, 6);
  CHECK(grid.panel_count() == 7);
  CHECK(grid.size() == 42);
  double w = 0.0;
  for (double wi : grid.weights()) w += wi;
  CHECK(w == doctest::Approx(5.0).epsilon(1e-14));

  const auto fine = grid.refined();
  CHECK(fine.panel_count() == 14);
  CHECK(fine.lower() == grid.lower());
  CHECK(fine.upper() == grid.upper());

  const auto graded = PanelGrid::from_breakpoints({0.0, 0.1, 0.5, 2.5}, 4);
  CHECK(graded.panel_count() == 3);
  const double val = integrate(graded, [](double x) { return x * x; });
  CHECK(val == doctest::Approx(2.5 * 2.5 * 2.5 / 3.0).epsilon(1e-14));
}

TEST_CASE("quad-precision Gauss-Legendre agrees with the double rule") {
  std::vector<qp::Real> nodes, weights;
  qp::gauss_legendre_q(16, nodes, weights);
  const auto& ref = gauss_legendre(16);
  double worst = 0.0;
  qp::Real wsum = qp::from_double(0.0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    worst = std::max(worst, std::abs(qp::to_double(nodes[i]) - ref.nodes[i]));
    wsum = wsum + weights[i];
  }
  CHECK(worst < 1e-15);
  CHECK(std::abs(qp::to_double(wsum) - 2.0) < 1e-30);
}

TEST_CASE("quad-precision LDL* solves a Hermitian positive definite system") {
  // A = [[4, 1-i], [1+i, 3]], solution of A x = b recovered to quad accuracy.
  std::vector<qp::Cx> a{qp::from_std(4.0, 0.0), qp::from_std(1.0, -1.0), qp::from_std(1.0, 1.0),
                        qp::from_std(3.0, 0.0)};
  auto factored = a;
  REQUIRE(qp::ldlt_factor(factored, 2));
  std::vector<qp::Cx> x{qp::from_std(1.0, 2.0), qp::from_std(-0.5, 0.25)};
  const auto b = x;
  qp::ldlt_solve(factored, 2, std::span<qp::Cx>(x));
  // Residual b - A x in double is far below 1e-16.
  qp::Cx r0 = b[0] - (a[0] * x[0] + a[1] * x[1]);
  qp::Cx r1 = b[1] - (a[2] * x[0] + a[3] * x[1]);
  CHECK(qp::to_double(qp::abs(r0)) < 1e-30);
  CHECK(qp::to_double(qp::abs(r1)) < 1e-30);

  // Indefinite matrix is reported, not silently factored.
  std::vector<qp::Cx> indef{qp::from_std(1.0, 0.0), qp::from_std(3.0, 0.0), qp::from_std(3.0, 0.0),
                            qp::from_std(1.0, 0.0)};
  CHECK_FALSE(qp::ldlt_factor(indef, 2));
}

TEST_CASE("quad-precision Hermitian eigenvalues on known matrices") {
  std::vector<qp::Cx> diag{qp::from_std(2.0, 0.0), qp::from_std(0.0, 0.0), qp::from_std(0.0, 0.0),
                           qp::from_std(5.0, 0.0)};
  const auto ev = qp::hermitian_eigenvalues(diag, 2);
  REQUIRE(ev.size() == 2);
  CHECK(ev[0] == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-15));

  // [[2, i], [-i, 2]] has eigenvalues 3 and 1.
  std::vector<qp::Cx> herm{qp::from_std(2.0, 0.0), qp::from_std(0.0, 1.0), qp::from_std(0.0, -1.0),
                           qp::from_std(2.0, 0.0)};
  const auto ev2 = qp::hermitian_eigenvalues(herm, 2);
  CHECK(ev2[0] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(ev2[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("complex_sinc handles the removable singularity and complex input") {
  CHECK(complex_sinc(Complex(0.0, 0.0)) == Complex(1.0, 0.0));
  CHECK(std::abs(complex_sinc(Complex(M_PI, 0.0))) < 1e-15);
  const Complex w(0.3, -0.8);
  const Complex direct = std::sin(w) / w;
  CHECK(std::abs(complex_sinc(w) - direct) < 1e-15);
  // Tiny arguments fall on the series branch without losing digits.
  CHECK(std::abs(complex_sinc(Complex(1e-9, 0.0)) - Complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("hurwitz_zeta_even matches reference values") {
  // zeta(2, 2) = pi^2/6 - 1.
  CHECK(hurwitz_zeta_even(2, 2.0) == doctest::Approx(0.64493406684822644).epsilon(1e-15));
  CHECK(hurwitz_zeta_even(2, 26.25) == doctest::Approx(0.038830073274052943).epsilon(1e-14));
  CHECK(hurwitz_zeta_even(4, 26.25) == doctest::Approx(1.9508319593978198e-5).epsilon(1e-14));
  CHECK(hurwitz_zeta_even(6, 51.25) == doctest::Approx(5.9379846236647526e-10).epsilon(1e-14));
  CHECK_THROWS_AS(hurwitz_zeta_even(3, 2.0), ParameterRange);
  CHECK_THROWS_AS(hurwitz_zeta_even(2, 0.0), ParameterRange);
}

TEST_CASE("hurwitz_zeta_even_scaled survives exponents that underflow the plain form") {
  // a^s zeta(s, a) -> 1 as s grows: the n = 0 term dominates.
  const double scaled = hurwitz_zeta_even_scaled(600, 3.0);
  CHECK(scaled == doctest::Approx(1.0).epsilon(1e-12));
  // Consistency with the plain form where both are representable.
  const double plain = hurwitz_zeta_even(8, 1.5);
  const double via_scaled = hurwitz_zeta_even_scaled(8, 1.5) / std::pow(1.5, 8);
  CHECK(plain == doctest::Approx(via_scaled).epsilon(1e-14));
}

TEST_CASE("bump_profile is the smooth compactly supported profile") {
  CHECK(bump_profile(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(bump_profile(0.63) == bump_profile(-0.63));
  CHECK(bump_profile(1.0) == 0.0);
  CHECK(bump_profile(-1.0) == 0.0);
  CHECK(bump_profile(7.5) == 0.0);
  CHECK(bump_profile(0.999) > 0.0);
}

TEST_CASE("Config parses assignments, comments, and typed accessors") {
  const auto cfg = Config::from_text(
      "# leading comment\n"
      "alpha = 1.5\n"
      "name= nodes.seq   \n"
      "flag=true\n"
      "count = 42\n"
      "alpha = 2.5\n");  // later assignment wins
  CHECK(cfg.get_double("alpha", 0.0) == 2.5);
  CHECK(cfg.get_string("name", "") == "nodes.seq");
  CHECK(cfg.get_bool("flag", false));
  CHECK(cfg.get_int("count", 0) == 42);
  CHECK(cfg.get_int("missing", -7) == -7);
  CHECK_FALSE(cfg.has("missing"));
  CHECK_THROWS_AS(cfg.require_string("missing"), ConfigError);
  CHECK_THROWS_AS(cfg.require_double("name"), ConfigError);
}

TEST_CASE("Config include splices relative files with later assignments overriding") {
  const fs::path dir = temp_dir() / "config_include";
  fs::create_directories(dir / "nested");
  write_file(dir / "base.cfg", "a = 1\nb = base\n");
  write_file(dir / "nested/child.cfg", "b = child\nc = 3\n");
  write_file(dir / "main.cfg",
             "a = 0\n"
             "include base.cfg\n"
             "include nested/child.cfg\n"
             "c = 9\n");
  const auto cfg = Config::from_file(dir / "main.cfg");
  CHECK(cfg.get_int("a", -1) == 1);             // base.cfg overrides the earlier line
  CHECK(cfg.get_string("b", "") == "child");    // child.cfg overrides base.cfg
  CHECK(cfg.get_int("c", -1) == 9);             // trailing line overrides child.cfg

  write_file(dir / "loop_a.cfg", "include loop_b.cfg\n");
  write_file(dir / "loop_b.cfg", "include loop_a.cfg\n");
  CHECK_THROWS_AS(Config::from_file(dir / "loop_a.cfg"), ConfigError);

  CHECK_THROWS_AS(Config::from_text("include nowhere.cfg\n", dir), ConfigError);
  CHECK_THROWS_AS(Config::from_text("just a bare line\n"), ConfigError);
}

TEST_CASE("format_float round-trips doubles through text") {
  for (double v : {1.0, -0.1, 2.3130352854993310, 1e-300, 6.5239826829589127, M_PI}) {
    const std::string s = format_float(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_float(1.0) == "1");
}

TEST_CASE("fnv1a64 matches the published test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("atomic_write_text writes whole files or nothing") {
  const fs::path dir = temp_dir() / "atomic";
  fs::create_directories(dir);
  const fs::path target = dir / "out.txt";
  atomic_write_text(target, "first\n");
  atomic_write_text(target, "second\n");  // overwrite keeps the full new body
  std::ifstream in(target);
  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(body == "second\n");

  const fs::path orphan = dir / "no_such_dir" / "out.txt";
  CHECK_THROWS_AS(atomic_write_text(orphan, "x"), OutputError);
  CHECK_FALSE(fs::exists(orphan));
  // No temp litter either.
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file()) ++files;
  CHECK(files == 1);

  CHECK(file_hash_hex(target) == file_hash_hex(target));
  CHECK(file_hash_hex(target).size() == 16);
}

TEST_CASE("sequence files round-trip nodes, strip bound, and generator tag") {
  const fs::path dir = temp_dir() / "seq";
  fs::create_directories(dir);
  const fs::path path = dir / "nodes.seq";

  // The generator tag carries commas; the round trip must keep it verbatim,
  // while data rows may use commas as separators.
  ComplexSequence seq = generate_nodes(parse_generator_tag("perturbed-integers:p=2,N=4,delta=0.25"));
  write_sequence(path, seq);
  const auto back = read_sequence(path);
  REQUIRE(back.size() == seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) CHECK(back[i] == seq[i]);
  REQUIRE(back.tag().has_value());
  CHECK(back.tag()->to_string() == seq.tag()->to_string());
  REQUIRE(back.strip_bound().has_value());
  CHECK(*back.strip_bound() == *seq.strip_bound());

  write_file(dir / "commas.seq", "1.5,0.25\n-2,1\n");
  const auto commas = read_sequence(dir / "commas.seq");
  REQUIRE(commas.size() == 2);
  CHECK(commas[0] == Complex(1.5, 0.25));
  CHECK(commas[1] == Complex(-2.0, 1.0));

  write_file(dir / "bad.seq", "1.0\n");
  CHECK_THROWS_AS(read_sequence(dir / "bad.seq"), IoError);
  CHECK_THROWS_AS(read_sequence(dir / "missing.seq"), IoError);
}

TEST_CASE("system and signal files round-trip") {
  const fs::path dir = temp_dir() / "sys";
  fs::create_directories(dir);

  const auto sys = make_diagonal_system({Complex(1.0, 0.5), Complex(2.0, -0.25)},
                                        {Complex(1.0, 0.0), Complex(0.5, 0.75)});
  write_system(dir / "m.sys", sys);
  const auto sys2 = read_system(dir / "m.sys");
  REQUIRE(sys2.rates.size() == 2);
  CHECK(sys2.rates[0] == sys.rates[0]);
  CHECK(sys2.rates[1] == sys.rates[1]);
  CHECK(sys2.couplings[0] == sys.couplings[0]);
  CHECK(sys2.couplings[1] == sys.couplings[1]);

  ControlSignal sig;
  sig.horizon = 2.0;
  sig.times = {0.0, 1.0, 2.0};
  sig.values = {Complex(1.0, 0.0), Complex(0.5, -0.5), Complex(0.0, 0.25)};
  write_signal(dir / "u.csv", sig);
  const auto sig2 = read_signal(dir / "u.csv");
  CHECK(sig2.horizon == 2.0);
  REQUIRE(sig2.times.size() == 3);
  CHECK(sig2.values[1] == sig.values[1]);
  CHECK(sig2.form == nullptr);
}

TEST_CASE("value-list readers enforce their row contracts") {
  const fs::path dir = temp_dir() / "vals";
  fs::create_directories(dir);

  write_file(dir / "c.txt", "1 2\n-0.5 0\n");
  const auto cs = read_complex_values(dir / "c.txt");
  REQUIRE(cs.size() == 2);
  CHECK(cs[0] == Complex(1.0, 2.0));

  write_file(dir / "p.txt", "0.5\n2\n");
  const auto ps = read_positive_values(dir / "p.txt");
  REQUIRE(ps.size() == 2);
  CHECK(ps[1] == 2.0);

  write_file(dir / "neg.txt", "0.5\n-1\n");
  CHECK_THROWS_AS(read_positive_values(dir / "neg.txt"), IoError);
  write_file(dir / "multi.txt", "0.5 1\n");
  CHECK_THROWS_AS(read_positive_values(dir / "multi.txt"), IoError);
  write_file(dir / "empty.txt", "");
  CHECK_THROWS_AS(read_positive_values(dir / "empty.txt"), IoError);
}
