#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <pwinterp/biorthogonal.hpp>
#include <pwinterp/errors.hpp>
#include <pwinterp/generating_function.hpp>
#include <pwinterp/hardy_interpolation.hpp>
#include <pwinterp/interpolation.hpp>
#include <pwinterp/io.hpp>
#include <pwinterp/multiplier.hpp>
#include <pwinterp/sequence.hpp>

#include "context.hpp"

namespace pwtool {

using pwinterp::Complex;
using pwinterp::format_float;

namespace {

pwinterp::ComplexSequence generate_family_nodes(RunContext& ctx,
                                                const std::optional<std::string>& kind_flag,
                                                const std::optional<double>& p_flag,
                                                const std::optional<int>& nmax_flag,
                                                const std::optional<double>& gap_flag) {
  const std::string kind = ctx.str(kind_flag, "kind", "perturbed");
  const int n_max = ctx.integer(nmax_flag, "n_max", 25);
  if (kind == "integers") return pwinterp::integer_nodes(n_max);
  const double p = ctx.num(p_flag, "p", 2.0);
  if (kind == "perturbed") return pwinterp::perturbed_integer_nodes(p, n_max);
  if (kind == "close-pair") {
    const double gap = ctx.num(gap_flag, "gap", 1e-3);
    return pwinterp::perturbed_integer_nodes_with_close_pair(p, n_max, gap);
  }
  throw pwinterp::ConfigError("unknown family kind '" + kind +
                              "' (expected perturbed, integers, or close-pair)");
}

std::vector<Complex> random_unit_data(std::uint64_t seed, std::size_t n, double p) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<Complex> data(n);
  double total = 0.0;
  for (auto& v : data) {
    v = Complex(gauss(rng), gauss(rng));
    total += std::pow(std::abs(v), p);
  }
  const double scale = std::pow(total, 1.0 / p);
  for (auto& v : data) v /= scale;
  return data;
}

double spearman_rank(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i) r[idx[i]] = static_cast<double>(i);
    return r;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  double mean = (static_cast<double>(rx.size()) - 1.0) / 2.0;
  double num = 0.0, dx = 0.0, dy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    num += (rx[i] - mean) * (ry[i] - mean);
    dx += (rx[i] - mean) * (rx[i] - mean);
    dy += (ry[i] - mean) * (ry[i] - mean);
  }
  return num / std::sqrt(dx * dy);
}

struct FamilyFlags {
  std::shared_ptr<CommonFlags> common;
  std::optional<std::string> kind;
  std::optional<double> p;
  std::optional<int> n_max;
  std::optional<double> gap;
  std::optional<double> tau;
};

void run_build_family(const FamilyFlags& f) {
  RunContext ctx(*f.common, "build-family");
  const auto seq = generate_family_nodes(ctx, f.kind, f.p, f.n_max, f.gap);
  const double tau = ctx.num(f.tau, "tau", M_PI);
  const double p = seq.tag() && seq.tag()->param("p") ? *seq.tag()->param("p") : 2.0;

  auto gen = pwinterp::GeneratingFunction::from_sequence(seq);
  const auto family = pwinterp::BiorthogonalFamily::from_generating(std::move(gen));
  const auto biorth = pwinterp::validate_biorthogonality(family);
  const auto norms = pwinterp::family_norm_report(family, tau, p);

  pwinterp::write_sequence(ctx.artifact_path("family_nodes.seq"), seq);
  ctx.put("artifact.family_nodes.seq", std::to_string(seq.size()) + " nodes");

  std::vector<std::vector<std::string>> rows;
  for (std::size_t n = 0; n < family.size(); ++n)
    rows.push_back({std::to_string(n), format_float(family.node(n).real()),
                    format_float(family.node(n).imag()), format_float(family.derivative(n)),
                    format_float(norms.norms[n])});
  ctx.csv("family_members.csv", {"index", "re", "im", "derivative", "norm"}, rows);

  ctx.put_int("count", static_cast<long long>(family.size()));
  ctx.put_num("max_off_diagonal", biorth.max_off_diagonal);
  ctx.put_num("max_diagonal_deviation", biorth.max_diagonal_deviation);
  ctx.put_num("sup_norm", norms.sup);
  ctx.put_int("arg_sup", static_cast<long long>(norms.arg_sup));
  ctx.put_num("norm_radius", norms.radius);
  ctx.finish();
}

struct SolveFlags {
  std::shared_ptr<CommonFlags> common;
  std::optional<std::string> nodes;
  std::optional<std::string> data;
  std::optional<std::string> weights;
  std::optional<double> p;
  std::optional<double> tau;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> seed;
  std::optional<double> extent;
  std::optional<double> step;
  bool random_unit = false;
};

void run_solve(const SolveFlags& f) {
  RunContext ctx(*f.common, "solve-interpolation");
  const auto seq = pwinterp::read_sequence(ctx.input(f.nodes, "nodes"));

  pwinterp::InterpolationProblem problem{seq, {}, 2.0, M_PI, 0.5, {}};
  problem.p = ctx.num(f.p, "p", 2.0);
  problem.tau = ctx.num(f.tau, "tau", M_PI);
  problem.eps = ctx.num(f.epsilon, "epsilon", 0.5);
  if (f.random_unit || ctx.config().get_bool("random_unit", false)) {
    const std::uint64_t seed = ctx.seed(f.seed, 1);
    problem.data = random_unit_data(seed, seq.size(), problem.p);
    ctx.put_bool("random_unit", true);
  } else {
    problem.data = pwinterp::read_complex_values(ctx.input(f.data, "data"));
  }
  if (auto weights_path = ctx.input_opt(f.weights, "weights"))
    problem.weights = pwinterp::read_positive_values(*weights_path);

  auto gen = pwinterp::GeneratingFunction::from_sequence(seq);
  const auto family = pwinterp::BiorthogonalFamily::from_generating(std::move(gen));
  auto mult = std::make_shared<const pwinterp::BumpMultiplier>(
      pwinterp::BumpMultiplier::build(problem.eps));

  const auto report = pwinterp::solve_interpolation(problem, family, mult);
  const auto verify = pwinterp::verify_interpolant(report.interpolant, problem,
                                                   report.line_norm.norm);

  std::vector<std::vector<std::string>> rrows;
  for (std::size_t n = 0; n < seq.size(); ++n)
    rrows.push_back({std::to_string(n), format_float(seq[n].real()),
                     format_float(seq[n].imag()), format_float(report.weights_used[n]),
                     format_float(problem.data[n].real()), format_float(problem.data[n].imag()),
                     format_float(report.node_residuals[n])});
  ctx.csv("node_residuals.csv",
          {"index", "re", "im", "weight", "target_re", "target_im", "residual"}, rrows);

  const double extent = ctx.num(f.extent, "extent", 30.0);
  const double step = ctx.num(f.step, "step", 0.05);
  std::vector<double> xs;
  for (double x = -extent; x <= extent + step / 2; x += step) xs.push_back(x);
  const auto samples = report.interpolant.sample_line(xs, 0.0);
  std::vector<std::vector<std::string>> srows;
  for (std::size_t k = 0; k < xs.size(); ++k)
    srows.push_back({format_float(xs[k]), format_float(samples[k].real()),
                     format_float(samples[k].imag())});
  ctx.csv("solution_samples.csv", {"x", "f_re", "f_im"}, srows);

  ctx.put_int("count", static_cast<long long>(seq.size()));
  ctx.put_num("data_norm", report.data_norm);
  ctx.put_num("line_norm", report.line_norm.norm);
  ctx.put_num("line_norm_radius", report.line_norm.radius);
  ctx.put_num("norm_ratio", report.norm_ratio);
  ctx.put_num("max_node_residual", report.max_node_residual);
  ctx.put_num("verify_max_node_residual", verify.max_node_residual);
  ctx.put_num("verify_norm_agreement", verify.norm_agreement);
  ctx.put_num("growth_slope", verify.growth_slope);
  ctx.put_num("slope_bound", verify.slope_bound);
  ctx.put_bool("slope_ok", verify.slope_ok);
  ctx.finish();
}

struct StudyFlags {
  std::shared_ptr<CommonFlags> common;
  std::optional<double> p;
  std::optional<int> n_max;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> tau;
  std::optional<double> epsilon;
};

void run_norm_study(const StudyFlags& f) {
  RunContext ctx(*f.common, "norm-study");
  const double p = ctx.num(f.p, "p", 2.0);
  const int n_max = ctx.integer(f.n_max, "n_max", 25);
  const int trials = ctx.integer(f.trials, "trials", 20);
  const double tau = ctx.num(f.tau, "tau", M_PI);
  const double epsilon = ctx.num(f.epsilon, "epsilon", 0.5);
  const std::uint64_t seed = ctx.seed(f.seed, 20260814);

  const auto seq = pwinterp::perturbed_integer_nodes(p, n_max);
  auto gen = pwinterp::GeneratingFunction::from_sequence(seq);
  const auto family = pwinterp::BiorthogonalFamily::from_generating(std::move(gen));
  auto mult = std::make_shared<const pwinterp::BumpMultiplier>(
      pwinterp::BumpMultiplier::build(epsilon));

  const auto study = pwinterp::norm_stability_study(family, mult, p, tau, trials, seed);

  std::vector<std::vector<std::string>> rows;
  for (std::size_t t = 0; t < study.ratios.size(); ++t)
    rows.push_back({std::to_string(t), format_float(study.ratios[t])});
  ctx.csv("norm_study.csv", {"trial", "norm_ratio"}, rows);

  ctx.put_int("count", static_cast<long long>(family.size()));
  ctx.put_num("min_ratio", study.min);
  ctx.put_num("median_ratio", study.median);
  ctx.put_num("max_ratio", study.max);
  ctx.put_num("max_over_median", study.max / study.median);
  ctx.put_num("grid_radius", study.radius);
  ctx.finish();
}

struct McPhailFlags {
  std::shared_ptr<CommonFlags> common;
  std::optional<double> q;
  std::optional<std::string> side;
  std::optional<double> offset;
};

// The documented case family: twelve nodes {s n + i} at unit weights for ten
// spacings s. Tighter spacing makes weighted interpolation harder, so the
// Hardy solvability norm and the geometric measure constant must co-rank.
void run_mcphail(const McPhailFlags& f) {
  RunContext ctx(*f.common, "mcphail-check");
  const double q = ctx.num(f.q, "q", 2.0);
  const std::string side = ctx.str(f.side, "side", "upper");
  const double offset = ctx.num(f.offset, "offset", 0.0);
  const auto hp = pwinterp::parse_half_plane(side, offset);

  const std::vector<double> spacings{0.4, 0.6, 0.8, 1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0};
  const double inward = hp.side == pwinterp::Side::upper ? 1.0 : -1.0;
  std::vector<double> op_norms, mq_constants;
  std::vector<std::vector<std::string>> rows;
  for (std::size_t c = 0; c < spacings.size(); ++c) {
    const double s = spacings[c];
    std::vector<Complex> nodes;
    for (int n = 1; n <= 12; ++n) nodes.emplace_back(s * n, offset + inward);
    auto weighted = pwinterp::make_weighted_nodes(
        pwinterp::ComplexSequence(std::move(nodes)), std::vector<double>(12, 1.0));
    const auto measure = pwinterp::interpolation_test_measure(weighted, hp, q);
    const auto box = pwinterp::carleson_measure_constant(measure, hp);
    const auto oracle = pwinterp::solvability_oracle(weighted, hp);
    op_norms.push_back(oracle.operator_norm);
    mq_constants.push_back(box.constant);
    rows.push_back({std::to_string(c), format_float(s), format_float(oracle.operator_norm),
                    format_float(box.constant), format_float(oracle.gram_condition),
                    oracle.regularized ? "1" : "0"});
  }
  ctx.csv("mcphail_cases.csv",
          {"case", "spacing", "operator_norm", "measure_constant", "gram_condition",
           "regularized"},
          rows);

  ctx.put_int("cases", static_cast<long long>(spacings.size()));
  ctx.put_num("spearman", spearman_rank(op_norms, mq_constants));
  ctx.finish();
}

}  // namespace

void register_interpolation_commands(CLI::App& app) {
  {
    auto f = std::make_shared<FamilyFlags>();
    CLI::App* cmd = app.add_subcommand(
        "build-family", "Generate nodes, build the node family, export members and norms");
    f->common = add_common(cmd);
    cmd->add_option("--kind", f->kind, "family kind: perturbed, integers, or close-pair");
    cmd->add_option("--p", f->p, "norm exponent (sets the node perturbation)");
    cmd->add_option("--n-max", f->n_max, "one-sided node count");
    cmd->add_option("--gap", f->gap, "close-pair gap");
    cmd->add_option("--tau", f->tau, "bandwidth");
    cmd->callback([f]() { run_build_family(*f); });
  }
  {
    auto f = std::make_shared<SolveFlags>();
    CLI::App* cmd = app.add_subcommand(
        "solve-interpolation", "Solve weighted node interpolation and export the solution");
    f->common = add_common(cmd);
    cmd->add_option("--nodes", f->nodes, "node file (with generator directive)");
    cmd->add_option("--data", f->data, "target file, one 're im' per line");
    cmd->add_option("--weights", f->weights, "weight file (default: canonical weights)");
    cmd->add_option("--p", f->p, "norm exponent");
    cmd->add_option("--tau", f->tau, "node family bandwidth");
    cmd->add_option("--epsilon", f->epsilon, "multiplier width");
    cmd->add_flag("--random-unit", f->random_unit, "draw random unit-norm targets instead");
    cmd->add_option("--seed", f->seed, "seed for --random-unit");
    cmd->add_option("--extent", f->extent, "half-width of the exported sample sweep");
    cmd->add_option("--step", f->step, "sample spacing of the exported sweep");
    cmd->callback([f]() { run_solve(*f); });
  }
  {
    auto f = std::make_shared<StudyFlags>();
    CLI::App* cmd = app.add_subcommand(
        "norm-study", "Distribution of solution/data norm ratios over random targets");
    f->common = add_common(cmd);
    cmd->add_option("--p", f->p, "norm exponent");
    cmd->add_option("--n-max", f->n_max, "one-sided node count");
    cmd->add_option("--trials", f->trials, "random target draws");
    cmd->add_option("--seed", f->seed, "random seed");
    cmd->add_option("--tau", f->tau, "bandwidth");
    cmd->add_option("--epsilon", f->epsilon, "multiplier width");
    cmd->callback([f]() { run_norm_study(*f); });
  }
  {
    auto f = std::make_shared<McPhailFlags>();
    CLI::App* cmd = app.add_subcommand(
        "mcphail-check", "Solvability norms versus measure constants on the case family");
    f->common = add_common(cmd);
    cmd->add_option("--q", f->q, "measure exponent");
    cmd->add_option("--side", f->side, "half-plane side: upper or lower");
    cmd->add_option("--offset", f->offset, "half-plane boundary offset");
    cmd->callback([f]() { run_mcphail(*f); });
  }
}

}  // namespace pwtool
