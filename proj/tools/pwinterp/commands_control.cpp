#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <pwinterp/control.hpp>
#include <pwinterp/errors.hpp>
#include <pwinterp/io.hpp>

#include "context.hpp"

namespace pwtool {

using pwinterp::Complex;
using pwinterp::format_float;

namespace {

std::vector<Complex> read_state(RunContext& ctx, const std::optional<std::string>& flag,
                                const std::string& key, std::size_t modes) {
  if (auto path = ctx.input_opt(flag, key)) {
    auto state = pwinterp::read_complex_values(*path);
    if (state.size() != modes)
      throw pwinterp::IoError(key + ": expected " + std::to_string(modes) + " modal values, got " +
                              std::to_string(state.size()));
    return state;
  }
  return std::vector<Complex>(modes, Complex(0.0, 0.0));
}

void write_signal_artifact(RunContext& ctx, const pwinterp::ControlSignal& signal) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < signal.times.size(); ++k)
    rows.push_back({format_float(signal.times[k]), format_float(signal.values[k].real()),
                    format_float(signal.values[k].imag())});
  ctx.csv("control_signal.csv", {"t", "u_re", "u_im"}, rows);
}

struct SolveFlags {
  std::shared_ptr<CommonFlags> common;
  std::optional<std::string> system;
  std::optional<std::string> x0;
  std::optional<std::string> x1;
  std::optional<double> tau;
  std::optional<int> sample_points;
};

void run_solve(const SolveFlags& f) {
  RunContext ctx(*f.common, "control-solve");
  const auto system = pwinterp::read_system(ctx.input(f.system, "system"));
  const double tau = ctx.num_req(f.tau, "tau");
  const std::size_t modes = system.rates.size();
  const auto x0 = read_state(ctx, f.x0, "x0", modes);
  const auto x1 = read_state(ctx, f.x1, "x1", modes);

  pwinterp::ControlOptions options;
  options.sample_points = static_cast<std::size_t>(
      ctx.integer(f.sample_points, "sample_points", static_cast<int>(options.sample_points)));
  const auto report = pwinterp::min_norm_control(system, tau, x0, x1, options);

  write_signal_artifact(ctx, report.signal);
  std::vector<std::vector<std::string>> crows;
  for (std::size_t k = 0; k < report.active_indices.size(); ++k)
    crows.push_back({std::to_string(report.active_indices[k]),
                     format_float(report.coefficients[k].real()),
                     format_float(report.coefficients[k].imag())});
  ctx.csv("control_coefficients.csv", {"mode", "c_re", "c_im"}, crows);

  ctx.put_int("modes", static_cast<long long>(modes));
  ctx.put_int("active_modes", static_cast<long long>(report.active_indices.size()));
  ctx.put_int("excluded_modes", static_cast<long long>(report.excluded.size()));
  ctx.put_num("norm", report.norm);
  ctx.put_num("norm_sq", report.norm * report.norm);
  ctx.put_num("gram_condition", report.gram_condition);
  ctx.put_bool("regularized", report.regularized);
  ctx.put_num("moment_residual", report.moment_residual);
  ctx.finish();
}

struct SimulateFlags {
  std::shared_ptr<CommonFlags> common;
  std::optional<std::string> system;
  std::optional<std::string> signal;
  std::optional<std::string> x0;
  std::optional<std::string> x1;
  std::optional<double> tau;
  std::optional<int> output_points;
  std::optional<int> panels;
};

void run_simulate(const SimulateFlags& f) {
  RunContext ctx(*f.common, "control-simulate");
  const auto system = pwinterp::read_system(ctx.input(f.system, "system"));
  const auto signal = pwinterp::read_signal(ctx.input(f.signal, "signal"));
  double tau = signal.horizon;
  if (f.tau || ctx.config().has("tau"))
    tau = ctx.num_req(f.tau, "tau");
  else
    ctx.put_num("tau", tau);
  const auto x0 = read_state(ctx, f.x0, "x0", system.rates.size());

  pwinterp::SimulateOptions options;
  options.output_points = static_cast<std::size_t>(
      ctx.integer(f.output_points, "output_points", static_cast<int>(options.output_points)));
  options.panels = ctx.integer(f.panels, "panels", options.panels);
  const auto trajectory = pwinterp::simulate(system, tau, x0, signal, options);

  std::vector<std::string> header{"t"};
  for (std::size_t n = 0; n < system.rates.size(); ++n) {
    header.push_back("x" + std::to_string(n) + "_re");
    header.push_back("x" + std::to_string(n) + "_im");
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t j = 0; j < trajectory.times.size(); ++j) {
    std::vector<std::string> row{format_float(trajectory.times[j])};
    for (const Complex& v : trajectory.states[j]) {
      row.push_back(format_float(v.real()));
      row.push_back(format_float(v.imag()));
    }
    rows.push_back(std::move(row));
  }
  ctx.csv("trajectory.csv", header, rows);

  ctx.put_int("modes", static_cast<long long>(system.rates.size()));
  ctx.put_num("endpoint_error", trajectory.endpoint_error);
  double terminal = 0.0;
  for (const Complex& v : trajectory.endpoint) terminal += std::norm(v);
  ctx.put_num("terminal_norm", std::sqrt(terminal));
  if (f.x1 || ctx.config().has("x1")) {
    const auto x1 = read_state(ctx, f.x1, "x1", system.rates.size());
    double mismatch = 0.0;
    for (std::size_t n = 0; n < x1.size(); ++n)
      mismatch = std::max(mismatch, std::abs(trajectory.endpoint[n] - x1[n]));
    ctx.put_num("target_mismatch", mismatch);
  }
  ctx.finish();
}

struct ReportFlags {
  std::shared_ptr<CommonFlags> common;
  std::optional<std::string> system;
  std::optional<double> tau;
};

void run_report(const ReportFlags& f) {
  RunContext ctx(*f.common, "control-report");
  const auto system = pwinterp::read_system(ctx.input(f.system, "system"));
  const double tau = ctx.num_req(f.tau, "tau");
  const auto report = pwinterp::controllability_report(system, tau);

  std::vector<std::vector<std::string>> orows;
  for (std::size_t k = 0; k < report.offsets.size(); ++k)
    orows.push_back({format_float(report.offsets[k]), format_float(report.offset_constants[k])});
  ctx.csv("controllability_offsets.csv", {"offset", "measure_constant"}, orows);

  std::vector<std::vector<std::string>> grows;
  for (std::size_t k = 0; k < report.tau_grid.size(); ++k)
    grows.push_back({format_float(report.tau_grid[k]), format_float(report.gram_conditions[k])});
  ctx.csv("gram_conditions.csv", {"tau", "condition"}, grows);

  ctx.put_int("modes", static_cast<long long>(system.rates.size()));
  ctx.put_num("stability_margin", report.margin);
  ctx.put_int("uncontrollable_modes", static_cast<long long>(report.uncontrollable.size()));
  ctx.put_num("unlimited_constant", report.unlimited_constant);
  for (std::size_t k = 0; k < report.notes.size(); ++k)
    ctx.put("note." + std::to_string(k), report.notes[k]);
  ctx.finish();
}

}  // namespace

void register_control_commands(CLI::App& app) {
  {
    auto f = std::make_shared<SolveFlags>();
    CLI::App* cmd = app.add_subcommand(
        "control-solve", "Minimum-norm steering between modal states over a horizon");
    f->common = add_common(cmd);
    cmd->add_option("--system", f->system, "diagonal system file (n, rate, coupling CSV)");
    cmd->add_option("--x0", f->x0, "initial modal state file (default: origin)");
    cmd->add_option("--x1", f->x1, "target modal state file (default: origin)");
    cmd->add_option("--tau", f->tau, "control horizon");
    cmd->add_option("--sample-points", f->sample_points, "exported signal samples");
    cmd->callback([f]() { run_solve(*f); });
  }
  {
    auto f = std::make_shared<SimulateFlags>();
    CLI::App* cmd = app.add_subcommand(
        "control-simulate", "Integrate the modal states under a sampled control signal");
    f->common = add_common(cmd);
    cmd->add_option("--system", f->system, "diagonal system file");
    cmd->add_option("--signal", f->signal, "control signal CSV (t, u_re, u_im)");
    cmd->add_option("--x0", f->x0, "initial modal state file (default: origin)");
    cmd->add_option("--x1", f->x1, "target state file (reports the endpoint mismatch)");
    cmd->add_option("--tau", f->tau, "horizon (default: the signal's final time)");
    cmd->add_option("--output-points", f->output_points, "trajectory rows");
    cmd->add_option("--panels", f->panels, "quadrature panels per unit time");
    cmd->callback([f]() { run_simulate(*f); });
  }
  {
    auto f = std::make_shared<ReportFlags>();
    CLI::App* cmd = app.add_subcommand(
        "control-report", "Controllability diagnostics: margins, measures, Gram trends");
    f->common = add_common(cmd);
    cmd->add_option("--system", f->system, "diagonal system file");
    cmd->add_option("--tau", f->tau, "reference horizon");
    cmd->callback([f]() { run_report(*f); });
  }
}

}  // namespace pwtool
