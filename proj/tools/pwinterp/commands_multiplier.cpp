#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <pwinterp/io.hpp>
#include <pwinterp/multiplier.hpp>

#include "context.hpp"

namespace pwtool {

using pwinterp::Complex;
using pwinterp::format_float;

namespace {

struct BuildFlags {
  std::shared_ptr<CommonFlags> common;
  std::optional<double> epsilon;
  std::optional<double> extent;
  std::optional<double> step;
};

void run_build(const BuildFlags& f) {
  RunContext ctx(*f.common, "build-multiplier");
  const double epsilon = ctx.num_req(f.epsilon, "epsilon");
  const double extent = ctx.num(f.extent, "extent", 20.0);
  const double step = ctx.num(f.step, "step", 0.05);

  const auto mult = pwinterp::BumpMultiplier::build(epsilon);
  const Complex h0 = mult(Complex(0.0, 0.0));

  const auto count = static_cast<std::size_t>(std::floor(2.0 * extent / step)) + 1;
  const auto values = mult.sample_line(0.0, -extent, step, count);
  std::vector<std::vector<std::string>> rows;
  rows.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double x = -extent + step * static_cast<double>(k);
    rows.push_back({format_float(x), format_float(values[k].real()),
                    format_float(std::abs(values[k]))});
  }
  ctx.csv("multiplier_profile.csv", {"x", "h", "abs_h"}, rows);

  ctx.put_num("normalization", mult.normalization());
  ctx.put_num("h0_residual", std::abs(h0 - Complex(1.0, 0.0)));
  ctx.put_int("base_panels", mult.base_grid().panel_count());
  ctx.put_int("points_per_panel", mult.base_grid().points_per_panel());
  ctx.finish();
}

struct ProbeFlags {
  std::shared_ptr<CommonFlags> common;
  std::optional<double> epsilon;
  std::optional<double> real_extent;
  std::optional<double> imag_extent;
  std::optional<int> real_points;
  std::optional<int> imag_points;
  std::optional<double> drift_tolerance;
};

void run_probe(const ProbeFlags& f) {
  RunContext ctx(*f.common, "multiplier-probe");
  pwinterp::DecayCertificateOptions options;
  const double epsilon = ctx.num_req(f.epsilon, "epsilon");
  options.real_extent = ctx.num(f.real_extent, "real_extent", options.real_extent);
  options.imag_extent = ctx.num(f.imag_extent, "imag_extent", options.imag_extent);
  options.real_points = ctx.integer(f.real_points, "real_points", options.real_points);
  options.imag_points = ctx.integer(f.imag_points, "imag_points", options.imag_points);
  options.drift_tolerance =
      ctx.num(f.drift_tolerance, "drift_tolerance", options.drift_tolerance);

  const auto mult = pwinterp::BumpMultiplier::build(epsilon);
  const auto cert = pwinterp::decay_certificate(mult, options);

  // per-height row maxima of the certified quantity, on the refined grid
  std::vector<std::vector<std::string>> rows;
  const double type = epsilon / 2.0;
  const int nx = 2 * options.real_points - 1;
  const double dx = options.real_extent / static_cast<double>(nx - 1);
  for (int j = 0; j < 2 * options.imag_points - 1; ++j) {
    const double y =
        options.imag_extent * static_cast<double>(j) / static_cast<double>(2 * options.imag_points - 2);
    const auto values = mult.sample_line(y, 0.0, dx, static_cast<std::size_t>(nx));
    double row_max = 0.0;
    for (int i = 0; i < nx; ++i) {
      const double x = dx * static_cast<double>(i);
      const double weighted =
          std::abs(values[static_cast<std::size_t>(i)]) * (1.0 + std::hypot(x, y)) *
          std::exp(-type * y);
      row_max = std::max(row_max, weighted);
    }
    rows.push_back({format_float(y), format_float(row_max)});
  }
  ctx.csv("multiplier_probe.csv", {"height", "weighted_max"}, rows);

  ctx.put_num("constant", cert.constant);
  ctx.put_num("coarse_constant", cert.coarse_constant);
  ctx.put_num("drift", cert.drift);
  ctx.put_bool("stable", cert.stable);
  ctx.put_num("argmax_re", cert.arg_max.real());
  ctx.put_num("argmax_im", cert.arg_max.imag());
  ctx.finish();
}

}  // namespace

void register_multiplier_commands(CLI::App& app) {
  {
    auto f = std::make_shared<BuildFlags>();
    CLI::App* cmd = app.add_subcommand(
        "build-multiplier", "Build the entire multiplier and export its real-line profile");
    f->common = add_common(cmd);
    cmd->add_option("--epsilon", f->epsilon, "spectral width of the bump profile");
    cmd->add_option("--extent", f->extent, "half-width of the exported profile");
    cmd->add_option("--step", f->step, "sample spacing of the exported profile");
    cmd->callback([f]() { run_build(*f); });
  }
  {
    auto f = std::make_shared<ProbeFlags>();
    CLI::App* cmd = app.add_subcommand(
        "multiplier-probe", "Off-axis decay certificate of the multiplier");
    f->common = add_common(cmd);
    cmd->add_option("--epsilon", f->epsilon, "spectral width of the bump profile");
    cmd->add_option("--real-extent", f->real_extent, "probe extent along the real axis");
    cmd->add_option("--imag-extent", f->imag_extent, "probe extent along the imaginary axis");
    cmd->add_option("--real-points", f->real_points, "base grid points (real direction)");
    cmd->add_option("--imag-points", f->imag_points, "base grid points (imaginary direction)");
    cmd->add_option("--drift-tolerance", f->drift_tolerance,
                    "relative drift allowed across the grid doubling");
    cmd->callback([f]() { run_probe(*f); });
  }
}

}  // namespace pwtool
