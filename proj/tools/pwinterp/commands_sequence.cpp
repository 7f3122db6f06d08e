#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <pwinterp/io.hpp>
#include <pwinterp/sequence.hpp>
#include <pwinterp/sequence_analysis.hpp>

#include "context.hpp"

namespace pwtool {

using pwinterp::Complex;
using pwinterp::format_float;

namespace {

pwinterp::HalfPlane half_plane_of(RunContext& ctx, const std::optional<std::string>& side_flag,
                                  const std::optional<double>& offset_flag) {
  const std::string side = ctx.str(side_flag, "side", "upper");
  const double offset = ctx.num(offset_flag, "offset", 0.0);
  return pwinterp::parse_half_plane(side, offset);
}

struct AnalyzeFlags {
  std::shared_ptr<CommonFlags> common;
  std::optional<std::string> nodes;
  std::optional<std::string> side;
  std::optional<double> offset;
  std::optional<std::string> radii;
};

void run_analyze(const AnalyzeFlags& f) {
  RunContext ctx(*f.common, "analyze-sequence");
  const auto seq = pwinterp::read_sequence(ctx.input(f.nodes, "nodes"));
  const auto hp = half_plane_of(ctx, f.side, f.offset);
  const auto& pts = seq.points();
  if (pts.size() < 2)
    throw pwinterp::InvalidArgument("analyze-sequence: need at least two nodes");

  // The hyperbolic quantities need every node strictly inside the half-plane;
  // real-line node files sit on the boundary, so those parts are conditional.
  bool strictly_inside = true;
  for (const Complex& z : pts) strictly_inside = strictly_inside && hp.boundary_distance(z) > 0.0;

  std::optional<pwinterp::SeparationReport> separation;
  std::optional<pwinterp::ProductReport> products;
  double blaschke = 0.0;
  if (strictly_inside) {
    separation = pwinterp::separation_report(seq, hp);
    products = pwinterp::separation_products(seq, hp);
    blaschke = pwinterp::blaschke_condition_sum(seq, hp);
  }

  std::vector<double> gaps(pts.size(), std::numeric_limits<double>::infinity());
  double min_gap = std::numeric_limits<double>::infinity();
  std::size_t gap_i = 0, gap_j = 0;
  for (std::size_t n = 0; n < pts.size(); ++n)
    for (std::size_t k = n + 1; k < pts.size(); ++k) {
      const double d = std::abs(pts[n] - pts[k]);
      gaps[n] = std::min(gaps[n], d);
      gaps[k] = std::min(gaps[k], d);
      if (d < min_gap) {
        min_gap = d;
        gap_i = n;
        gap_j = k;
      }
    }

  std::vector<std::string> header{"index", "re", "im", "boundary_distance", "nearest_gap"};
  if (products) {
    header.push_back("separation_product");
    header.push_back("log_separation_product");
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t n = 0; n < pts.size(); ++n) {
    std::vector<std::string> row{std::to_string(n), format_float(pts[n].real()),
                                 format_float(pts[n].imag()),
                                 format_float(hp.boundary_distance(pts[n])),
                                 format_float(gaps[n])};
    if (products) {
      row.push_back(format_float(products->values[n]));
      row.push_back(format_float(products->log_values[n]));
    }
    rows.push_back(std::move(row));
  }
  ctx.csv("analyze_sequence.csv", header, rows);

  if (seq.strip_bound()) {
    const auto radii = parse_number_list(ctx.str(f.radii, "radii", "10,20,50,100"), "radii");
    const auto density = pwinterp::upper_uniform_density(seq, radii);
    std::vector<std::vector<std::string>> drows;
    for (const auto& pt : density.points)
      drows.push_back({format_float(pt.radius), std::to_string(pt.max_count),
                       format_float(pt.ratio)});
    ctx.csv("analyze_sequence_density.csv", {"radius", "max_count", "ratio"}, drows);
    ctx.put_num("density_ratio", density.points.back().ratio);
  }

  ctx.put_int("count", static_cast<long long>(pts.size()));
  ctx.put_num("min_euclidean_gap", min_gap);
  ctx.put_int("gap_argmin_i", static_cast<long long>(gap_i));
  ctx.put_int("gap_argmin_j", static_cast<long long>(gap_j));
  ctx.put_bool("half_plane_analysis", strictly_inside);
  if (separation) {
    ctx.put_num("min_pseudo_hyperbolic", separation->min_pseudo_hyperbolic);
    ctx.put_int("argmin_i", static_cast<long long>(separation->argmin_i));
    ctx.put_int("argmin_j", static_cast<long long>(separation->argmin_j));
    ctx.put_num("separation_product_infimum", products->infimum);
    ctx.put_int("separation_product_argmin", static_cast<long long>(products->argmin));
    ctx.put_num("blaschke_sum", blaschke);
  }
  ctx.finish();
}

struct DensityFlags {
  std::shared_ptr<CommonFlags> common;
  std::optional<std::string> nodes;
  std::optional<std::string> radii;
};

void run_density(const DensityFlags& f) {
  RunContext ctx(*f.common, "density");
  const auto seq = pwinterp::read_sequence(ctx.input(f.nodes, "nodes"));
  const auto radii = parse_number_list(ctx.str(f.radii, "radii", "10,20,50,100,200"), "radii");
  const auto report = pwinterp::upper_uniform_density(seq, radii);

  std::vector<std::vector<std::string>> rows;
  for (const auto& pt : report.points)
    rows.push_back(
        {format_float(pt.radius), std::to_string(pt.max_count), format_float(pt.ratio)});
  ctx.csv("density.csv", {"radius", "max_count", "ratio"}, rows);

  ctx.put_int("count", static_cast<long long>(seq.points().size()));
  ctx.put_num("strip_bound", report.strip_bound);
  ctx.put_num("density_estimate", report.points.back().ratio);
  ctx.finish();
}

struct CarlesonFlags {
  std::shared_ptr<CommonFlags> common;
  std::optional<std::string> nodes;
  std::optional<std::string> masses;
  std::optional<std::string> side;
  std::optional<double> offset;
  std::optional<double> threshold;
};

void run_carleson(const CarlesonFlags& f) {
  RunContext ctx(*f.common, "carleson-measure");
  const auto seq = pwinterp::read_sequence(ctx.input(f.nodes, "nodes"));
  const auto hp = half_plane_of(ctx, f.side, f.offset);

  pwinterp::DiscreteMeasure measure;
  if (auto masses_path = ctx.input_opt(f.masses, "masses")) {
    measure = pwinterp::make_measure(seq.points(),
                                     pwinterp::read_positive_values(*masses_path));
  } else {
    measure = pwinterp::boundary_distance_measure(seq, hp);
  }
  const auto report = pwinterp::carleson_measure_constant(measure, hp);

  std::vector<std::vector<std::string>> rows;
  for (std::size_t n = 0; n < measure.atoms.size(); ++n)
    rows.push_back({std::to_string(n), format_float(measure.atoms[n].real()),
                    format_float(measure.atoms[n].imag()), format_float(measure.masses[n]),
                    format_float(hp.boundary_distance(measure.atoms[n]))});
  ctx.csv("carleson_measure.csv", {"index", "re", "im", "mass", "boundary_distance"}, rows);

  ctx.put_int("atoms", static_cast<long long>(measure.atoms.size()));
  ctx.put_num("total_mass", measure.total_mass());
  ctx.put_num("constant", report.constant);
  ctx.put_num("best_box_x0", report.best.x0);
  ctx.put_num("best_box_side", report.best.side);
  ctx.put_num("best_box_mass", report.best.mass);
  ctx.put_int("scales_scanned", static_cast<long long>(report.scales_scanned));
  if (f.threshold || ctx.config().has("threshold")) {
    const double threshold = ctx.num_req(f.threshold, "threshold");
    ctx.put_bool("satisfied", report.constant <= threshold);
  }
  ctx.finish();
}

}  // namespace

void register_sequence_commands(CLI::App& app) {
  {
    auto f = std::make_shared<AnalyzeFlags>();
    CLI::App* cmd = app.add_subcommand(
        "analyze-sequence", "Separation products, gaps, and Blaschke sum of a node file");
    f->common = add_common(cmd);
    cmd->add_option("--nodes", f->nodes, "node file (one 're im' pair per line)");
    cmd->add_option("--side", f->side, "half-plane side: upper or lower");
    cmd->add_option("--offset", f->offset, "half-plane boundary offset");
    cmd->add_option("--radii", f->radii, "comma-separated density window radii");
    cmd->callback([f]() { run_analyze(*f); });
  }
  {
    auto f = std::make_shared<DensityFlags>();
    CLI::App* cmd =
        app.add_subcommand("density", "Window-count density of real parts at several radii");
    f->common = add_common(cmd);
    cmd->add_option("--nodes", f->nodes, "node file");
    cmd->add_option("--radii", f->radii, "comma-separated window radii");
    cmd->callback([f]() { run_density(*f); });
  }
  {
    auto f = std::make_shared<CarlesonFlags>();
    CLI::App* cmd = app.add_subcommand(
        "carleson-measure", "Box constant of an atomic measure over a half-plane");
    f->common = add_common(cmd);
    cmd->add_option("--nodes", f->nodes, "atom positions (node file)");
    cmd->add_option("--masses", f->masses,
                    "mass file, one positive value per line (default: boundary distances)");
    cmd->add_option("--side", f->side, "half-plane side: upper or lower");
    cmd->add_option("--offset", f->offset, "half-plane boundary offset");
    cmd->add_option("--threshold", f->threshold, "constant threshold to verdict against");
    cmd->callback([f]() { run_carleson(*f); });
  }
}

}  // namespace pwtool
