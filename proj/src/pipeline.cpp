#include "robmap/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "robmap/render.hpp"
#include "robmap/report_json.hpp"
#include "robmap/surface_csv.hpp"

namespace robmap {

namespace {

std::string format_mismatches(const std::vector<ResultMismatch>& mismatches,
                              const CostSurface& surface) {
  std::ostringstream os;
  os << "cross-plan result mismatch at " << mismatches.size() << " (point, plan pair) entries:";
  for (const ResultMismatch& m : mismatches) {
    const GridPoint& pt = surface.points[m.point_index];
    os << "\n  point (" << pt[0];
    if (surface.dims() == 2) os << "," << pt[1];
    os << "): " << plan_name(m.plan_a) << " vs " << plan_name(m.plan_b);
  }
  return os.str();
}

std::vector<std::string> axis_labels(const CostSurface& surface, std::size_t axis) {
  std::vector<std::string> labels;
  for (std::uint32_t e : surface.grid.axes[axis].exponents()) {
    labels.push_back(std::to_string(e));
  }
  return labels;
}

// matrix[i][j] with i over axis 0 and j over axis 1.
std::vector<std::vector<Cost>> cost_matrix(const CostSurface& surface,
                                           const CostSurface::PlanSeries& series) {
  std::vector<std::vector<Cost>> m(surface.extent(0), std::vector<Cost>(surface.extent(1)));
  for (std::size_t i = 0; i < surface.extent(0); ++i) {
    for (std::size_t j = 0; j < surface.extent(1); ++j) {
      m[i][j] = series.cost[surface.point_index(i, j)];
    }
  }
  return m;
}

RenderSpec spec_for(const CostSurface& surface, const std::string& title) {
  RenderSpec spec;
  spec.title = title;
  spec.axis1_name = surface.grid.axes[0].dimension == Dimension::kA ? "a exponent" : "b exponent";
  if (surface.dims() == 2) {
    spec.axis2_name =
        surface.grid.axes[1].dimension == Dimension::kA ? "a exponent" : "b exponent";
  }
  return spec;
}

std::string render_curves_for(const CostSurface& surface) {
  if (surface.dims() != 1) {
    throw ConfigError("curve mode needs a 1-D surface");
  }
  // Shared x values: measured result rows per point (identical across
  // plans on a validated surface).
  std::vector<double> params;
  params.reserve(surface.point_count());
  for (std::size_t p = 0; p < surface.point_count(); ++p) {
    params.push_back(static_cast<double>(surface.series[0].result_count[p]));
  }
  // Result rows shrink as the exponent grows; plot left-to-right ascending.
  std::vector<std::size_t> order(surface.point_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;

  std::vector<Curve> curves;
  for (const auto& s : surface.series) {
    Curve c;
    c.name = std::string(plan_name(s.plan));
    for (std::size_t i : order) {
      c.params.push_back(params[i]);
      c.costs.push_back(s.cost[i]);
    }
    curves.push_back(std::move(c));
  }
  RenderSpec spec = spec_for(surface, "measured cost vs result rows");
  spec.axis1_name = "result rows";
  return render_curves_svg(curves, spec);
}

const CostSurface::PlanSeries& series_for_plan(const CostSurface& surface,
                                               const std::optional<std::string>& plan) {
  if (!plan.has_value()) {
    throw ConfigError("this render mode needs --plan");
  }
  const auto id = plan_from_name(*plan);
  if (!id.has_value()) {
    throw ConfigError("unknown plan name \"" + *plan + "\"");
  }
  const CostSurface::PlanSeries* s = surface.find_series(*id);
  if (s == nullptr) {
    throw ConfigError("surface has no data for plan \"" + *plan + "\"");
  }
  return *s;
}

std::string render_absolute_for(const CostSurface& surface,
                                const std::optional<std::string>& plan) {
  if (surface.dims() != 2) throw ConfigError("absolute heatmap mode needs a 2-D surface");
  const auto& series = series_for_plan(surface, plan);
  return render_heatmap_svg(cost_matrix(surface, series), axis_labels(surface, 0),
                            axis_labels(surface, 1),
                            spec_for(surface, std::string(plan_name(series.plan)) +
                                                  ": measured cost (decades over map minimum)"));
}

std::string render_relative_for(const CostSurface& surface,
                                const std::optional<std::string>& plan) {
  if (surface.dims() != 2) throw ConfigError("relative heatmap mode needs a 2-D surface");
  const auto& series = series_for_plan(surface, plan);
  const QuotientSurface quotients = relative_quotients(surface);
  const QuotientSurface::PlanQuotients* pq = nullptr;
  for (const auto& q : quotients.series) {
    if (q.plan == series.plan) pq = &q;
  }
  std::vector<std::vector<double>> m(surface.extent(0),
                                     std::vector<double>(surface.extent(1)));
  for (std::size_t i = 0; i < surface.extent(0); ++i) {
    for (std::size_t j = 0; j < surface.extent(1); ++j) {
      m[i][j] = pq->quotient[surface.point_index(i, j)];
    }
  }
  return render_heatmap_svg(m, axis_labels(surface, 0), axis_labels(surface, 1),
                            spec_for(surface, std::string(plan_name(series.plan)) +
                                                  ": cost relative to the best plan"));
}

std::string render_optimality_for(const CostSurface& surface, const Tolerance& tolerance) {
  if (surface.dims() != 2) throw ConfigError("optimality mode needs a 2-D surface");
  const OptimalityMap map = optimal_sets(surface, tolerance);
  std::vector<std::vector<std::uint32_t>> counts(surface.extent(0),
                                                 std::vector<std::uint32_t>(surface.extent(1)));
  for (std::size_t i = 0; i < surface.extent(0); ++i) {
    for (std::size_t j = 0; j < surface.extent(1); ++j) {
      counts[i][j] = map.counts[surface.point_index(i, j)];
    }
  }
  return render_optimality_svg(counts, axis_labels(surface, 0), axis_labels(surface, 1),
                               spec_for(surface, "optimal plans per point (within tolerance)"));
}

}  // namespace

std::optional<RenderMode> render_mode_from_name(std::string_view name) {
  if (name == "curve") return RenderMode::kCurve;
  if (name == "absolute") return RenderMode::kAbsolute;
  if (name == "relative") return RenderMode::kRelative;
  if (name == "optimality") return RenderMode::kOptimality;
  return std::nullopt;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open file for writing: " + path);
  out << text;
  if (!out) throw IoError("failed writing file: " + path);
}

CostSurface sweep_from_config(const RunConfig& config) {
  const Dataset dataset = build_dataset(config.dataset);
  CostSurface surface = run_sweep(dataset, config.grid, config.exec);
  if (surface.series.size() >= 2) {
    const auto mismatches = validate_surface(surface);
    if (!mismatches.empty()) {
      throw ValidationError(format_mismatches(mismatches, surface));
    }
  }
  return surface;
}

void cmd_sweep(const RunConfig& config, const std::string& out_path) {
  write_text_file(out_path, write_surface_csv(sweep_from_config(config)));
}

void cmd_analyze(const std::string& costs_path, const RunConfig& config,
                 const std::string& out_path) {
  const CostSurface surface = read_surface_csv(read_text_file(costs_path));
  const RobustnessReport report = build_report(surface, config.tolerance, config.jump_factor);
  write_text_file(out_path, report_to_json(report, surface));
}

void cmd_render(const std::string& costs_path, RenderMode mode,
                const std::optional<std::string>& plan, const RunConfig& config,
                const std::string& out_path) {
  const CostSurface surface = read_surface_csv(read_text_file(costs_path));
  std::string svg;
  switch (mode) {
    case RenderMode::kCurve: svg = render_curves_for(surface); break;
    case RenderMode::kAbsolute: svg = render_absolute_for(surface, plan); break;
    case RenderMode::kRelative: svg = render_relative_for(surface, plan); break;
    case RenderMode::kOptimality: svg = render_optimality_for(surface, config.tolerance); break;
  }
  write_text_file(out_path, svg);
}

void cmd_all(const RunConfig& config, const std::string& outdir) {
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) throw IoError("cannot create output directory: " + outdir);

  const CostSurface surface = sweep_from_config(config);
  write_text_file(outdir + "/surface.csv", write_surface_csv(surface));

  const RobustnessReport report = build_report(surface, config.tolerance, config.jump_factor);
  write_text_file(outdir + "/report.json", report_to_json(report, surface));

  if (surface.dims() == 1) {
    write_text_file(outdir + "/curves.svg", render_curves_for(surface));
    return;
  }
  write_text_file(outdir + "/optimality.svg", render_optimality_for(surface, config.tolerance));
  for (const auto& s : surface.series) {
    const std::string name(plan_name(s.plan));
    write_text_file(outdir + "/absolute_" + name + ".svg", render_absolute_for(surface, name));
    write_text_file(outdir + "/relative_" + name + ".svg", render_relative_for(surface, name));
  }
}

}  // namespace robmap
