#include "robmap/sweep.hpp"

#include <algorithm>
#include <string>

namespace robmap {

namespace {

std::uint64_t axis_domain(const AxisSpec& axis, const DatasetConfig& config) {
  return axis.dimension == Dimension::kA ? config.distinct_a : config.distinct_b;
}

Value threshold_at(const AxisSpec& axis, const DatasetConfig& config, std::uint32_t exponent) {
  return axis_domain(axis, config) >> exponent;
}

}  // namespace

std::vector<std::uint32_t> AxisSpec::exponents() const {
  std::vector<std::uint32_t> out;
  for (std::uint64_t e = exponent_min; e <= exponent_max; e += step) {
    out.push_back(static_cast<std::uint32_t>(e));
  }
  return out;
}

void GridSpec::validate(const DatasetConfig& config) const {
  if (axes.empty() || axes.size() > 2) {
    throw ConfigError("grid needs one or two axes");
  }
  if (axes.size() == 2 && axes[0].dimension == axes[1].dimension) {
    throw ConfigError("2-D grid axes must sweep distinct dimensions");
  }
  for (const AxisSpec& axis : axes) {
    if (axis.exponent_min > axis.exponent_max) {
      throw ConfigError("axis exponent_min must be <= exponent_max");
    }
    if (axis.step == 0) throw ConfigError("axis step must be >= 1");
    if (axis.exponent_max >= 64) throw ConfigError("axis exponent_max out of range");
    const std::uint64_t domain = axis_domain(axis, config);
    // 2^exponent_max must divide D so every swept threshold is an integer.
    if (domain % (std::uint64_t{1} << axis.exponent_max) != 0) {
      throw ConfigError("axis exponent_max " + std::to_string(axis.exponent_max) +
                        " too large: 2^max must divide the column's distinct count " +
                        std::to_string(domain));
    }
  }
  if (plans.empty()) throw ConfigError("grid plan list must not be empty");
  const Query form = query_form();
  for (PlanId plan : plans) {
    if (!plan_applicable(plan, form)) {
      throw ConfigError(std::string("plan ") + std::string(plan_name(plan)) +
                        " is not applicable to this grid's query form");
    }
  }
}

Query GridSpec::query_form() const {
  Query q;
  q.output_flavor = output_flavor;
  for (const AxisSpec& axis : axes) {
    if (axis.dimension == Dimension::kA) {
      q.threshold_a = 0;
    } else {
      q.threshold_b = 0;
    }
  }
  return q;
}

std::vector<GridPoint> make_grid(const GridSpec& spec, const DatasetConfig& config) {
  spec.validate(config);
  std::vector<GridPoint> points;
  const std::vector<std::uint32_t> first = spec.axes[0].exponents();
  if (spec.axes.size() == 1) {
    for (std::uint32_t e : first) points.push_back(GridPoint{e, 0});
    return points;
  }
  const std::vector<std::uint32_t> second = spec.axes[1].exponents();
  for (std::uint32_t e0 : first) {
    for (std::uint32_t e1 : second) points.push_back(GridPoint{e0, e1});
  }
  return points;
}

std::size_t CostSurface::extent(std::size_t axis) const {
  if (axis >= grid.axes.size()) return 1;
  return grid.axes[axis].exponents().size();
}

std::size_t CostSurface::point_index(std::size_t i0, std::size_t i1) const {
  return i0 * extent(1) + i1;
}

const CostSurface::PlanSeries* CostSurface::find_series(PlanId plan) const {
  for (const PlanSeries& s : series) {
    if (s.plan == plan) return &s;
  }
  return nullptr;
}

CostSurface run_sweep(const Dataset& dataset, const GridSpec& spec, const ExecConfig& exec) {
  exec.validate();
  CostSurface surface;
  surface.grid = spec;
  surface.points = make_grid(spec, dataset.config());

  std::vector<PlanId> plans = spec.plans;
  std::sort(plans.begin(), plans.end(),
            [](PlanId a, PlanId b) { return plan_name(a) < plan_name(b); });
  plans.erase(std::unique(plans.begin(), plans.end()), plans.end());
  surface.grid.plans = plans;  // canonical order, matching the series

  const std::size_t n = surface.points.size();
  for (PlanId plan : plans) {
    CostSurface::PlanSeries s;
    s.plan = plan;
    s.cost.reserve(n);
    surface.series.push_back(std::move(s));
  }

  for (const GridPoint& point : surface.points) {
    Query query;
    query.output_flavor = spec.output_flavor;
    for (std::size_t axis = 0; axis < spec.axes.size(); ++axis) {
      const Value v = threshold_at(spec.axes[axis], dataset.config(), point[axis]);
      if (spec.axes[axis].dimension == Dimension::kA) {
        query.threshold_a = v;
      } else {
        query.threshold_b = v;
      }
    }
    for (CostSurface::PlanSeries& s : surface.series) {
      const PlanResult r = execute_plan(dataset, s.plan, query, exec);
      s.cost.push_back(r.cost);
      s.rand_pages.push_back(r.ledger.rand_pages());
      s.seq_pages.push_back(r.ledger.seq_pages());
      s.scratch_read.push_back(r.ledger.scratch_pages_read());
      s.scratch_write.push_back(r.ledger.scratch_pages_written());
      s.rows_examined.push_back(r.ledger.rows_examined());
      s.result_count.push_back(r.result_count);
      s.result_checksum.push_back(r.result_checksum);
    }
  }
  return surface;
}

std::vector<ResultMismatch> validate_surface(const CostSurface& surface) {
  if (surface.series.size() < 2) {
    throw ValidationError("validate_surface needs at least two plans");
  }
  std::vector<ResultMismatch> mismatches;
  for (std::size_t p = 0; p < surface.point_count(); ++p) {
    for (std::size_t i = 0; i < surface.series.size(); ++i) {
      for (std::size_t j = i + 1; j < surface.series.size(); ++j) {
        const auto& si = surface.series[i];
        const auto& sj = surface.series[j];
        if (si.result_count[p] != sj.result_count[p] ||
            si.result_checksum[p] != sj.result_checksum[p]) {
          mismatches.push_back(ResultMismatch{p, si.plan, sj.plan});
        }
      }
    }
  }
  return mismatches;
}

}  // namespace robmap
