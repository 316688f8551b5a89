#include "robmap/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace robmap {

namespace {

constexpr double kRelativeSlack = 1e-9;

// Walk every line of the surface along `axis` and hand adjacent point-index
// pairs (in ascending exponent order) to `fn`.
template <typename Fn>
void for_adjacent_pairs(const CostSurface& surface, std::size_t axis, Fn&& fn) {
  const std::size_t n0 = surface.extent(0);
  const std::size_t n1 = surface.extent(1);
  if (axis == 0) {
    for (std::size_t j = 0; j < n1; ++j) {
      for (std::size_t i = 0; i + 1 < n0; ++i) {
        fn(surface.point_index(i, j), surface.point_index(i + 1, j));
      }
    }
  } else {
    for (std::size_t i = 0; i < n0; ++i) {
      for (std::size_t j = 0; j + 1 < n1; ++j) {
        fn(surface.point_index(i, j), surface.point_index(i, j + 1));
      }
    }
  }
}

const CostSurface::PlanSeries& series_or_throw(const CostSurface& surface, PlanId plan) {
  const CostSurface::PlanSeries* s = surface.find_series(plan);
  if (s == nullptr) {
    throw ValidationError(std::string("surface has no series for plan ") +
                          std::string(plan_name(plan)));
  }
  return *s;
}

// Longest suffix of a rows-ascending line with strictly increasing rows;
// result counts can tie at one row deep in the grid corner, where a
// per-row derivative is meaningless.
std::vector<std::size_t> strictly_increasing_suffix(const std::vector<std::size_t>& points,
                                                    const std::vector<std::uint64_t>& rows) {
  std::size_t begin = points.size();
  std::uint64_t prev = 0;
  for (std::size_t k = points.size(); k-- > 0;) {
    const std::uint64_t r = rows[points[k]];
    if (begin < points.size() && r >= prev) break;
    prev = r;
    begin = k;
  }
  return {points.begin() + begin, points.end()};
}

}  // namespace

bool within_tolerance(double cost, double best, const Tolerance& tolerance) {
  if (tolerance.mode == Tolerance::Mode::kAbsolute) {
    return cost <= best + tolerance.value;
  }
  return cost <= best * (1.0 + tolerance.value);
}

std::vector<Violation> check_monotone(const CostSurface& surface, PlanId plan, std::size_t axis) {
  if (axis >= surface.dims()) {
    throw ValidationError("check_monotone: axis out of range");
  }
  const auto& s = series_or_throw(surface, plan);
  std::vector<Violation> out;
  for_adjacent_pairs(surface, axis, [&](std::size_t from, std::size_t to) {
    // Ascending exponent means shrinking result size, so cost must not rise.
    const double c_from = static_cast<double>(s.cost[from]);
    const double c_to = static_cast<double>(s.cost[to]);
    if (c_to > c_from * (1.0 + kRelativeSlack)) {
      out.push_back(Violation{ViolationKind::kMonotonicity, plan, axis, surface.points[from],
                              surface.points[to], c_from, c_to});
    }
  });
  return out;
}

std::vector<Violation> check_flattening(const std::vector<CurvePoint>& curve) {
  if (curve.size() < 3) {
    throw ValidationError("check_flattening needs at least three points");
  }
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    if (curve[i + 1].result_rows <= curve[i].result_rows) {
      throw ValidationError("check_flattening needs strictly increasing result rows");
    }
  }
  std::vector<double> derivative(curve.size() - 1);
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    derivative[i] = (static_cast<double>(curve[i + 1].cost) - static_cast<double>(curve[i].cost)) /
                    (static_cast<double>(curve[i + 1].result_rows) -
                     static_cast<double>(curve[i].result_rows));
  }
  std::vector<Violation> out;
  for (std::size_t i = 0; i + 1 < derivative.size(); ++i) {
    if (derivative[i + 1] > derivative[i] * (1.0 + kRelativeSlack)) {
      Violation v;
      v.kind = ViolationKind::kFlattening;
      v.from = {static_cast<std::uint32_t>(i), 0};
      v.to = {static_cast<std::uint32_t>(i + 1), 0};
      v.value_a = derivative[i];
      v.value_b = derivative[i + 1];
      out.push_back(v);
    }
  }
  return out;
}

QuotientSurface relative_quotients(const CostSurface& surface) {
  if (surface.series.empty()) {
    throw ValidationError("relative_quotients needs at least one plan");
  }
  const std::size_t n = surface.point_count();
  QuotientSurface qs;
  for (const auto& s : surface.series) {
    qs.series.push_back(QuotientSurface::PlanQuotients{s.plan, {}, 0.0, 0});
    qs.series.back().quotient.resize(n);
  }
  for (std::size_t p = 0; p < n; ++p) {
    Cost min_cost = surface.series[0].cost[p];
    for (const auto& s : surface.series) min_cost = std::min(min_cost, s.cost[p]);
    for (std::size_t k = 0; k < surface.series.size(); ++k) {
      const Cost c = surface.series[k].cost[p];
      double q;
      if (min_cost == 0) {
        q = (c == 0) ? 1.0 : std::numeric_limits<double>::infinity();
      } else {
        q = static_cast<double>(c) / static_cast<double>(min_cost);
      }
      qs.series[k].quotient[p] = q;
      if (std::isfinite(q) && q > qs.series[k].max_finite) {
        qs.series[k].max_finite = q;
        qs.series[k].max_point = p;
      }
    }
  }
  return qs;
}

OptimalityMap optimal_sets(const CostSurface& surface, const Tolerance& tolerance) {
  if (tolerance.value < 0) {
    throw ValidationError("tolerance must be >= 0");
  }
  if (surface.series.empty()) {
    throw ValidationError("optimal_sets needs at least one plan");
  }
  const std::size_t n = surface.point_count();
  OptimalityMap map;
  map.tolerance = tolerance;
  map.sets.resize(n);
  map.counts.resize(n);
  map.masks.assign(surface.series.size(), std::vector<std::uint8_t>(n, 0));
  for (std::size_t p = 0; p < n; ++p) {
    Cost min_cost = surface.series[0].cost[p];
    for (const auto& s : surface.series) min_cost = std::min(min_cost, s.cost[p]);
    for (std::size_t k = 0; k < surface.series.size(); ++k) {
      if (within_tolerance(static_cast<double>(surface.series[k].cost[p]),
                           static_cast<double>(min_cost), tolerance)) {
        map.masks[k][p] = 1;
        map.sets[p].push_back(surface.series[k].plan);
      }
    }
    map.counts[p] = static_cast<std::uint32_t>(map.sets[p].size());
  }
  return map;
}

std::vector<Region> extract_regions(const std::vector<std::uint8_t>& mask, std::size_t rows,
                                    std::size_t cols) {
  if (mask.size() != rows * cols) {
    throw ValidationError("extract_regions: mask size does not match rows*cols");
  }
  std::vector<std::uint8_t> seen(mask.size(), 0);
  std::vector<Region> regions;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < mask.size(); ++start) {
    if (!mask[start] || seen[start]) continue;
    Region region;
    stack.push_back(start);
    seen[start] = 1;
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      region.members.push_back(p);
      const std::size_t r = p / cols;
      const std::size_t c = p % cols;
      const std::size_t neighbors[4] = {
          r > 0 ? p - cols : p,
          r + 1 < rows ? p + cols : p,
          c > 0 ? p - 1 : p,
          c + 1 < cols ? p + 1 : p,
      };
      for (std::size_t q : neighbors) {
        if (q != p && mask[q] && !seen[q]) {
          seen[q] = 1;
          stack.push_back(q);
        }
      }
    }
    std::sort(region.members.begin(), region.members.end());
    region.size = region.members.size();
    region.row_min = region.col_min = std::numeric_limits<std::uint32_t>::max();
    region.row_max = region.col_max = 0;
    for (std::size_t p : region.members) {
      const auto r = static_cast<std::uint32_t>(p / cols);
      const auto c = static_cast<std::uint32_t>(p % cols);
      region.row_min = std::min(region.row_min, r);
      region.row_max = std::max(region.row_max, r);
      region.col_min = std::min(region.col_min, c);
      region.col_max = std::max(region.col_max, c);
    }
    const double box_area = static_cast<double>(region.row_max - region.row_min + 1) *
                            static_cast<double>(region.col_max - region.col_min + 1);
    region.fill_ratio = static_cast<double>(region.size) / box_area;
    regions.push_back(std::move(region));
  }
  std::sort(regions.begin(), regions.end(),
            [](const Region& a, const Region& b) { return a.members[0] < b.members[0]; });
  return regions;
}

std::vector<Violation> detect_discontinuities(const CostSurface& surface, PlanId plan,
                                              double jump_factor) {
  if (!(jump_factor > 1.0)) {
    throw ValidationError("jump_factor must be > 1");
  }
  const auto& s = series_or_throw(surface, plan);
  std::vector<Violation> out;
  for (std::size_t axis = 0; axis < surface.dims(); ++axis) {
    for_adjacent_pairs(surface, axis, [&](std::size_t from, std::size_t to) {
      const Cost c1 = s.cost[from];
      const Cost c2 = s.cost[to];
      const Cost hi = std::max(c1, c2);
      const Cost lo = std::max(std::min(c1, c2), Cost{1});
      if (static_cast<double>(hi) / static_cast<double>(lo) > jump_factor) {
        out.push_back(Violation{ViolationKind::kDiscontinuity, plan, axis, surface.points[from],
                                surface.points[to], static_cast<double>(c1),
                                static_cast<double>(c2)});
      }
    });
  }
  return out;
}

std::vector<Crossing> find_break_even(const std::vector<double>& params,
                                      const std::vector<Cost>& cost1,
                                      const std::vector<Cost>& cost2) {
  if (params.size() != cost1.size() || params.size() != cost2.size() || params.size() < 2) {
    throw ValidationError("find_break_even needs two curves over >= 2 shared params");
  }
  for (std::size_t i = 0; i + 1 < params.size(); ++i) {
    if (!(params[i] < params[i + 1])) {
      throw ValidationError("find_break_even needs strictly increasing params");
    }
  }
  auto sign = [&](std::size_t i) {
    if (cost1[i] == cost2[i]) return 0;
    return cost1[i] < cost2[i] ? -1 : 1;
  };
  // The paper plots log cost, so a crossing is the straight-line
  // intersection in (param, log cost) space.
  auto log_cost = [](Cost c) { return std::log(static_cast<double>(std::max(c, Cost{1}))); };

  std::vector<Crossing> out;
  bool all_tied = true;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (sign(i) != 0) {
      all_tied = false;
      break;
    }
  }
  if (all_tied) return out;

  for (std::size_t i = 0; i < params.size(); ++i) {
    if (sign(i) == 0) {
      // Report each maximal run of exact ties once, at its first param.
      if (i == 0 || sign(i - 1) != 0) {
        out.push_back(Crossing{params[i], true});
      }
      continue;
    }
    if (i + 1 < params.size() && sign(i) * sign(i + 1) < 0) {
      const double d0 = log_cost(cost1[i]) - log_cost(cost2[i]);
      const double d1 = log_cost(cost1[i + 1]) - log_cost(cost2[i + 1]);
      const double t = d0 / (d0 - d1);
      out.push_back(Crossing{params[i] + t * (params[i + 1] - params[i]), false});
    }
  }
  return out;
}

Envelope best_envelope(const CostSurface& surface) {
  if (surface.series.empty()) {
    throw ValidationError("best_envelope needs at least one plan");
  }
  const std::size_t n = surface.point_count();
  Envelope env;
  env.min_cost.resize(n);
  env.argmin.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    Cost best = surface.series[0].cost[p];
    for (const auto& s : surface.series) best = std::min(best, s.cost[p]);
    env.min_cost[p] = best;
    for (const auto& s : surface.series) {
      if (s.cost[p] == best) env.argmin[p].push_back(s.plan);
    }
  }
  return env;
}

RobustnessReport build_report(const CostSurface& surface, const Tolerance& tolerance,
                              double jump_factor) {
  if (surface.series.size() >= 2) {
    const auto mismatches = validate_surface(surface);
    if (!mismatches.empty()) {
      std::string msg = "surface failed cross-plan validation:";
      for (const auto& m : mismatches) {
        msg += " [point " + std::to_string(m.point_index) + ": " +
               std::string(plan_name(m.plan_a)) + " vs " + std::string(plan_name(m.plan_b)) + "]";
      }
      throw ValidationError(msg);
    }
  }

  RobustnessReport report;
  report.tolerance = tolerance;
  report.jump_factor = jump_factor;

  const QuotientSurface quotients = relative_quotients(surface);
  const OptimalityMap optimality = optimal_sets(surface, tolerance);

  for (std::size_t k = 0; k < surface.series.size(); ++k) {
    const auto& s = surface.series[k];
    PlanDiagnostics diag;

    for (std::size_t axis = 0; axis < surface.dims(); ++axis) {
      for (Violation& v : check_monotone(surface, s.plan, axis)) {
        diag.violations.push_back(v);
      }
    }

    // Flattening runs per line along each axis, over the suffix where
    // result rows strictly increase; grid exponents replace curve indices
    // in the reported violations.
    for (std::size_t axis = 0; axis < surface.dims(); ++axis) {
      const std::size_t n_other = surface.extent(axis == 0 ? 1 : 0);
      const std::size_t n_axis = surface.extent(axis);
      for (std::size_t other = 0; other < n_other; ++other) {
        std::vector<std::size_t> line;  // ascending rows = descending exponent
        for (std::size_t i = n_axis; i-- > 0;) {
          line.push_back(axis == 0 ? surface.point_index(i, other)
                                   : surface.point_index(other, i));
        }
        line = strictly_increasing_suffix(line, s.result_count);
        if (line.size() < 3) continue;
        std::vector<CurvePoint> curve;
        curve.reserve(line.size());
        for (std::size_t p : line) curve.push_back(CurvePoint{s.result_count[p], s.cost[p]});
        for (Violation v : check_flattening(curve)) {
          // Derivative i spans curve points i..i+1; report the pair where
          // the steeper segment begins.
          const std::size_t at = line[v.from[0] + 1];
          const std::size_t next = line[v.to[0] + 1];
          v.plan = s.plan;
          v.axis = axis;
          v.from = surface.points[at];
          v.to = surface.points[next];
          diag.violations.push_back(v);
        }
      }
    }

    for (Violation& v : detect_discontinuities(surface, s.plan, jump_factor)) {
      diag.violations.push_back(v);
    }

    diag.max_quotient = quotients.series[k].max_finite;
    diag.max_quotient_finite = true;
    diag.max_quotient_point = quotients.series[k].max_point;

    diag.regions = extract_regions(optimality.masks[k], surface.extent(0), surface.extent(1));
    diag.fragmented = diag.regions.size() > 1;

    report.plans.emplace_back(s.plan, std::move(diag));
  }

  if (surface.dims() == 1) {
    std::vector<double> params;
    params.reserve(surface.point_count());
    for (const GridPoint& pt : surface.points) params.push_back(static_cast<double>(pt[0]));
    for (std::size_t i = 0; i < surface.series.size(); ++i) {
      for (std::size_t j = i + 1; j < surface.series.size(); ++j) {
        BreakEvenPair pair;
        pair.plan_a = surface.series[i].plan;
        pair.plan_b = surface.series[j].plan;
        pair.crossings =
            find_break_even(params, surface.series[i].cost, surface.series[j].cost);
        report.break_evens.push_back(std::move(pair));
      }
    }
  }

  for (std::uint32_t c : optimality.counts) ++report.optimal_count_histogram[c];

  // The best-cost envelope fed back through the discontinuity detector is
  // the "costs of best plans are not smooth" diagnostic.
  const Envelope env = best_envelope(surface);
  for (std::size_t axis = 0; axis < surface.dims(); ++axis) {
    for_adjacent_pairs(surface, axis, [&](std::size_t from, std::size_t to) {
      const Cost c1 = env.min_cost[from];
      const Cost c2 = env.min_cost[to];
      const Cost hi = std::max(c1, c2);
      const Cost lo = std::max(std::min(c1, c2), Cost{1});
      if (static_cast<double>(hi) / static_cast<double>(lo) > jump_factor) {
        Violation v;
        v.kind = ViolationKind::kDiscontinuity;
        v.axis = axis;
        v.from = surface.points[from];
        v.to = surface.points[to];
        v.value_a = static_cast<double>(c1);
        v.value_b = static_cast<double>(c2);
        report.envelope_discontinuities.push_back(v);
      }
    });
  }

  return report;
}

}  // namespace robmap
