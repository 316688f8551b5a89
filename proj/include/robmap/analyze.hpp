#pragma once

// Robustness diagnostics over cost surfaces: monotonicity and flattening
// checks, discontinuity detection, break-even points, relative-performance
// quotients, and optimality sets with their connected regions.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "robmap/sweep.hpp"

namespace robmap {

enum class ViolationKind : std::uint8_t { kMonotonicity, kFlattening, kDiscontinuity };

// A machine-checkable "something is amiss": the two offending costs (or
// derivatives, for flattening) at an adjacent point pair. `from`/`to` are
// grid exponent tuples for surface checks and plain indices for raw-curve
// flattening checks.
struct Violation {
  ViolationKind kind = ViolationKind::kMonotonicity;
  std::optional<PlanId> plan;  // absent for best-envelope diagnostics
  std::size_t axis = 0;
  std::array<std::uint32_t, 2> from{};
  std::array<std::uint32_t, 2> to{};
  double value_a = 0.0;
  double value_b = 0.0;
  bool operator==(const Violation&) const = default;
};

struct Tolerance {
  enum class Mode : std::uint8_t { kAbsolute, kRelative };
  Mode mode = Mode::kRelative;
  double value = 0.01;
  bool operator==(const Tolerance&) const = default;
};

// True iff cost is within tolerance of the best cost at a point.
bool within_tolerance(double cost, double best, const Tolerance& tolerance);

// Cost must be non-decreasing in result rows: flags adjacent pairs along
// the axis where cost rises as the exponent grows (result size shrinks),
// with relative slack 1e-9.
std::vector<Violation> check_monotone(const CostSurface& surface, PlanId plan, std::size_t axis);

struct CurvePoint {
  std::uint64_t result_rows;
  Cost cost;
};

// The cost curve should flatten: discrete derivatives per result row must
// not increase. Needs >= 3 points with strictly increasing rows. Violation
// from/to hold the indices of the two offending derivative segments.
std::vector<Violation> check_flattening(const std::vector<CurvePoint>& curve);

struct QuotientSurface {
  struct PlanQuotients {
    PlanId plan;
    std::vector<double> quotient;  // +inf where min cost is 0 and this is not
    double max_finite = 0.0;
    std::size_t max_point = 0;
  };
  std::vector<PlanQuotients> series;  // aligned with the surface's series order
};

// quotient(plan, point) = cost / min cost over plans; the best plan gets
// exactly 1. A zero minimum makes zero-cost plans 1 and the rest infinite.
QuotientSurface relative_quotients(const CostSurface& surface);

struct OptimalityMap {
  Tolerance tolerance;
  // Per point: plans within tolerance of the best cost, sorted by name.
  std::vector<std::vector<PlanId>> sets;
  // Per series (surface order): boolean mask over points.
  std::vector<std::vector<std::uint8_t>> masks;
  std::vector<std::uint32_t> counts;  // per point, always >= 1
};

OptimalityMap optimal_sets(const CostSurface& surface, const Tolerance& tolerance);

// Maximal 4-connected component of an optimality mask.
struct Region {
  std::vector<std::size_t> members;  // point indices, ascending
  std::size_t size = 0;
  std::uint32_t row_min = 0, col_min = 0, row_max = 0, col_max = 0;
  double fill_ratio = 0.0;  // size / bounding-box area
  bool operator==(const Region&) const = default;
};

// Connected components of a rows x cols boolean grid under 4-adjacency,
// ordered by first member index.
std::vector<Region> extract_regions(const std::vector<std::uint8_t>& mask, std::size_t rows,
                                    std::size_t cols);

// Flags adjacent grid pairs (either axis) where max(c1,c2) exceeds
// jump_factor times max(min(c1,c2), 1 cost unit). jump_factor must be > 1.
std::vector<Violation> detect_discontinuities(const CostSurface& surface, PlanId plan,
                                              double jump_factor);

struct Crossing {
  double param;
  bool degenerate;  // exact tie rather than a sign change
  bool operator==(const Crossing&) const = default;
};

// Sign changes of cost1 - cost2 over shared strictly increasing params,
// with the crossing interpolated linearly in (param, log cost) space.
// Identical curves yield no crossings; isolated exact ties are reported
// as degenerate crossings at their parameter.
std::vector<Crossing> find_break_even(const std::vector<double>& params,
                                      const std::vector<Cost>& cost1,
                                      const std::vector<Cost>& cost2);

struct Envelope {
  std::vector<Cost> min_cost;
  std::vector<std::vector<PlanId>> argmin;  // exact argmin set, sorted by name
};

Envelope best_envelope(const CostSurface& surface);

struct PlanDiagnostics {
  std::vector<Violation> violations;  // monotonicity, flattening, discontinuity
  double max_quotient = 1.0;
  bool max_quotient_finite = true;
  std::size_t max_quotient_point = 0;
  std::vector<Region> regions;  // optimality regions under the tolerance
  bool fragmented = false;      // region count > 1
};

struct BreakEvenPair {
  PlanId plan_a;
  PlanId plan_b;
  std::vector<Crossing> crossings;
};

struct RobustnessReport {
  Tolerance tolerance;
  double jump_factor = 3.0;
  std::vector<std::pair<PlanId, PlanDiagnostics>> plans;  // sorted by name
  std::vector<BreakEvenPair> break_evens;                 // 1-D surfaces only
  std::map<std::uint32_t, std::uint64_t> optimal_count_histogram;
  std::vector<Violation> envelope_discontinuities;
};

// Aggregates every diagnostic above; pure function of its inputs. Requires
// a validated surface (throws ValidationError listing any mismatches).
RobustnessReport build_report(const CostSurface& surface, const Tolerance& tolerance,
                              double jump_factor);

}  // namespace robmap
