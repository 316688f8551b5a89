#pragma once

// Selectivity grids and the harness that runs every requested plan at
// every grid point, assembling validated cost surfaces. Threshold at
// exponent e is D / 2^e, so result sizes halve per unit step.

#include <array>
#include <cstdint>
#include <vector>

#include "robmap/exec.hpp"
#include "robmap/storage.hpp"

namespace robmap {

enum class Dimension : std::uint8_t { kA, kB };

struct AxisSpec {
  Dimension dimension = Dimension::kA;
  std::uint32_t exponent_min = 0;
  std::uint32_t exponent_max = 16;
  std::uint32_t step = 1;

  std::vector<std::uint32_t> exponents() const;
  bool operator==(const AxisSpec&) const = default;
};

struct GridSpec {
  std::vector<AxisSpec> axes;  // one axis for 1-D, two for 2-D
  OutputFlavor output_flavor = OutputFlavor::kRowIds;
  std::vector<PlanId> plans;

  void validate(const DatasetConfig& config) const;  // throws ConfigError
  // The query shape this grid produces (thresholds present per axis).
  Query query_form() const;
  bool operator==(const GridSpec&) const = default;
};

// Exponent tuple; the second slot is zero and unused for 1-D grids.
using GridPoint = std::array<std::uint32_t, 2>;

// All exponent tuples of the grid in lexicographic order.
std::vector<GridPoint> make_grid(const GridSpec& spec, const DatasetConfig& config);

// Measured costs and ledger components for every (point, plan) pair.
// Series are sorted by plan name; points lexicographically by exponents.
struct CostSurface {
  struct PlanSeries {
    PlanId plan;
    std::vector<Cost> cost;
    std::vector<std::uint64_t> rand_pages;
    std::vector<std::uint64_t> seq_pages;
    std::vector<std::uint64_t> scratch_read;
    std::vector<std::uint64_t> scratch_write;
    std::vector<std::uint64_t> rows_examined;
    std::vector<std::uint64_t> result_count;
    std::vector<std::uint64_t> result_checksum;
    bool operator==(const PlanSeries&) const = default;
  };

  GridSpec grid;
  std::vector<GridPoint> points;
  std::vector<PlanSeries> series;

  std::size_t dims() const { return grid.axes.size(); }
  std::size_t point_count() const { return points.size(); }
  // Axis sizes; axis 1 has extent 1 on 1-D surfaces.
  std::size_t extent(std::size_t axis) const;
  std::size_t point_index(std::size_t i0, std::size_t i1) const;
  const PlanSeries* find_series(PlanId plan) const;

  bool operator==(const CostSurface&) const = default;
};

// Executes every (point, plan) pair with a fresh ledger. Deterministic and
// independent of execution order. Throws ConfigError for inapplicable
// plans before executing anything.
CostSurface run_sweep(const Dataset& dataset, const GridSpec& spec, const ExecConfig& exec);

struct ResultMismatch {
  std::size_t point_index;
  PlanId plan_a;
  PlanId plan_b;
  bool operator==(const ResultMismatch&) const = default;
};

// Every (point, plan pair) whose result counts or checksums disagree.
// Empty means all plans computed identical results everywhere. Throws
// ValidationError if the surface has fewer than two plans.
std::vector<ResultMismatch> validate_surface(const CostSurface& surface);

}  // namespace robmap
