#pragma once

// Deterministic SVG robustness maps: log-log cost curves, absolute and
// relative heatmaps with order-of-magnitude color buckets, and
// optimal-plan-count maps. Every renderer is a pure function emitting
// byte-stable SVG 1.1 text.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "robmap/storage.hpp"

namespace robmap {

// Green through red to black, one step per order of magnitude; bucket
// indexes past 5 clamp to black.
inline constexpr std::array<std::string_view, 6> kCostPalette = {
    "#1a9850", "#91cf60", "#fee08b", "#fc8d59", "#d73027", "#000000",
};

// Light-to-dark ramp for optimal-plan counts 1..6+.
inline constexpr std::array<std::string_view, 6> kCountPalette = {
    "#f7f7f7", "#d9d9d9", "#bdbdbd", "#969696", "#636363", "#252525",
};

struct RenderSpec {
  int cell_size = 24;  // pixels per heatmap cell
  bool legend = true;
  std::string axis1_name = "a exponent";
  std::string axis2_name = "b exponent";
  std::string title;
};

// floor(log10(cost / reference_min)) clamped to [0, 5]. Computed on the
// integer ladder reference*10^k, so decade boundaries are exact.
// Requires cost >= reference_min > 0.
int bucket_absolute(Cost cost, Cost reference_min);

// floor(log10(quotient)) clamped to [0, 5]; requires quotient >= 1.
int bucket_relative(double quotient);

struct Curve {
  std::string name;
  std::vector<double> params;  // shared across curves, strictly positive
  std::vector<Cost> costs;     // strictly positive
};

// One polyline per curve on log2-x / log10-y axes with a labeled legend.
std::string render_curves_svg(const std::vector<Curve>& curves, const RenderSpec& spec);

// Absolute mode: cells bucketed against the matrix minimum.
// matrix[i][j]: i indexes axis 1 (x), j indexes axis 2 (y).
std::string render_heatmap_svg(const std::vector<std::vector<Cost>>& matrix,
                               const std::vector<std::string>& axis1_labels,
                               const std::vector<std::string>& axis2_labels,
                               const RenderSpec& spec);

// Relative mode: cells are quotients >= 1 bucketed per decade.
std::string render_heatmap_svg(const std::vector<std::vector<double>>& quotients,
                               const std::vector<std::string>& axis1_labels,
                               const std::vector<std::string>& axis2_labels,
                               const RenderSpec& spec);

// Optimal-plan-count map: count 1 lightest, 6+ clamps to darkest.
// Counts must be >= 1.
std::string render_optimality_svg(const std::vector<std::vector<std::uint32_t>>& counts,
                                  const std::vector<std::string>& axis1_labels,
                                  const std::vector<std::string>& axis2_labels,
                                  const RenderSpec& spec);

}  // namespace robmap
