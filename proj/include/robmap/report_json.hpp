#pragma once

// RobustnessReport serialization: JSON with lexicographic key ordering and
// integer cost units, so identical inputs produce identical bytes.

#include <string>

#include "robmap/analyze.hpp"

namespace robmap {

std::string report_to_json(const RobustnessReport& report, const CostSurface& surface);

}  // namespace robmap
