#include "robmap/report_json.hpp"

#include "json.hpp"

namespace robmap {

namespace {

using nlohmann::json;  // object keys are kept in lexicographic order

json point_json(const std::array<std::uint32_t, 2>& point, std::size_t dims) {
  json arr = json::array();
  arr.push_back(point[0]);
  if (dims == 2) arr.push_back(point[1]);
  return arr;
}

const char* kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kMonotonicity: return "monotonicity";
    case ViolationKind::kFlattening: return "flattening";
    case ViolationKind::kDiscontinuity: return "discontinuity";
  }
  return "?";
}

json violation_json(const Violation& v, std::size_t dims) {
  json out;
  out["kind"] = kind_name(v.kind);
  out["axis"] = v.axis;
  out["from"] = point_json(v.from, dims);
  out["to"] = point_json(v.to, dims);
  out["value_a"] = v.value_a;
  out["value_b"] = v.value_b;
  return out;
}

json region_json(const Region& r) {
  json out;
  out["size"] = r.size;
  out["bbox"] = json::array({r.row_min, r.col_min, r.row_max, r.col_max});
  out["fill_ratio"] = r.fill_ratio;
  return out;
}

}  // namespace

std::string report_to_json(const RobustnessReport& report, const CostSurface& surface) {
  const std::size_t dims = surface.dims();
  json doc;

  doc["tolerance"] = {
      {"mode", report.tolerance.mode == Tolerance::Mode::kRelative ? "relative" : "absolute"},
      {"value", report.tolerance.value},
  };
  doc["jump_factor"] = report.jump_factor;

  json plans = json::object();
  for (const auto& [plan, diag] : report.plans) {
    json p;
    json violations = json::array();
    for (const Violation& v : diag.violations) violations.push_back(violation_json(v, dims));
    p["violations"] = violations;
    p["max_quotient"] = diag.max_quotient;
    p["max_quotient_point"] = point_json(surface.points[diag.max_quotient_point], dims);
    json regions = json::array();
    for (const Region& r : diag.regions) regions.push_back(region_json(r));
    p["regions"] = regions;
    p["fragmented"] = diag.fragmented;
    plans[std::string(plan_name(plan))] = p;
  }
  doc["plans"] = plans;

  json break_evens = json::array();
  for (const BreakEvenPair& pair : report.break_evens) {
    json crossings = json::array();
    for (const Crossing& c : pair.crossings) {
      crossings.push_back({{"param", c.param}, {"degenerate", c.degenerate}});
    }
    break_evens.push_back({
        {"plan_a", std::string(plan_name(pair.plan_a))},
        {"plan_b", std::string(plan_name(pair.plan_b))},
        {"crossings", crossings},
    });
  }
  doc["break_evens"] = break_evens;

  json histogram = json::object();
  for (const auto& [count, points] : report.optimal_count_histogram) {
    histogram[std::to_string(count)] = points;
  }
  doc["optimal_count_histogram"] = histogram;

  json envelope = json::array();
  for (const Violation& v : report.envelope_discontinuities) {
    envelope.push_back(violation_json(v, dims));
  }
  doc["envelope_discontinuities"] = envelope;

  return doc.dump(2) + "\n";
}

}  // namespace robmap
