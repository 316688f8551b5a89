#include "robmap/surface_csv.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace robmap {

namespace {

std::string dimension_name(Dimension d) { return d == Dimension::kA ? "a" : "b"; }

std::uint64_t parse_u64(std::string_view field, const char* what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ValidationError(std::string("non-numeric cell for ") + what + ": '" +
                          std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

struct CsvRow {
  GridPoint point;
  PlanId plan;
  std::array<std::uint64_t, 8> values;
};

AxisSpec parse_meta_axis(std::string_view text) {
  // dimension:min:max:step, e.g. a:0:16:1
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    if (colon == std::string_view::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, colon - start));
    start = colon + 1;
  }
  if (parts.size() != 4 || (parts[0] != "a" && parts[0] != "b")) {
    throw ValidationError("malformed axis metadata: '" + std::string(text) + "'");
  }
  AxisSpec axis;
  axis.dimension = parts[0] == "a" ? Dimension::kA : Dimension::kB;
  axis.exponent_min = static_cast<std::uint32_t>(parse_u64(parts[1], "axis exponent_min"));
  axis.exponent_max = static_cast<std::uint32_t>(parse_u64(parts[2], "axis exponent_max"));
  axis.step = static_cast<std::uint32_t>(parse_u64(parts[3], "axis step"));
  return axis;
}

// "# robmap-surface axes=a:0:16:1;b:0:16:1 flavor=rowids"
void parse_meta_line(std::string_view line, GridSpec& grid) {
  std::istringstream in{std::string(line.substr(1))};
  std::string token;
  in >> token;
  if (token != "robmap-surface") {
    throw ValidationError("unrecognized surface metadata line");
  }
  while (in >> token) {
    if (token.rfind("axes=", 0) == 0) {
      std::string_view axes_text = std::string_view(token).substr(5);
      grid.axes.clear();
      std::size_t start = 0;
      while (start <= axes_text.size()) {
        const std::size_t semi = axes_text.find(';', start);
        const std::string_view one = axes_text.substr(
            start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
        grid.axes.push_back(parse_meta_axis(one));
        if (semi == std::string_view::npos) break;
        start = semi + 1;
      }
    } else if (token.rfind("flavor=", 0) == 0) {
      const std::string_view flavor = std::string_view(token).substr(7);
      if (flavor == "rowids") {
        grid.output_flavor = OutputFlavor::kRowIds;
      } else if (flavor == "rows") {
        grid.output_flavor = OutputFlavor::kRows;
      } else {
        throw ValidationError("unrecognized flavor in surface metadata");
      }
    } else {
      throw ValidationError("unrecognized surface metadata token: " + token);
    }
  }
  if (grid.axes.empty()) {
    throw ValidationError("surface metadata is missing axes");
  }
}

}  // namespace

std::string write_surface_csv(const CostSurface& surface) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "# robmap-surface axes=";
  for (std::size_t i = 0; i < surface.grid.axes.size(); ++i) {
    const AxisSpec& axis = surface.grid.axes[i];
    if (i) os << ";";
    os << dimension_name(axis.dimension) << ":" << axis.exponent_min << ":" << axis.exponent_max
       << ":" << axis.step;
  }
  os << " flavor="
     << (surface.grid.output_flavor == OutputFlavor::kRowIds ? "rowids" : "rows") << "\n";
  os << kSurfaceCsvHeader << "\n";

  const bool two_d = surface.dims() == 2;
  for (std::size_t p = 0; p < surface.point_count(); ++p) {
    for (const auto& s : surface.series) {
      os << surface.points[p][0] << ",";
      if (two_d) os << surface.points[p][1];
      os << "," << plan_name(s.plan) << "," << s.cost[p] << "," << s.rand_pages[p] << ","
         << s.seq_pages[p] << "," << s.scratch_read[p] << "," << s.scratch_write[p] << ","
         << s.rows_examined[p] << "," << s.result_count[p] << "," << s.result_checksum[p]
         << "\n";
    }
  }
  return os.str();
}

CostSurface read_surface_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;

  GridSpec grid;
  bool have_meta = false;
  if (!std::getline(in, line)) throw ValidationError("empty surface CSV");
  if (!line.empty() && line[0] == '#') {
    parse_meta_line(line, grid);
    have_meta = true;
    if (!std::getline(in, line)) throw ValidationError("surface CSV is missing its header");
  }
  if (line != kSurfaceCsvHeader) {
    throw ValidationError("surface CSV header mismatch");
  }

  std::vector<CsvRow> rows;
  bool two_d = false;
  bool first_row = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 11) {
      throw ValidationError("surface CSV row has " + std::to_string(fields.size()) +
                            " fields, expected 11");
    }
    const bool row_two_d = !fields[1].empty();
    if (first_row) {
      two_d = row_two_d;
      first_row = false;
    } else if (row_two_d != two_d) {
      throw ValidationError("surface CSV mixes 1-D and 2-D rows");
    }
    CsvRow row;
    row.point[0] = static_cast<std::uint32_t>(parse_u64(fields[0], "axis1_exp"));
    row.point[1] = row_two_d ? static_cast<std::uint32_t>(parse_u64(fields[1], "axis2_exp")) : 0;
    const auto plan = plan_from_name(fields[2]);
    if (!plan.has_value()) {
      throw ValidationError("unknown plan name '" + std::string(fields[2]) + "'");
    }
    row.plan = *plan;
    static constexpr const char* kNames[8] = {
        "cost_units",    "rand_pages",    "seq_pages",    "scratch_read",
        "scratch_write", "rows_examined", "result_count", "result_checksum"};
    for (std::size_t k = 0; k < 8; ++k) {
      row.values[k] = parse_u64(fields[3 + k], kNames[k]);
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw ValidationError("surface CSV has no data rows");

  std::set<GridPoint> point_set;
  std::set<PlanId> plan_set;
  std::set<std::pair<GridPoint, PlanId>> seen;
  for (const CsvRow& row : rows) {
    point_set.insert(row.point);
    plan_set.insert(row.plan);
    if (!seen.insert({row.point, row.plan}).second) {
      throw ValidationError("duplicate (point, plan) row for plan " +
                            std::string(plan_name(row.plan)));
    }
  }
  if (rows.size() != point_set.size() * plan_set.size()) {
    throw ValidationError("surface CSV is missing (point, plan) rows");
  }

  CostSurface surface;
  surface.points.assign(point_set.begin(), point_set.end());

  if (have_meta) {
    if (grid.axes.size() != (two_d ? 2u : 1u)) {
      throw ValidationError("surface metadata axis count disagrees with the data");
    }
  } else {
    // No metadata: reconstruct axes canonically, axis1 = a, axis2 = b.
    grid.axes.clear();
    std::set<std::uint32_t> e0, e1;
    for (const GridPoint& pt : point_set) {
      e0.insert(pt[0]);
      if (two_d) e1.insert(pt[1]);
    }
    auto infer = [](const std::set<std::uint32_t>& exps, Dimension dim) {
      AxisSpec axis;
      axis.dimension = dim;
      axis.exponent_min = *exps.begin();
      axis.exponent_max = *exps.rbegin();
      axis.step = exps.size() > 1 ? (axis.exponent_max - axis.exponent_min) /
                                        static_cast<std::uint32_t>(exps.size() - 1)
                                  : 1;
      return axis;
    };
    grid.axes.push_back(infer(e0, Dimension::kA));
    if (two_d) grid.axes.push_back(infer(e1, Dimension::kB));
  }

  // The stored points must be exactly the grid the axes describe.
  std::vector<GridPoint> expected;
  {
    const auto first = grid.axes[0].exponents();
    if (grid.axes.size() == 1) {
      for (auto e : first) expected.push_back(GridPoint{e, 0});
    } else {
      for (auto e0 : first) {
        for (auto e1 : grid.axes[1].exponents()) expected.push_back(GridPoint{e0, e1});
      }
    }
  }
  if (expected != surface.points) {
    throw ValidationError("surface CSV points do not form the declared grid");
  }

  std::map<GridPoint, std::size_t> point_index;
  for (std::size_t i = 0; i < surface.points.size(); ++i) point_index[surface.points[i]] = i;

  std::vector<PlanId> plans(plan_set.begin(), plan_set.end());
  std::sort(plans.begin(), plans.end(),
            [](PlanId a, PlanId b) { return plan_name(a) < plan_name(b); });
  grid.plans = plans;
  surface.grid = grid;

  const std::size_t n = surface.points.size();
  std::map<PlanId, std::size_t> series_index;
  for (PlanId p : plans) {
    CostSurface::PlanSeries s;
    s.plan = p;
    s.cost.resize(n);
    s.rand_pages.resize(n);
    s.seq_pages.resize(n);
    s.scratch_read.resize(n);
    s.scratch_write.resize(n);
    s.rows_examined.resize(n);
    s.result_count.resize(n);
    s.result_checksum.resize(n);
    series_index[p] = surface.series.size();
    surface.series.push_back(std::move(s));
  }
  for (const CsvRow& row : rows) {
    auto& s = surface.series[series_index[row.plan]];
    const std::size_t p = point_index[row.point];
    s.cost[p] = row.values[0];
    s.rand_pages[p] = row.values[1];
    s.seq_pages[p] = row.values[2];
    s.scratch_read[p] = row.values[3];
    s.scratch_write[p] = row.values[4];
    s.rows_examined[p] = row.values[5];
    s.result_count[p] = row.values[6];
    s.result_checksum[p] = row.values[7];
  }
  return surface;
}

}  // namespace robmap
