#include "robmap/render.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace robmap {

namespace {

// All fractional coordinates use fixed three-decimal formatting so output
// bytes never depend on locale or shortest-repr rounding.
std::string fixed3(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::fixed << std::setprecision(3) << v;
  return os.str();
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr std::array<std::string_view, 8> kCurveColors = {
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
};

void open_svg(std::ostringstream& os, int width, int height) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 " << width
     << " " << height << "\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"monospace\" font-size=\"11\">\n";
}

struct HeatmapLayout {
  int left = 64;
  int top = 36;
  int label_h = 18;
  int legend_h = 0;
  int width = 0;
  int height = 0;
};

// Shared cell/label/legend emitter; only the bucket->color mapping and
// legend text differ between map kinds.
std::string emit_grid_svg(const std::vector<std::vector<int>>& buckets,
                          const std::array<std::string_view, 6>& palette,
                          const std::vector<std::string>& legend_labels,
                          const std::vector<std::string>& axis1_labels,
                          const std::vector<std::string>& axis2_labels, const RenderSpec& spec) {
  const std::size_t n1 = buckets.size();
  const std::size_t n2 = buckets[0].size();
  const int cell = spec.cell_size;

  HeatmapLayout l;
  l.legend_h = spec.legend ? 40 : 0;
  l.width = l.left + static_cast<int>(n1) * cell + 24;
  l.height = l.top + static_cast<int>(n2) * cell + l.label_h + l.legend_h + 16;
  l.width = std::max(l.width, 40 + 6 * 88);  // room for the legend row

  std::ostringstream os;
  os.imbue(std::locale::classic());
  open_svg(os, l.width, l.height);
  if (!spec.title.empty()) {
    os << "  <text x=\"" << l.left << "\" y=\"16\">" << xml_escape(spec.title) << "</text>\n";
  }

  // Cells, row-major over axis1 then axis2.
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      const int x = l.left + static_cast<int>(i) * cell;
      const int y = l.top + static_cast<int>(j) * cell;
      os << "  <rect class=\"cell\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell
         << "\" height=\"" << cell << "\" fill=\"" << palette[buckets[i][j]] << "\"/>\n";
    }
  }

  // Axis labels: axis1 along the bottom, axis2 down the left edge.
  const int grid_bottom = l.top + static_cast<int>(n2) * cell;
  for (std::size_t i = 0; i < n1; ++i) {
    os << "  <text class=\"xlabel\" x=\"" << (l.left + static_cast<int>(i) * cell + cell / 2)
       << "\" y=\"" << (grid_bottom + 13) << "\" text-anchor=\"middle\">"
       << xml_escape(axis1_labels[i]) << "</text>\n";
  }
  for (std::size_t j = 0; j < n2; ++j) {
    os << "  <text class=\"ylabel\" x=\"" << (l.left - 6) << "\" y=\""
       << (l.top + static_cast<int>(j) * cell + cell / 2 + 4) << "\" text-anchor=\"end\">"
       << xml_escape(axis2_labels[j]) << "</text>\n";
  }
  os << "  <text x=\"" << (l.left + static_cast<int>(n1) * cell / 2) << "\" y=\""
     << (grid_bottom + l.label_h + 10) << "\" text-anchor=\"middle\">"
     << xml_escape(spec.axis1_name) << "</text>\n";
  os << "  <text x=\"12\" y=\"" << (l.top - 8) << "\">" << xml_escape(spec.axis2_name)
     << "</text>\n";

  if (spec.legend) {
    const int ly = grid_bottom + l.label_h + 20;
    for (std::size_t b = 0; b < palette.size(); ++b) {
      const int lx = 40 + static_cast<int>(b) * 88;
      os << "  <rect class=\"legend\" x=\"" << lx << "\" y=\"" << ly
         << "\" width=\"14\" height=\"14\" fill=\"" << palette[b] << "\"/>\n";
      os << "  <text class=\"legend-label\" x=\"" << (lx + 18) << "\" y=\"" << (ly + 11) << "\">"
         << xml_escape(legend_labels[b]) << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

template <typename T>
void require_rectangular(const std::vector<std::vector<T>>& matrix,
                         const std::vector<std::string>& axis1_labels,
                         const std::vector<std::string>& axis2_labels) {
  if (matrix.empty() || matrix[0].empty()) {
    throw ValidationError("heatmap matrix must be non-empty");
  }
  for (const auto& col : matrix) {
    if (col.size() != matrix[0].size()) {
      throw ValidationError("heatmap matrix must be rectangular");
    }
  }
  if (axis1_labels.size() != matrix.size() || axis2_labels.size() != matrix[0].size()) {
    throw ValidationError("heatmap label counts must match the matrix");
  }
}

}  // namespace

int bucket_absolute(Cost cost, Cost reference_min) {
  if (reference_min == 0 || cost < reference_min) {
    throw ValidationError("bucket_absolute requires cost >= reference_min > 0");
  }
  int bucket = 0;
  Cost threshold = reference_min;
  while (bucket < 5) {
    if (threshold > std::numeric_limits<Cost>::max() / 10) break;
    threshold *= 10;
    if (cost < threshold) break;
    ++bucket;
  }
  return bucket;
}

int bucket_relative(double quotient) {
  if (!(quotient >= 1.0)) {
    throw ValidationError("bucket_relative requires quotient >= 1");
  }
  static constexpr double kDecades[6] = {1.0, 10.0, 100.0, 1000.0, 10000.0, 100000.0};
  int bucket = 0;
  while (bucket < 5 && quotient >= kDecades[bucket + 1]) ++bucket;
  return bucket;
}

std::string render_curves_svg(const std::vector<Curve>& curves, const RenderSpec& spec) {
  if (curves.empty()) throw ValidationError("render_curves_svg needs at least one curve");
  const std::vector<double>& params = curves[0].params;
  if (params.size() < 1) throw ValidationError("curves need at least one point");
  for (const Curve& c : curves) {
    if (c.params != params) throw ValidationError("curves must share their params");
    if (c.costs.size() != params.size()) throw ValidationError("curve size mismatch");
    for (Cost v : c.costs) {
      if (v == 0) throw ValidationError("curve costs must be > 0 for a log scale");
    }
  }
  for (double p : params) {
    if (!(p > 0)) throw ValidationError("curve params must be > 0 for a log scale");
  }

  // Plot in (log2 param, log10 cost) space.
  double x_min = std::log2(params.front()), x_max = std::log2(params.back());
  double y_min = std::numeric_limits<double>::infinity(), y_max = 0.0;
  for (const Curve& c : curves) {
    for (Cost v : c.costs) {
      const double y = std::log10(static_cast<double>(v));
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= y_min) y_max = y_min + 1.0;

  const int plot_w = 480, plot_h = 300, left = 64, top = 24;
  const int width = left + plot_w + 180;
  const int height = top + plot_h + 48;
  auto map_x = [&](double p) {
    return left + (std::log2(p) - x_min) / (x_max - x_min) * plot_w;
  };
  auto map_y = [&](Cost c) {
    const double y = std::log10(static_cast<double>(c));
    return top + (y_max - y) / (y_max - y_min) * plot_h;
  };

  std::ostringstream os;
  os.imbue(std::locale::classic());
  open_svg(os, width, height);
  if (!spec.title.empty()) {
    os << "  <text x=\"" << left << "\" y=\"14\">" << xml_escape(spec.title) << "</text>\n";
  }
  os << "  <rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
     << plot_h << "\" fill=\"none\" stroke=\"#333333\"/>\n";

  // Decade gridlines on the cost axis.
  for (int d = static_cast<int>(std::ceil(y_min)); d <= static_cast<int>(std::floor(y_max));
       ++d) {
    const double gy = top + (y_max - d) / (y_max - y_min) * plot_h;
    os << "  <line x1=\"" << left << "\" y1=\"" << fixed3(gy) << "\" x2=\"" << (left + plot_w)
       << "\" y2=\"" << fixed3(gy) << "\" stroke=\"#dddddd\"/>\n";
    os << "  <text x=\"" << (left - 6) << "\" y=\"" << fixed3(gy + 4)
       << "\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  // Param endpoints on the x axis (log2 values).
  os << "  <text x=\"" << left << "\" y=\"" << (top + plot_h + 16)
     << "\" text-anchor=\"middle\">2^" << fixed3(x_min) << "</text>\n";
  os << "  <text x=\"" << (left + plot_w) << "\" y=\"" << (top + plot_h + 16)
     << "\" text-anchor=\"middle\">2^" << fixed3(x_max) << "</text>\n";
  os << "  <text x=\"" << (left + plot_w / 2) << "\" y=\"" << (top + plot_h + 34)
     << "\" text-anchor=\"middle\">" << xml_escape(spec.axis1_name) << "</text>\n";

  for (std::size_t k = 0; k < curves.size(); ++k) {
    const std::string_view color = kCurveColors[k % kCurveColors.size()];
    os << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i) os << " ";
      os << fixed3(map_x(params[i])) << "," << fixed3(map_y(curves[k].costs[i]));
    }
    os << "\"/>\n";
    const int ly = top + 12 + static_cast<int>(k) * 18;
    os << "  <rect class=\"legend\" x=\"" << (left + plot_w + 16) << "\" y=\"" << (ly - 9)
       << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n";
    os << "  <text class=\"legend-label\" x=\"" << (left + plot_w + 32) << "\" y=\"" << (ly + 1)
       << "\">" << xml_escape(curves[k].name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_heatmap_svg(const std::vector<std::vector<Cost>>& matrix,
                               const std::vector<std::string>& axis1_labels,
                               const std::vector<std::string>& axis2_labels,
                               const RenderSpec& spec) {
  require_rectangular(matrix, axis1_labels, axis2_labels);
  Cost ref = std::numeric_limits<Cost>::max();
  for (const auto& col : matrix) {
    for (Cost c : col) ref = std::min(ref, c);
  }
  std::vector<std::vector<int>> buckets(matrix.size(),
                                        std::vector<int>(matrix[0].size(), 0));
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = 0; j < matrix[i].size(); ++j) {
      buckets[i][j] = bucket_absolute(matrix[i][j], ref);
    }
  }
  std::vector<std::string> legend;
  for (int b = 0; b < 6; ++b) {
    legend.push_back(b < 5 ? "1e" + std::to_string(b) + "-1e" + std::to_string(b + 1) + " x min"
                           : ">=1e5 x min");
  }
  return emit_grid_svg(buckets, kCostPalette, legend, axis1_labels, axis2_labels, spec);
}

std::string render_heatmap_svg(const std::vector<std::vector<double>>& quotients,
                               const std::vector<std::string>& axis1_labels,
                               const std::vector<std::string>& axis2_labels,
                               const RenderSpec& spec) {
  require_rectangular(quotients, axis1_labels, axis2_labels);
  std::vector<std::vector<int>> buckets(quotients.size(),
                                        std::vector<int>(quotients[0].size(), 0));
  for (std::size_t i = 0; i < quotients.size(); ++i) {
    for (std::size_t j = 0; j < quotients[i].size(); ++j) {
      buckets[i][j] = bucket_relative(quotients[i][j]);
    }
  }
  std::vector<std::string> legend;
  for (int b = 0; b < 6; ++b) {
    legend.push_back(b < 5 ? "1e" + std::to_string(b) + "-1e" + std::to_string(b + 1) + " x best"
                           : ">=1e5 x best");
  }
  return emit_grid_svg(buckets, kCostPalette, legend, axis1_labels, axis2_labels, spec);
}

std::string render_optimality_svg(const std::vector<std::vector<std::uint32_t>>& counts,
                                  const std::vector<std::string>& axis1_labels,
                                  const std::vector<std::string>& axis2_labels,
                                  const RenderSpec& spec) {
  require_rectangular(counts, axis1_labels, axis2_labels);
  std::vector<std::vector<int>> buckets(counts.size(), std::vector<int>(counts[0].size(), 0));
  for (std::size_t i = 0; i < counts.size(); ++i) {
    for (std::size_t j = 0; j < counts[i].size(); ++j) {
      if (counts[i][j] == 0) {
        throw ValidationError("optimal-plan counts must be >= 1");
      }
      buckets[i][j] = static_cast<int>(std::min<std::uint32_t>(counts[i][j] - 1, 5));
    }
  }
  const std::vector<std::string> legend = {"1", "2", "3", "4", "5", "6+"};
  return emit_grid_svg(buckets, kCountPalette, legend, axis1_labels, axis2_labels, spec);
}

}  // namespace robmap
