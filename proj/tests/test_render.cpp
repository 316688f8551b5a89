#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "fixtures.hpp"
#include "robmap/render.hpp"

using namespace robmap;
using robmap::testing::TestRng;

namespace {

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

std::vector<std::string> labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace

TEST_CASE("bucket_absolute decades") {
  CHECK(bucket_absolute(4, 4) == 0);
  CHECK(bucket_absolute(890, 4) == 2);   // 4s..890s span buckets 0..2
  CHECK(bucket_absolute(5000, 4) == 3);  // floor(log10 1250) = 3
  CHECK(bucket_absolute(39, 4) == 0);
  CHECK(bucket_absolute(40, 4) == 1);  // decade boundaries are exact
  CHECK(bucket_absolute(4'000'000'000ULL, 4) == 5);

  CHECK_THROWS_AS(bucket_absolute(3, 4), ValidationError);
  CHECK_THROWS_AS(bucket_absolute(1, 0), ValidationError);
}

TEST_CASE("bucket_relative decades") {
  CHECK(bucket_relative(1.0) == 0);
  CHECK(bucket_relative(101000.0) == 5);  // the worst measured quotient class
  CHECK(bucket_relative(99.0) == 1);
  CHECK(bucket_relative(100.0) == 2);
  CHECK(bucket_relative(1e9) == 5);
  CHECK_THROWS_AS(bucket_relative(0.99), ValidationError);
}

TEST_CASE("buckets are monotone and clamped") {
  TestRng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const Cost ref = 1 + rng.below(1000);
    const Cost c1 = ref + rng.below(1 << 30);
    const Cost c2 = c1 + rng.below(1 << 30);
    const int b1 = bucket_absolute(c1, ref);
    const int b2 = bucket_absolute(c2, ref);
    CHECK(b1 <= b2);
    CHECK(b1 >= 0);
    CHECK(b2 <= 5);
  }
}

TEST_CASE("curve svg structure and determinism") {
  RenderSpec spec;
  {
    Curve flat{"TableScan", {16., 32., 64.}, {13, 13, 13}};
    const std::string svg = render_curves_svg({flat}, spec);
    CHECK(count_occurrences(svg, "<polyline") == 1);
    CHECK(render_curves_svg({flat}, spec) == svg);
  }
  {
    Curve scan{"TableScan", {16., 32., 64.}, {100, 100, 100}};
    Curve trad{"TradIndexA", {16., 32., 64.}, {20, 40, 400}};
    Curve improved{"ImprovedIndexA", {16., 32., 64.}, {20, 39, 110}};
    const std::string svg = render_curves_svg({scan, trad, improved}, spec);
    CHECK(count_occurrences(svg, "<polyline") == 3);
    CHECK(count_occurrences(svg, "class=\"legend-label\"") == 3);
    CHECK(svg.find("TradIndexA") != std::string::npos);
  }
  {
    CHECK_THROWS_AS(render_curves_svg({}, spec), ValidationError);
    Curve zero{"x", {1., 2.}, {0, 5}};
    CHECK_THROWS_AS(render_curves_svg({zero}, spec), ValidationError);
    Curve mismatched{"y", {1., 3.}, {5, 5}};
    Curve base{"x", {1., 2.}, {5, 5}};
    CHECK_THROWS_AS(render_curves_svg({base, mismatched}, spec), ValidationError);
  }
}

TEST_CASE("absolute heatmap structure") {
  RenderSpec spec;
  {
    const std::vector<std::vector<Cost>> m = {{4, 40}, {400, 4000}};
    const std::string svg = render_heatmap_svg(m, labels(2), labels(2), spec);
    CHECK(count_occurrences(svg, "class=\"cell\"") == 4);
    CHECK(count_occurrences(svg, "class=\"legend\"") == 6);
    CHECK(render_heatmap_svg(m, labels(2), labels(2), spec) == svg);
  }
  {
    // All-equal costs land in bucket 0, the green anchor color.
    const std::vector<std::vector<Cost>> m = {{7, 7}, {7, 7}};
    const std::string svg = render_heatmap_svg(m, labels(2), labels(2), spec);
    CHECK(count_occurrences(svg, "class=\"cell\"") == 4);
    CHECK(count_occurrences(svg, "fill=\"#1a9850\"") >= 4);
  }
  {
    // A six-decade span shows every palette color in the cells.
    const std::vector<std::vector<Cost>> m = {
        {1, 10, 100}, {1000, 10000, 100000}, {1, 10, 100}};
    const std::string svg = render_heatmap_svg(m, labels(3), labels(3), spec);
    for (std::string_view color : kCostPalette) {
      CHECK(svg.find(std::string("fill=\"") + std::string(color) + "\"") != std::string::npos);
    }
  }
  {
    CHECK_THROWS_AS(render_heatmap_svg(std::vector<std::vector<Cost>>{}, labels(0), labels(0),
                                       spec),
                    ValidationError);
    const std::vector<std::vector<Cost>> ragged = {{1, 2}, {3}};
    CHECK_THROWS_AS(render_heatmap_svg(ragged, labels(2), labels(2), spec), ValidationError);
  }
}

TEST_CASE("relative heatmap buckets quotients") {
  RenderSpec spec;
  const std::vector<std::vector<double>> q = {{1.0, 9.0}, {11.0, 200000.0}};
  const std::string svg = render_heatmap_svg(q, labels(2), labels(2), spec);
  CHECK(count_occurrences(svg, "class=\"cell\"") == 4);
  CHECK(svg.find("fill=\"#1a9850\"") != std::string::npos);  // quotient 1
  CHECK(svg.find("fill=\"#000000\"") != std::string::npos);  // >= 1e5
  CHECK(render_heatmap_svg(q, labels(2), labels(2), spec) == svg);
}

TEST_CASE("optimality map shades by count") {
  RenderSpec spec;
  {
    const std::vector<std::vector<std::uint32_t>> counts = {{1, 1}, {1, 1}};
    const std::string svg = render_optimality_svg(counts, labels(2), labels(2), spec);
    CHECK(count_occurrences(svg, "fill=\"#f7f7f7\"") >= 4);  // uniform lightest shade
  }
  {
    const std::vector<std::vector<std::uint32_t>> counts = {{1, 2}, {2, 1}};
    const std::string svg = render_optimality_svg(counts, labels(2), labels(2), spec);
    CHECK(svg.find("fill=\"#f7f7f7\"") != std::string::npos);
    CHECK(svg.find("fill=\"#d9d9d9\"") != std::string::npos);
    CHECK(render_optimality_svg(counts, labels(2), labels(2), spec) == svg);
  }
  {
    const std::vector<std::vector<std::uint32_t>> counts = {{9, 1}};
    const std::string svg = render_optimality_svg(counts, labels(1), labels(2), spec);
    CHECK(svg.find("fill=\"#252525\"") != std::string::npos);  // 6+ clamps to darkest
  }
  {
    const std::vector<std::vector<std::uint32_t>> zero = {{0}};
    CHECK_THROWS_AS(render_optimality_svg(zero, labels(1), labels(1), spec), ValidationError);
  }
}
