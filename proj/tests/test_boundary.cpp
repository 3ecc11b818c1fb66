#include <doctest.h>

#include <map>

#include "floodsight/common/rng.hpp"
#include "floodsight/flood/extent.hpp"
#include "floodsight/geo/boundary.hpp"

using namespace floodsight;

namespace {

DamageMask mask_from_rows(const std::vector<std::string>& rows) {
  DamageMask m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x) m.at(y, x) = static_cast<std::uint8_t>(rows[y][x] - '0');
  return m;
}

}  // namespace

TEST_CASE("all-background mask yields no boundaries") {
  DamageMask m(8, 8);
  const FloodExtent e = extract_flood_extent(m, 1);
  CHECK(e.boundaries.empty());
  CHECK(e.water_pixels == 0);
}

TEST_CASE("a square region yields one closed rectangular boundary") {
  DamageMask m(16, 16);
  for (int y = 3; y < 13; ++y)
    for (int x = 2; x < 12; ++x) m.at(y, x) = 1;

  const FloodExtent e = extract_flood_extent(m, 1);
  REQUIRE(e.loops.size() == 1);
  CHECK(e.loops[0].vertices.size() == 40);  // perimeter in pixel edges
  CHECK(e.enclosed_pixel_total() == doctest::Approx(100.0));
  CHECK(e.water_pixels == 100);
  // geo polyline is closed
  const auto& line = e.boundaries[0];
  CHECK(line.front().x == line.back().x);
  CHECK(line.front().y == line.back().y);
}

TEST_CASE("two disjoint regions yield two disjoint closed loops") {
  DamageMask m = mask_from_rows({
      "0000000",
      "0110000",
      "0110000",
      "0000110",
      "0000110",
      "0000000",
  });
  const FloodExtent e = extract_flood_extent(m, 1);
  CHECK(e.loops.size() == 2);
  CHECK(e.enclosed_pixel_total() == doctest::Approx(8.0));
}

TEST_CASE("diagonally touching pixels trace as separate loops") {
  DamageMask m = mask_from_rows({
      "10",
      "01",
  });
  const FloodExtent e = extract_flood_extent(m, 1);
  CHECK(e.loops.size() == 2);
  CHECK(e.enclosed_pixel_total() == doctest::Approx(2.0));
}

TEST_CASE("holes are traced with opposite orientation") {
  DamageMask m = mask_from_rows({
      "11111",
      "10001",
      "10101",
      "10001",
      "11111",
  });
  // Ring of 1s with a hole containing an island.
  const FloodExtent e = extract_flood_extent(m, 1);
  CHECK(e.loops.size() == 3);  // outer, hole, island
  CHECK(e.enclosed_pixel_total() == doctest::Approx(static_cast<double>(e.water_pixels)));
}

TEST_CASE("enclosed area equals region pixel count on random masks") {
  Rng rng(211);
  for (int trial = 0; trial < 30; ++trial) {
    const int h = rng.uniform_int(1, 24);
    const int w = rng.uniform_int(1, 24);
    DamageMask m(h, w);
    std::int64_t count = 0;
    for (auto& v : m.values) {
      v = rng.uniform() < 0.45 ? 1 : 0;
      count += v;
    }
    const FloodExtent e = extract_flood_extent(m, 1);
    CHECK(e.enclosed_pixel_total() == doctest::Approx(static_cast<double>(count)));
    // each loop is a closed cycle; a corner may be visited at most twice
    // (where one region touches itself diagonally)
    for (const BoundaryLoop& loop : e.loops) {
      std::map<std::pair<int, int>, int> visits;
      for (const auto& v : loop.vertices) ++visits[v];
      for (const auto& [v, n] : visits) CHECK(n <= 2);
      CHECK(loop.vertices.size() >= 4);
    }
  }
}

TEST_CASE("flood line geojson is a feature collection of linestrings") {
  DamageMask m(4, 4, {10.0, 20.0, 0.5, -0.5});
  m.at(1, 1) = 1;
  m.at(1, 2) = 1;
  const FloodExtent e = extract_flood_extent(m, 1);
  const std::string js = flood_boundaries_to_geojson(e);
  CHECK(js.find("FeatureCollection") != std::string::npos);
  CHECK(js.find("LineString") != std::string::npos);
  // vertex (1,1) in pixel corners -> geo (10.5, 19.5)
  CHECK(js.find("10.5") != std::string::npos);
  CHECK(js.find("19.5") != std::string::npos);
}
