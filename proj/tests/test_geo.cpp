#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "floodsight/common/rng.hpp"
#include "floodsight/geo/align.hpp"
#include "floodsight/geo/augment.hpp"
#include "floodsight/geo/stats.hpp"
#include "floodsight/geo/tiling.hpp"

using namespace floodsight;

namespace {

GeoRaster random_raster(Rng& rng, int h, int w, int c = 1) {
  std::vector<std::string> names;
  if (c == 3)
    names = {"R", "G", "B"};
  else if (c == 4)
    names = {"R", "G", "B", "HAND"};
  else
    for (int i = 0; i < c; ++i) names.push_back("C" + std::to_string(i));
  GeoRaster r(h, w, c, names, {-95.0, 30.0, 1e-4, -1e-4}, "EPSG:4326");
  for (double& v : r.data) v = rng.uniform(-10.0, 10.0);
  return r;
}

bool rasters_equal(const GeoRaster& a, const GeoRaster& b) {
  return a.height == b.height && a.width == b.width && a.channels == b.channels && a.data == b.data;
}

}  // namespace

TEST_CASE("pixel/geo mapping inverts to within 1e-9 of a pixel") {
  GeoTransform gt{-95.123, 29.876, 3.25e-5, -3.25e-5};
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const double col = rng.uniform(0.0, 5000.0);
    const double row = rng.uniform(0.0, 5000.0);
    const GeoPoint g = gt.pixel_to_geo(col, row);
    const GeoPoint p = gt.geo_to_pixel(g.x, g.y);
    CHECK(std::fabs(p.x - col) < 1e-9 * std::max(1.0, col));
    CHECK(std::fabs(p.y - row) < 1e-9 * std::max(1.0, row));
  }
  CHECK(gt.pixel_to_geo(0, 0).x == gt.origin_x);
  CHECK(gt.pixel_to_geo(0, 0).y == gt.origin_y);
}

TEST_CASE("tile grid shape is ceiling division") {
  const TileGridShape s = tile_grid_shape(9351, 9351, 1024);
  CHECK(s.rows == 10);
  CHECK(s.cols == 10);
  CHECK(s.count() == 100);
  CHECK(tile_grid_shape(1024, 1024, 1024).count() == 1);
  CHECK(tile_grid_shape(1, 1, 1024).count() == 1);
  CHECK_THROWS_AS(tile_grid_shape(0, 5, 4), InvalidInputError);
  CHECK_THROWS_AS(tile_grid_shape(5, 5, 0), InvalidInputError);
}

TEST_CASE("exact-fit source produces a single unpadded tile") {
  Rng rng(11);
  const GeoRaster src = random_raster(rng, 1024, 1024, 1);
  const TileSet ts = tile_raster(src, 1024, -1.0);
  REQUIRE(ts.tiles.size() == 1);
  CHECK(rasters_equal(ts.tiles[0], src));
  CHECK(rasters_equal(reassemble(ts), src));
}

TEST_CASE("wide source pads edge tiles at the bottom") {
  Rng rng(13);
  const GeoRaster src = random_raster(rng, 1000, 2048, 1);
  const TileSet ts = tile_raster(src, 1024, 0.5);
  CHECK(ts.rows == 1);
  CHECK(ts.cols == 2);
  for (const GeoRaster& t : ts.tiles) {
    for (int y = 1000; y < 1024; ++y)
      for (int x = 0; x < 1024; x += 97) CHECK(t.at(0, y, x) == 0.5);
  }
  CHECK(rasters_equal(reassemble(ts), src));
}

TEST_CASE("tile/reassemble round-trips random shapes exactly") {
  Rng rng(17);
  for (int trial = 0; trial < 12; ++trial) {
    const int h = rng.uniform_int(1, 300);
    const int w = rng.uniform_int(1, 300);
    const int t = rng.uniform_int(1, 80);
    const int c = rng.uniform_int(1, 3);
    GeoRaster src = random_raster(rng, h, w, c);
    const TileSet ts = tile_raster(src, t, 0.0);
    CHECK(ts.rows == (h + t - 1) / t);
    CHECK(ts.cols == (w + t - 1) / t);
    CHECK(rasters_equal(reassemble(ts), src));
  }
}

TEST_CASE("tile geotransforms carry each tile's offset") {
  Rng rng(19);
  const GeoRaster src = random_raster(rng, 100, 130, 1);
  const TileSet ts = tile_raster(src, 64, 0.0);
  const GeoRaster& t01 = ts.tile(0, 1);
  const GeoPoint expect = src.transform.pixel_to_geo(64, 0);
  CHECK(t01.transform.origin_x == doctest::Approx(expect.x).epsilon(1e-12));
  CHECK(t01.transform.origin_y == doctest::Approx(expect.y).epsilon(1e-12));
}

TEST_CASE("hand on an identical grid stacks bit-exactly") {
  Rng rng(23);
  const GeoRaster rgb = random_raster(rng, 32, 32, 3);
  GeoRaster hand = random_raster(rng, 32, 32, 1);
  hand.transform = rgb.transform;
  hand.channel_names = {"HAND"};

  for (Resampling mode : {Resampling::kNearest, Resampling::kBilinear}) {
    const GeoRaster out = align_and_stack_hand(rgb, hand, mode);
    REQUIRE(out.channels == 4);
    CHECK(out.channel_names[3] == "HAND");
    CHECK(out.transform.almost_equal(rgb.transform));
    for (int y = 0; y < 32; ++y)
      for (int x = 0; x < 32; ++x) CHECK(out.at(3, y, x) == hand.at(0, y, x));
  }
}

TEST_CASE("coarse hand replicates in 2x2 blocks under nearest resampling") {
  GeoTransform fine{0.0, 0.0, 1.0, -1.0};
  GeoRaster rgb(4, 4, 3, {"R", "G", "B"}, fine, "EPSG:4326");
  GeoRaster hand(2, 2, 1, {"HAND"}, {0.0, 0.0, 2.0, -2.0}, "EPSG:4326");
  hand.at(0, 0, 0) = 1.0;
  hand.at(0, 0, 1) = 2.0;
  hand.at(0, 1, 0) = 3.0;
  hand.at(0, 1, 1) = 4.0;

  const GeoRaster out = align_and_stack_hand(rgb, hand, Resampling::kNearest);
  const double expect[4][4] = {{1, 1, 2, 2}, {1, 1, 2, 2}, {3, 3, 4, 4}, {3, 3, 4, 4}};
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) CHECK(out.at(3, y, x) == expect[y][x]);
}

TEST_CASE("disjoint extents raise an alignment error") {
  Rng rng(29);
  const GeoRaster rgb = random_raster(rng, 8, 8, 3);
  GeoRaster hand = random_raster(rng, 8, 8, 1);
  hand.transform.origin_x += 10.0;  // far away
  CHECK_THROWS_AS(align_and_stack_hand(rgb, hand), AlignmentError);

  GeoRaster no_crs = random_raster(rng, 8, 8, 1);
  no_crs.transform = rgb.transform;
  no_crs.crs.clear();
  CHECK_THROWS_AS(align_and_stack_hand(rgb, no_crs), InvalidInputError);
}

TEST_CASE("normalizing a constant channel with matching mean yields zeros") {
  GeoRaster tile(4, 4, 3, {"R", "G", "B"});
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < tile.plane_size(); ++i) tile.plane(c)[i] = 2.5;
  ChannelStats stats;
  stats.rgb = {{{2.5, 1.0}, {2.5, 2.0}, {2.5, 0.5}}};
  const GeoRaster out = normalize(tile, stats);
  for (const double v : out.data) CHECK(v == 0.0);
}

TEST_CASE("normalize/denormalize round-trips within 1e-6 relative") {
  Rng rng(31);
  GeoRaster tile = random_raster(rng, 16, 16, 4);
  ChannelStats stats;
  stats.rgb = {{{0.3, 0.2}, {-0.4, 1.7}, {5.0, 3.1}}};
  stats.hand = ChannelStat{12.0, 7.5};
  const GeoRaster back = denormalize(normalize(tile, stats), stats);
  for (std::size_t i = 0; i < tile.data.size(); ++i)
    CHECK(back.data[i] == doctest::Approx(tile.data[i]).epsilon(1e-6));
}

TEST_CASE("rgb stats do not leak into the hand channel") {
  Rng rng(37);
  GeoRaster tile = random_raster(rng, 8, 8, 4);
  ChannelStats a, b;
  a.rgb = {{{0.1, 1.0}, {0.2, 1.1}, {0.3, 1.2}}};
  a.hand = ChannelStat{3.0, 2.0};
  b = a;
  b.rgb = {{{-5.0, 0.3}, {9.9, 4.2}, {1.0, 0.01}}};  // perturbed rgb group only

  const GeoRaster na = normalize(tile, a);
  const GeoRaster nb = normalize(tile, b);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) CHECK(na.at(3, y, x) == nb.at(3, y, x));
}

TEST_CASE("zero std is rejected") {
  Rng rng(41);
  const GeoRaster tile = random_raster(rng, 4, 4, 3);
  ChannelStats stats;
  stats.rgb = {{{0.0, 1.0}, {0.0, 0.0}, {0.0, 1.0}}};
  CHECK_THROWS_AS(normalize(tile, stats), InvalidStatsError);
}

TEST_CASE("channel stats json round-trips") {
  ChannelStats stats;
  stats.rgb = {{{0.25, 1.5}, {0.5, 2.5}, {0.75, 3.5}}};
  stats.hand = ChannelStat{10.0, 4.0};
  const ChannelStats back = channel_stats_from_json(channel_stats_to_json(stats));
  CHECK(back.rgb[1].mean == 0.5);
  CHECK(back.rgb[2].std == 3.5);
  REQUIRE(back.hand.has_value());
  CHECK(back.hand->mean == 10.0);
  CHECK_THROWS_AS(channel_stats_from_json("not json"), ParseError);
}

TEST_CASE("computed stats match direct accumulation") {
  Rng rng(43);
  std::vector<GeoRaster> rs;
  rs.push_back(random_raster(rng, 8, 8, 4));
  rs.push_back(random_raster(rng, 8, 8, 4));
  const ChannelStats stats = compute_channel_stats(rs);
  double sum = 0.0;
  for (const GeoRaster& r : rs)
    for (std::size_t i = 0; i < r.plane_size(); ++i) sum += r.plane(0)[i];
  CHECK(stats.rgb[0].mean == doctest::Approx(sum / (2 * 64)).epsilon(1e-12));
  CHECK(stats.hand.has_value());
  CHECK(stats.hand->std > 0.0);
}

namespace {

AugmentConfig no_op_config() {
  AugmentConfig cfg;
  cfg.rotation_quarters = {0};
  cfg.brightness_delta = 0.0;
  cfg.contrast_delta = 0.0;
  return cfg;
}

DamageMask random_mask(Rng& rng, int h, int w) {
  DamageMask m(h, w);
  for (auto& v : m.values) v = static_cast<std::uint8_t>(rng.uniform_int(5));
  return m;
}

std::array<int, 5> label_histogram(const DamageMask& m) {
  std::array<int, 5> hist{};
  for (const auto v : m.values) ++hist[v];
  return hist;
}

}  // namespace

TEST_CASE("no-op augmentation returns inputs unchanged") {
  Rng rng(47);
  const GeoRaster tile = random_raster(rng, 16, 16, 4);
  const DamageMask mask = random_mask(rng, 16, 16);
  const auto [t, m] = augment(tile, mask, 123, no_op_config());
  CHECK(t.data == tile.data);
  CHECK(m.values == mask.values);
}

TEST_CASE("applying a half turn twice restores tile and mask") {
  Rng rng(53);
  const GeoRaster tile = random_raster(rng, 12, 20, 3);
  const DamageMask mask = random_mask(rng, 12, 20);
  AugmentConfig cfg = no_op_config();
  cfg.rotation_quarters = {2};
  const auto [t1, m1] = augment(tile, mask, 1, cfg);
  CHECK(t1.data != tile.data);  // actually rotated
  const auto [t2, m2] = augment(t1, m1, 2, cfg);
  CHECK(t2.data == tile.data);
  CHECK(m2.values == mask.values);
}

TEST_CASE("rotations preserve the mask label multiset") {
  Rng rng(59);
  const GeoRaster tile = random_raster(rng, 24, 24, 3);
  const DamageMask mask = random_mask(rng, 24, 24);
  AugmentConfig cfg = no_op_config();
  cfg.rotation_quarters = {0, 1, 2, 3};
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const auto [t, m] = augment(tile, mask, seed, cfg);
    CHECK(label_histogram(m) == label_histogram(mask));
  }
}

TEST_CASE("photometric jitter never touches the hand channel or mask") {
  Rng rng(61);
  const GeoRaster tile = random_raster(rng, 16, 16, 4);
  const DamageMask mask = random_mask(rng, 16, 16);
  AugmentConfig cfg;
  cfg.rotation_quarters = {0};
  cfg.brightness_delta = 0.3;
  cfg.contrast_delta = 0.2;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto [t, m] = augment(tile, mask, seed, cfg);
    CHECK(m.values == mask.values);
    for (int y = 0; y < 16; ++y)
      for (int x = 0; x < 16; ++x) CHECK(t.at(3, y, x) == tile.at(3, y, x));
    // RGB actually jittered
    CHECK(t.at(0, 0, 0) != tile.at(0, 0, 0));
  }
}

TEST_CASE("augmentation is deterministic per seed") {
  Rng rng(67);
  const GeoRaster tile = random_raster(rng, 16, 16, 3);
  const DamageMask mask = random_mask(rng, 16, 16);
  AugmentConfig cfg;  // defaults: rotations + jitter
  const auto [t1, m1] = augment(tile, mask, 99, cfg);
  const auto [t2, m2] = augment(tile, mask, 99, cfg);
  CHECK(t1.data == t2.data);
  CHECK(m1.values == m2.values);
}

TEST_CASE("shape mismatch between tile and mask is rejected") {
  Rng rng(71);
  const GeoRaster tile = random_raster(rng, 8, 8, 3);
  const DamageMask mask = random_mask(rng, 8, 9);
  CHECK_THROWS_AS(augment(tile, mask, 0, AugmentConfig{}), InvalidInputError);
}
