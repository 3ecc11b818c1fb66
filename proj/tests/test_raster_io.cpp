#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "floodsight/common/rng.hpp"
#include "floodsight/io/geotiff.hpp"
#include "floodsight/io/png_io.hpp"

using namespace floodsight;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("float64 geotiff round-trips pixels, transform, and crs") {
  Rng rng(101);
  GeoRaster src(23, 17, 4, {"R", "G", "B", "HAND"}, {-95.5, 29.25, 1e-5, -1e-5}, "EPSG:4326");
  for (double& v : src.data) v = rng.uniform(-100.0, 100.0);

  const std::string path = temp_path("fs_rt_f64.tif");
  write_geotiff(src, path, GeoTiffDataType::kFloat64);
  const GeoRaster back = read_geotiff(path);

  CHECK(back.height == src.height);
  CHECK(back.width == src.width);
  CHECK(back.channels == 4);
  CHECK(back.channel_names[3] == "HAND");
  CHECK(back.crs == "EPSG:4326");
  CHECK(back.transform.almost_equal(src.transform, 1e-12));
  CHECK(back.data == src.data);
  std::filesystem::remove(path);
}

TEST_CASE("float32 geotiff round-trips with float precision") {
  Rng rng(103);
  GeoRaster src(9, 11, 1, {"C0"}, {10.0, 20.0, 0.5, -0.5}, "EPSG:32615");
  for (double& v : src.data) v = rng.uniform(0.0, 50.0);

  const std::string path = temp_path("fs_rt_f32.tif");
  write_geotiff(src, path, GeoTiffDataType::kFloat32);
  const GeoRaster back = read_geotiff(path, {"HAND"});
  CHECK(back.channel_names[0] == "HAND");
  CHECK(back.crs == "EPSG:32615");
  for (std::size_t i = 0; i < src.data.size(); ++i)
    CHECK(back.data[i] == doctest::Approx(src.data[i]).epsilon(1e-6));
  std::filesystem::remove(path);
}

TEST_CASE("uint8 geotiff stores rounded clamped bytes") {
  GeoRaster src(2, 2, 1, {"C0"});
  src.at(0, 0, 0) = -3.0;
  src.at(0, 0, 1) = 7.4;
  src.at(0, 1, 0) = 7.6;
  src.at(0, 1, 1) = 300.0;
  const std::string path = temp_path("fs_rt_u8.tif");
  write_geotiff(src, path, GeoTiffDataType::kUint8);
  const GeoRaster back = read_geotiff(path);
  CHECK(back.at(0, 0, 0) == 0.0);
  CHECK(back.at(0, 0, 1) == 7.0);
  CHECK(back.at(0, 1, 0) == 8.0);
  CHECK(back.at(0, 1, 1) == 255.0);
  std::filesystem::remove(path);
}

TEST_CASE("malformed tiff input is rejected with a parse error") {
  const std::string path = temp_path("fs_bad.tif");
  {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    std::fputs("not a tiff at all", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(read_geotiff(path), ParseError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_geotiff(temp_path("fs_missing.tif")), IoError);
}

TEST_CASE("mask png round-trips damage classes") {
  Rng rng(107);
  DamageMask mask(31, 19);
  for (auto& v : mask.values) v = static_cast<std::uint8_t>(rng.uniform_int(5));
  const std::string path = temp_path("fs_mask.png");
  write_mask_png(mask, path);
  const DamageMask back = read_mask_png(path);
  CHECK(back.height == mask.height);
  CHECK(back.width == mask.width);
  CHECK(back.values == mask.values);
  std::filesystem::remove(path);
}
