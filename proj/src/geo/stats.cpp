#include "floodsight/geo/stats.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

namespace floodsight {

namespace {

constexpr const char* kChannelNames[4] = {"R", "G", "B", "HAND"};

void check_channels(const GeoRaster& tile, const ChannelStats& stats) {
  if (tile.channels != 3 && tile.channels != 4)
    throw InvalidStatsError("normalize: expected a 3- or 4-channel raster");
  if (tile.channels == 4 && !stats.hand)
    throw InvalidStatsError("normalize: raster has a HAND channel but stats do not");
  for (int c = 0; c < 3; ++c)
    if (stats.rgb[c].std <= 0.0) throw InvalidStatsError("normalize: rgb std must be > 0");
  if (tile.channels == 4 && stats.hand->std <= 0.0)
    throw InvalidStatsError("normalize: hand std must be > 0");
}

ChannelStat stat_for_channel(const ChannelStats& stats, int c) {
  return c < 3 ? stats.rgb[static_cast<std::size_t>(c)] : *stats.hand;
}

}  // namespace

ChannelStats compute_channel_stats(std::span<const GeoRaster> rasters) {
  if (rasters.empty()) throw InvalidInputError("compute_channel_stats: no rasters");
  const int channels = rasters.front().channels;
  if (channels != 3 && channels != 4)
    throw InvalidInputError("compute_channel_stats: expected 3 or 4 channels");

  ChannelStats out;
  for (int c = 0; c < channels; ++c) {
    double sum = 0.0, sum_sq = 0.0;
    std::size_t n = 0;
    for (const GeoRaster& r : rasters) {
      if (r.channels != channels)
        throw InvalidInputError("compute_channel_stats: mixed channel counts");
      const double* p = r.plane(c);
      const std::size_t m = r.plane_size();
      for (std::size_t i = 0; i < m; ++i) {
        sum += p[i];
        sum_sq += p[i] * p[i];
      }
      n += m;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean);
    ChannelStat s{mean, std::sqrt(var)};
    if (s.std < 1e-12) s.std = 1e-12;
    if (c < 3)
      out.rgb[static_cast<std::size_t>(c)] = s;
    else
      out.hand = s;
  }
  return out;
}

GeoRaster normalize(const GeoRaster& tile, const ChannelStats& stats) {
  check_channels(tile, stats);
  GeoRaster out = tile;
  for (int c = 0; c < tile.channels; ++c) {
    const ChannelStat s = stat_for_channel(stats, c);
    double* p = out.plane(c);
    for (std::size_t i = 0; i < out.plane_size(); ++i) p[i] = (p[i] - s.mean) / s.std;
  }
  return out;
}

GeoRaster denormalize(const GeoRaster& tile, const ChannelStats& stats) {
  check_channels(tile, stats);
  GeoRaster out = tile;
  for (int c = 0; c < tile.channels; ++c) {
    const ChannelStat s = stat_for_channel(stats, c);
    double* p = out.plane(c);
    for (std::size_t i = 0; i < out.plane_size(); ++i) p[i] = p[i] * s.std + s.mean;
  }
  return out;
}

std::string channel_stats_to_json(const ChannelStats& stats) {
  nlohmann::json j;
  for (int c = 0; c < stats.channel_count(); ++c) {
    const ChannelStat s = stat_for_channel(stats, c);
    j[kChannelNames[c]] = {{"mean", s.mean}, {"std", s.std}};
  }
  return j.dump(2);
}

ChannelStats channel_stats_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("channel stats: ") + e.what());
  }
  ChannelStats out;
  for (int c = 0; c < 3; ++c) {
    const auto& e = j.at(kChannelNames[c]);
    out.rgb[static_cast<std::size_t>(c)] = {e.at("mean").get<double>(), e.at("std").get<double>()};
  }
  if (j.contains("HAND")) {
    const auto& e = j.at("HAND");
    out.hand = ChannelStat{e.at("mean").get<double>(), e.at("std").get<double>()};
  }
  return out;
}

void save_channel_stats(const ChannelStats& stats, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << channel_stats_to_json(stats) << "\n";
  if (!f) throw IoError("write failed: " + path);
}

ChannelStats load_channel_stats(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path);
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return channel_stats_from_json(text);
}

}  // namespace floodsight
