#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>

#include "floodsight/geo/raster.hpp"

namespace floodsight {

struct ChannelStat {
  double mean = 0.0;
  double std = 1.0;
};

// Normalization statistics, computed independently for the RGB group and the
// HAND group. Intended to be fitted on the training split only and persisted
// next to the model.
struct ChannelStats {
  std::array<ChannelStat, 3> rgb{};
  std::optional<ChannelStat> hand;

  int channel_count() const { return hand ? 4 : 3; }
};

// Per-channel mean/std over a set of rasters. Rasters must all have 3
// channels, or all have 4 with the last channel named "HAND".
ChannelStats compute_channel_stats(std::span<const GeoRaster> rasters);

// (x - mean) / std per channel, RGB and HAND groups independent.
GeoRaster normalize(const GeoRaster& tile, const ChannelStats& stats);

// Inverse of normalize.
GeoRaster denormalize(const GeoRaster& tile, const ChannelStats& stats);

// JSON round-trip, schema {"R": {"mean": .., "std": ..}, ..., "HAND": {...}}.
std::string channel_stats_to_json(const ChannelStats& stats);
ChannelStats channel_stats_from_json(const std::string& json_text);

void save_channel_stats(const ChannelStats& stats, const std::string& path);
ChannelStats load_channel_stats(const std::string& path);

}  // namespace floodsight
