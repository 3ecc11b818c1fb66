#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "floodsight/geo/raster.hpp"

namespace floodsight {

// Rows index the true class, columns the predicted class.
struct ConfusionMatrix {
  int num_classes = 0;
  std::vector<std::int64_t> counts;  // num_classes * num_classes

  ConfusionMatrix() = default;
  explicit ConfusionMatrix(int n) : num_classes(n), counts(static_cast<std::size_t>(n) * n, 0) {}

  std::int64_t& at(int truth, int pred) {
    return counts[static_cast<std::size_t>(truth) * num_classes + pred];
  }
  std::int64_t at(int truth, int pred) const {
    return counts[static_cast<std::size_t>(truth) * num_classes + pred];
  }
  std::int64_t total() const;
  std::int64_t correct() const;

  // Elementwise addition; partial matrices from parallel evaluation merge
  // exactly.
  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
};

ConfusionMatrix confusion(const DamageMask& pred, const DamageMask& truth, int num_classes);

// F1 = 2TP / (2TP + FP + FN); 0 when the denominator is 0.
std::vector<double> f1_per_class(const ConfusionMatrix& cm);

// Binary building-vs-background F1: classes >= 1 count as building,
// damage level is ignored.
double localization_f1(const DamageMask& pred, const DamageMask& truth);

// Combined score: 0.3 * localization + 0.7 * harmonic mean of the four
// damage-class F1s; the harmonic mean is 0 when any component is 0.
double overall_score(double loc_f1, const std::vector<double>& damage_f1s);

// Full evaluation of a mask pair on the 5-class damage scale, serialized as
// a JSON report.
std::string damage_metrics_report_json(const DamageMask& pred, const DamageMask& truth);

}  // namespace floodsight
