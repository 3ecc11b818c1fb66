#include "floodsight/eval/metrics.hpp"

#include <numeric>

#include <json.hpp>

namespace floodsight {

std::int64_t ConfusionMatrix::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

std::int64_t ConfusionMatrix::correct() const {
  std::int64_t c = 0;
  for (int i = 0; i < num_classes; ++i) c += at(i, i);
  return c;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  if (num_classes != other.num_classes)
    throw InvalidInputError("confusion merge: class count mismatch");
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  return *this;
}

ConfusionMatrix confusion(const DamageMask& pred, const DamageMask& truth, int num_classes) {
  if (pred.height != truth.height || pred.width != truth.width)
    throw InvalidInputError("confusion: mask shapes differ");
  if (num_classes < 1) throw InvalidInputError("confusion: num_classes must be >= 1");
  ConfusionMatrix cm(num_classes);
  const std::size_t n = pred.values.size();
  for (std::size_t i = 0; i < n; ++i) {
    const int t = truth.values[i], p = pred.values[i];
    if (t >= num_classes || p >= num_classes)
      throw InvalidInputError("confusion: class value out of range");
    ++cm.at(t, p);
  }
  return cm;
}

std::vector<double> f1_per_class(const ConfusionMatrix& cm) {
  std::vector<double> f1(static_cast<std::size_t>(cm.num_classes), 0.0);
  for (int c = 0; c < cm.num_classes; ++c) {
    const std::int64_t tp = cm.at(c, c);
    std::int64_t fp = 0, fn = 0;
    for (int o = 0; o < cm.num_classes; ++o) {
      if (o == c) continue;
      fp += cm.at(o, c);
      fn += cm.at(c, o);
    }
    const std::int64_t denom = 2 * tp + fp + fn;
    f1[static_cast<std::size_t>(c)] = denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
  }
  return f1;
}

double localization_f1(const DamageMask& pred, const DamageMask& truth) {
  if (pred.height != truth.height || pred.width != truth.width)
    throw InvalidInputError("localization_f1: mask shapes differ");
  std::int64_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < pred.values.size(); ++i) {
    const bool p = pred.values[i] >= 1, t = truth.values[i] >= 1;
    tp += p && t;
    fp += p && !t;
    fn += !p && t;
  }
  const std::int64_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

double overall_score(double loc_f1, const std::vector<double>& damage_f1s) {
  if (damage_f1s.size() != 4) throw InvalidInputError("overall_score: expected 4 damage F1s");
  double harmonic = 0.0;
  bool any_zero = false;
  double inv_sum = 0.0;
  for (double f : damage_f1s) {
    if (f < 0.0 || f > 1.0) throw InvalidInputError("overall_score: F1 out of [0,1]");
    if (f == 0.0)
      any_zero = true;
    else
      inv_sum += 1.0 / f;
  }
  if (!any_zero) harmonic = 4.0 / inv_sum;
  return 0.3 * loc_f1 + 0.7 * harmonic;
}

std::string damage_metrics_report_json(const DamageMask& pred, const DamageMask& truth) {
  const ConfusionMatrix cm = confusion(pred, truth, kDamageClasses);
  const std::vector<double> f1 = f1_per_class(cm);
  const double loc = localization_f1(pred, truth);
  const std::vector<double> damage_f1s(f1.begin() + 1, f1.end());
  const double score = overall_score(loc, damage_f1s);
  const double pixel_acc =
      cm.total() == 0 ? 0.0 : static_cast<double>(cm.correct()) / static_cast<double>(cm.total());

  nlohmann::json rows;
  for (int t = 0; t < cm.num_classes; ++t) {
    nlohmann::json row = nlohmann::json::array();
    for (int p = 0; p < cm.num_classes; ++p) row.push_back(cm.at(t, p));
    rows.push_back(row);
  }
  nlohmann::json j = {
      {"F1 - Score", score},
      {"F1 - Localization", loc},
      {"F1 - No Damage", f1[1]},
      {"F1 - Minor Damage", f1[2]},
      {"F1 - Major Damage", f1[3]},
      {"F1 - Destroyed", f1[4]},
      {"details",
       {{"per_class_f1", f1}, {"pixel_accuracy", pixel_acc}, {"confusion", rows},
        {"scored_pixels", cm.total()}}},
  };
  return j.dump(2);
}

}  // namespace floodsight
