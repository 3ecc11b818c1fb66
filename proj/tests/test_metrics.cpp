#include <doctest.h>

#include <json.hpp>

#include "floodsight/common/rng.hpp"
#include "floodsight/eval/metrics.hpp"

using namespace floodsight;

namespace {

DamageMask random_mask(Rng& rng, int h, int w, int classes = 5) {
  DamageMask m(h, w);
  for (auto& v : m.values) v = static_cast<std::uint8_t>(rng.uniform_int(classes));
  return m;
}

}  // namespace

TEST_CASE("perfect prediction yields a diagonal confusion matrix and unit f1") {
  Rng rng(301);
  const DamageMask truth = random_mask(rng, 16, 16);
  const ConfusionMatrix cm = confusion(truth, truth, 5);
  for (int t = 0; t < 5; ++t)
    for (int p = 0; p < 5; ++p)
      if (t != p) CHECK(cm.at(t, p) == 0);
  for (double f : f1_per_class(cm)) CHECK(f == doctest::Approx(1.0));
  CHECK(localization_f1(truth, truth) == doctest::Approx(1.0));
}

TEST_CASE("single-cell confusion for constant masks") {
  DamageMask truth(2, 2), pred(2, 2);
  for (auto& v : truth.values) v = 1;
  for (auto& v : pred.values) v = 2;
  const ConfusionMatrix cm = confusion(pred, truth, 5);
  CHECK(cm.at(1, 2) == 4);
  CHECK(cm.total() == 4);
}

TEST_CASE("confusion counts are conserved") {
  Rng rng(303);
  const DamageMask truth = random_mask(rng, 16, 16);
  const DamageMask pred = random_mask(rng, 16, 16);
  CHECK(confusion(pred, truth, 5).total() == 256);
  DamageMask other(16, 17);
  CHECK_THROWS_AS(confusion(pred, other, 5), InvalidInputError);
}

TEST_CASE("f1 handles absent classes by the zero-denominator rule") {
  ConfusionMatrix cm(3);
  cm.at(0, 0) = 10;  // class 1 and 2 absent everywhere
  const auto f1 = f1_per_class(cm);
  CHECK(f1[0] == doctest::Approx(1.0));
  CHECK(f1[1] == 0.0);
  CHECK(f1[2] == 0.0);
}

TEST_CASE("f1 matches hand arithmetic") {
  // one class with TP=3, FP=1, FN=2 -> F1 = 6/9
  ConfusionMatrix cm(2);
  cm.at(1, 1) = 3;
  cm.at(0, 1) = 1;
  cm.at(1, 0) = 2;
  cm.at(0, 0) = 5;
  CHECK(f1_per_class(cm)[1] == doctest::Approx(6.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("permuting class labels permutes per-class f1") {
  Rng rng(307);
  const DamageMask truth = random_mask(rng, 24, 24);
  const DamageMask pred = random_mask(rng, 24, 24);
  const auto base = f1_per_class(confusion(pred, truth, 5));

  const int perm[5] = {3, 0, 4, 1, 2};
  DamageMask truth_p = truth, pred_p = pred;
  for (auto& v : truth_p.values) v = static_cast<std::uint8_t>(perm[v]);
  for (auto& v : pred_p.values) v = static_cast<std::uint8_t>(perm[v]);
  const auto permuted = f1_per_class(confusion(pred_p, truth_p, 5));
  for (int c = 0; c < 5; ++c) CHECK(permuted[perm[c]] == doctest::Approx(base[c]).epsilon(1e-12));
}

TEST_CASE("localization ignores damage level scrambles") {
  Rng rng(311);
  const DamageMask truth = random_mask(rng, 16, 16);
  DamageMask pred = truth;
  for (auto& v : pred.values)
    if (v >= 1) v = static_cast<std::uint8_t>(1 + rng.uniform_int(4));  // scramble damage only
  CHECK(localization_f1(pred, truth) == doctest::Approx(1.0));

  DamageMask zeros(16, 16);
  bool truth_has_building = false;
  for (auto v : truth.values) truth_has_building |= v >= 1;
  REQUIRE(truth_has_building);
  CHECK(localization_f1(zeros, truth) == 0.0);
}

TEST_CASE("overall score combines localization and damage f1s") {
  // reference combination reproducing the published 0.616 summary value
  CHECK(overall_score(0.808, {0.813, 0.365, 0.476, 0.701}) == doctest::Approx(0.616).epsilon(0.0017));
  CHECK(overall_score(1.0, {1.0, 1.0, 1.0, 1.0}) == doctest::Approx(1.0));
  CHECK(overall_score(0.5, {0.9, 0.0, 0.7, 0.6}) == doctest::Approx(0.3 * 0.5));
}

TEST_CASE("overall score is monotone in each argument") {
  Rng rng(313);
  for (int trial = 0; trial < 50; ++trial) {
    double loc = rng.uniform();
    std::vector<double> d{rng.uniform(), rng.uniform(), rng.uniform(), rng.uniform()};
    const double base = overall_score(loc, d);
    CHECK(overall_score(std::min(1.0, loc + 0.05), d) >= base);
    for (int i = 0; i < 4; ++i) {
      auto d2 = d;
      d2[static_cast<std::size_t>(i)] = std::min(1.0, d2[static_cast<std::size_t>(i)] + 0.05);
      CHECK(overall_score(loc, d2) >= base - 1e-12);
    }
  }
}

TEST_CASE("metrics report mirrors the summary row names") {
  Rng rng(317);
  const DamageMask truth = random_mask(rng, 16, 16);
  const auto j = nlohmann::json::parse(damage_metrics_report_json(truth, truth));
  CHECK(j.at("F1 - Score").get<double>() == doctest::Approx(1.0));
  CHECK(j.at("F1 - Localization").get<double>() == doctest::Approx(1.0));
  CHECK(j.at("F1 - No Damage").get<double>() == doctest::Approx(1.0));
  CHECK(j.at("F1 - Minor Damage").get<double>() == doctest::Approx(1.0));
  CHECK(j.at("F1 - Major Damage").get<double>() == doctest::Approx(1.0));
  CHECK(j.at("F1 - Destroyed").get<double>() == doctest::Approx(1.0));
  CHECK(j.at("details").at("pixel_accuracy").get<double>() == doctest::Approx(1.0));
}
