#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "brf/rank_metrics.hpp"
#include "oracles.hpp"

using namespace brf;

namespace {

// Bands named by their Table-1 labels at fs = 20480.
BandSpec band(int level, double lo) {
  const double width = 10240.0 / static_cast<double>(1L << level);
  return BandSpec::make(10240.0, level, static_cast<long>(lo / width));
}

Ranking bands(int level, std::initializer_list<double> lows) {
  Ranking r;
  for (double lo : lows) r.push_back(band(level, lo));
  return r;
}

}  // namespace

TEST_CASE("low-noise Table 2 cells, levels 0 to 3") {
  // Rankings as printed for the low-noise signal.
  const auto l0 = RankingPair::make(0, bands(0, {0}), bands(0, {0}));
  CHECK(values_analysis(l0) == 100.0);
  CHECK(position_analysis(l0) == 100.0);

  const auto l1 = RankingPair::make(1, bands(1, {0}), bands(1, {0, 5120}));
  CHECK(values_analysis(l1) == 50.0);
  CHECK(position_analysis(l1) == 50.0);

  const auto l2 = RankingPair::make(2, bands(2, {0, 2560}), bands(2, {0, 2560, 5120, 7680}));
  CHECK(values_analysis(l2) == 50.0);
  CHECK(position_analysis(l2) == 50.0);

  const auto l3 = RankingPair::make(3, bands(3, {0, 2560, 1280}), bands(3, {0, 2560, 1280, 8960, 5120}));
  CHECK(values_analysis(l3) == 60.0);
  CHECK(position_analysis(l3) == 60.0);
}

TEST_CASE("mixed noise and disjoint lists") {
  const auto mixed = RankingPair::make(2, {}, bands(2, {5120, 2560, 7680}));
  CHECK(values_analysis(mixed) == 0.0);
  CHECK(position_analysis(mixed) == 0.0);

  const auto disjoint = RankingPair::make(3, bands(3, {0, 1280}), bands(3, {2560, 3840}));
  CHECK(values_analysis(disjoint) == 0.0);
  CHECK(position_analysis(disjoint) == 0.0);

  const auto empty = RankingPair::make(3, {}, {});
  CHECK(values_analysis(empty) == 100.0);
  CHECK(position_analysis(empty) == 100.0);
}

TEST_CASE("ranking pairs are capped and reject duplicates") {
  const auto capped = RankingPair::make(4, bands(4, {0, 640, 1280, 1920, 2560, 3200}), bands(4, {0}));
  CHECK(capped.list_a.size() == 5);
  const auto level1 = RankingPair::make(1, bands(1, {0, 5120}), bands(1, {0}), 1);
  CHECK(level1.list_a.size() == 1);
  CHECK_THROWS_AS(RankingPair::make(3, bands(3, {0, 0}), {}), Error);
  CHECK_THROWS_AS(RankingPair::make(3, {}, {}, 0), Error);
}

TEST_CASE("metrics agree with a brute-force counter and obey their bounds") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> level_dist(0, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    const int level = level_dist(rng);
    const int count = 1 << level;
    const int cap = std::min(5, count);
    std::vector<int> pool(static_cast<std::size_t>(count));
    std::iota(pool.begin(), pool.end(), 0);
    std::uniform_int_distribution<int> size_dist(0, cap);

    auto draw = [&] {
      std::shuffle(pool.begin(), pool.end(), rng);
      return std::vector<int>(pool.begin(), pool.begin() + size_dist(rng));
    };
    const std::vector<int> a = draw();
    const std::vector<int> b = draw();
    auto to_ranking = [&](const std::vector<int>& ids) {
      Ranking r;
      for (int id : ids) r.push_back(BandSpec::make(10240.0, level, id));
      return r;
    };

    const auto pair = RankingPair::make(level, to_ranking(a), to_ranking(b));
    const auto swapped = RankingPair::make(level, to_ranking(b), to_ranking(a));
    const auto same = RankingPair::make(level, to_ranking(a), to_ranking(a));
    const auto [va, pa] = oracle::agreement(a, b);
    CHECK(values_analysis(pair) == va);
    CHECK(position_analysis(pair) == pa);
    CHECK(position_analysis(pair) <= values_analysis(pair));
    CHECK(values_analysis(pair) <= 100.0);
    CHECK(values_analysis(pair) == values_analysis(swapped));
    CHECK(position_analysis(pair) == position_analysis(swapped));
    CHECK(values_analysis(same) == 100.0);
    CHECK(position_analysis(same) == 100.0);
  }
}

TEST_CASE("compare_rankings on reports") {
  AnalysisReport failed;
  failed.gate.relevant = false;
  failed.metadata.max_level = 3;
  const auto rows = compare_rankings(failed, 5);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(r.values == 0.0);
    CHECK(r.position == 0.0);
  }

  AnalysisReport passed;
  passed.gate.relevant = true;
  passed.metadata.max_level = 1;
  LevelResult l0;
  l0.level = 0;
  l0.ranking = bands(0, {0});
  LevelResult l1;
  l1.level = 1;
  l1.ranking = bands(1, {0});
  passed.levels = {l0, l1};
  passed.rms_rankings = {bands(0, {0}), bands(1, {0, 5120})};
  const auto out = compare_rankings(passed, 5);
  REQUIRE(out.size() == 2);
  CHECK(out[0].values == 100.0);
  CHECK(out[1].values == 50.0);
  CHECK(out[1].position == 50.0);
}
