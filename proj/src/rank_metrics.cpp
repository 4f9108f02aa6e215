#include "brf/rank_metrics.hpp"

#include <algorithm>

namespace brf {

namespace {

void truncate(Ranking& list, std::size_t limit) {
  if (list.size() > limit) list.resize(limit);
}

bool has_duplicates(const Ranking& list) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = i + 1; j < list.size(); ++j) {
      if (list[i] == list[j]) return true;
    }
  }
  return false;
}

double denominator(const RankingPair& pair) {
  return static_cast<double>(std::max(pair.list_a.size(), pair.list_b.size()));
}

}  // namespace

RankingPair RankingPair::make(int level, Ranking a, Ranking b, int cap) {
  if (level < 0 || level > kLevelCeiling || cap < 1) {
    throw Error(ErrorKind::InvalidInput, "ranking pair needs a valid level and a positive cap");
  }
  const auto limit = std::min<std::size_t>(static_cast<std::size_t>(cap), std::size_t{1} << level);
  truncate(a, limit);
  truncate(b, limit);
  if (has_duplicates(a) || has_duplicates(b)) {
    throw Error(ErrorKind::InvalidInput, "ranking lists must not repeat a band");
  }
  return RankingPair{level, std::move(a), std::move(b), cap};
}

double values_analysis(const RankingPair& pair) {
  if (pair.list_a.empty() && pair.list_b.empty()) return 100.0;
  const auto shared = std::count_if(pair.list_a.begin(), pair.list_a.end(), [&](const BandSpec& band) {
    return std::find(pair.list_b.begin(), pair.list_b.end(), band) != pair.list_b.end();
  });
  return 100.0 * static_cast<double>(shared) / denominator(pair);
}

double position_analysis(const RankingPair& pair) {
  if (pair.list_a.empty() && pair.list_b.empty()) return 100.0;
  const std::size_t common = std::min(pair.list_a.size(), pair.list_b.size());
  std::size_t equal = 0;
  for (std::size_t i = 0; i < common; ++i) {
    if (pair.list_a[i] == pair.list_b[i]) ++equal;
  }
  return 100.0 * static_cast<double>(equal) / denominator(pair);
}

std::vector<LevelAgreement> compare_rankings(const AnalysisReport& report, int top_n) {
  std::vector<LevelAgreement> out;
  if (!report.gate.relevant) {
    for (int k = 0; k <= report.metadata.max_level; ++k) out.push_back({k, 0.0, 0.0});
    return out;
  }
  for (std::size_t i = 0; i < report.levels.size(); ++i) {
    const int k = report.levels[i].level;
    const Ranking baseline = i < report.rms_rankings.size() ? report.rms_rankings[i] : Ranking{};
    const auto pair = RankingPair::make(k, report.levels[i].ranking, baseline, top_n);
    out.push_back({k, values_analysis(pair), position_analysis(pair)});
  }
  return out;
}

}  // namespace brf
