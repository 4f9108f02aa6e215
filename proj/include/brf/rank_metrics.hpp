#pragma once

#include <vector>

#include "brf/analysis.hpp"

namespace brf {

// Two top-N band rankings of one level.
struct RankingPair {
  int level = 0;
  Ranking list_a;
  Ranking list_b;
  int cap = kDefaultTopN;

  // Truncates both lists to min(cap, 2^level); throws on duplicate bands.
  static RankingPair make(int level, Ranking a, Ranking b, int cap = kDefaultTopN);
};

// Percentage of bands shared by the two lists, order ignored, over the
// longer list's length. Two empty lists agree fully (100).
double values_analysis(const RankingPair& pair);

// Percentage of positions holding the same band, over the longer list's
// length. Two empty lists agree fully (100).
double position_analysis(const RankingPair& pair);

struct LevelAgreement {
  int level = 0;
  double values = 0.0;
  double position = 0.0;
};

// VA/PA of the BRF ranking against the rms baseline for every level of a
// report. A gate-failed report selects nothing, while the baseline always
// lists min(top_n, 2^k) bands, so every level scores 0.
std::vector<LevelAgreement> compare_rankings(const AnalysisReport& report, int top_n);

}  // namespace brf
