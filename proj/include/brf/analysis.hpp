#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "brf/bands.hpp"
#include "brf/signal.hpp"

namespace brf {

// Full-signal entropy threshold in dB; at or above it the signal is noise.
inline constexpr double kGateThresholdDb = -3.0;

// Offset that moves the band decision threshold from -3 dB to 0 dB.
inline constexpr double kEntropyShiftDb = 3.0;

// Floor on the correction factor so that a band holding all the energy
// still gets a finite (very large) BRF.
inline constexpr double kCorrectionFloorDb = 1e-12;

inline constexpr int kDefaultTopN = 5;

struct GateVerdict {
  double s_base = 1.0;
  double s_base_db = 0.0;
  bool relevant = false;

  friend bool operator==(const GateVerdict&, const GateVerdict&) = default;
};

struct BandScore {
  BandSpec band;
  double rms_band = 0.0;
  double rms_diff_db = 0.0;
  double s_filtered = 1.0;
  double s_diff_db = 0.0;
  double brf = 0.0;
  bool relevant = false;

  friend bool operator==(const BandScore&, const BandScore&) = default;
};

using Ranking = std::vector<BandSpec>;

struct LevelResult {
  int level = 0;
  std::vector<BandScore> scores;
  std::vector<double> brf_normalized;
  std::vector<double> rms_normalized;
  Ranking ranking;

  friend bool operator==(const LevelResult&, const LevelResult&) = default;
};

struct AnalysisMetadata {
  std::string source_id;
  double sample_rate_hz = 0.0;
  std::size_t sample_count = 0;
  int max_level = kDefaultMaxLevel;
  int requested_max_level = kDefaultMaxLevel;
  int top_n = kDefaultTopN;
  bool level_trimmed = false;

  friend bool operator==(const AnalysisMetadata&, const AnalysisMetadata&) = default;
};

struct AnalysisReport {
  GateVerdict gate;
  std::vector<LevelResult> levels;
  // Baseline: per level, bands ordered by rms_band descending.
  std::vector<Ranking> rms_rankings;
  AnalysisMetadata metadata;

  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

// Spectral entropy of the whole spectrum against the -3 dB threshold.
GateVerdict gate(const Spectrum& spectrum);

// rms_base_db - rms_filtered_db; a silent band (-inf) gives +inf.
double correction_factor(double rms_base_db, double rms_filtered_db);

// 3 + s_base_db - s_filtered_db. Equal -inf inputs count as equal entropies.
double entropy_difference_factor(double s_base_db, double s_filtered_db);

// s_diff / max(rms_diff, floor); +inf rms_diff gives 0.
double band_relevance_factor(double s_diff, double rms_diff);

BandScore score_band(const Spectrum& spectrum, const GateVerdict& gate, const BandSpec& band);

struct NormalizedLevel {
  std::vector<double> brf;
  std::vector<double> rms;
};

// Positive BRFs scaled by the largest positive BRF, negative ones by the
// magnitude of the most negative; rms scaled by the level maximum. A
// single-band level (level 0) maps to 1 for both.
NormalizedLevel normalize_level(const std::vector<BandScore>& scores);

// Relevant bands by BRF descending, ties broken by lower f_lo.
Ranking rank_by_brf(const std::vector<BandScore>& scores, int top_n);

// Every band by rms_band descending, ties broken by lower f_lo.
Ranking rank_by_rms(const std::vector<BandScore>& scores, int top_n);

// Scores every band of level k. Level 0 takes its relevance from the gate.
LevelResult analyze_level(const Spectrum& spectrum, const GateVerdict& gate, int k, int top_n);

// Gate, then levels 0..max_level. Levels deeper than the signal supports
// are trimmed and flagged in the metadata.
AnalysisReport analyze(const Signal& signal, int max_level = kDefaultMaxLevel,
                       int top_n = kDefaultTopN, std::string source_id = {});

}  // namespace brf
