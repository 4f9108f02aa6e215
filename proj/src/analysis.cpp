#include "brf/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "brf/entropy.hpp"

namespace brf {

GateVerdict gate(const Spectrum& spectrum) {
  if (!(spectrum.total_energy() > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "signal holds no energy");
  }
  GateVerdict verdict;
  verdict.s_base = spectral_entropy(energy_distribution(spectrum));
  verdict.s_base_db = entropy_db(verdict.s_base);
  verdict.relevant = verdict.s_base_db < kGateThresholdDb;
  return verdict;
}

double correction_factor(double rms_base_db, double rms_filtered_db) {
  if (std::isinf(rms_filtered_db) && rms_filtered_db < 0.0) return kPositiveInfinity;
  return std::max(0.0, rms_base_db - rms_filtered_db);
}

double entropy_difference_factor(double s_base_db, double s_filtered_db) {
  if (s_base_db == s_filtered_db) return kEntropyShiftDb;
  return kEntropyShiftDb + s_base_db - s_filtered_db;
}

double band_relevance_factor(double s_diff, double rms_diff) {
  if (std::isinf(rms_diff)) return 0.0;
  return s_diff / std::max(rms_diff, kCorrectionFloorDb);
}

BandScore score_band(const Spectrum& spectrum, const GateVerdict& gate, const BandSpec& band) {
  BandScore score;
  score.band = band;
  score.rms_band = rms(spectrum, band);
  score.rms_diff_db = correction_factor(rms_db(rms(spectrum)), rms_db(score.rms_band));
  if (score.rms_band == 0.0) {
    // Silent band: no distribution exists, so it is scored as uninformative.
    score.s_filtered = 1.0;
    score.s_diff_db = entropy_difference_factor(gate.s_base_db, 0.0);
    score.brf = 0.0;
    score.relevant = false;
    return score;
  }
  score.s_filtered = spectral_entropy(energy_distribution(spectrum, band));
  score.s_diff_db = entropy_difference_factor(gate.s_base_db, entropy_db(score.s_filtered));
  score.brf = band_relevance_factor(score.s_diff_db, score.rms_diff_db);
  score.relevant = score.s_diff_db >= 0.0 && score.brf > 0.0;
  return score;
}

namespace {

// Scales values of one sign so the extreme becomes +-1. Infinite values map
// to +-1 and the finite ones are scaled by the largest finite magnitude.
double scale_for(const std::vector<BandScore>& scores, bool positive) {
  double extreme = 0.0;
  for (const auto& s : scores) {
    const double v = positive ? s.brf : -s.brf;
    if (v > 0.0 && std::isfinite(v)) extreme = std::max(extreme, v);
  }
  return extreme;
}

double normalized(double value, double positive_scale, double negative_scale) {
  if (value == 0.0) return 0.0;
  if (std::isinf(value)) return value > 0.0 ? 1.0 : -1.0;
  return value > 0.0 ? value / positive_scale : value / negative_scale;
}

template <typename Key>
Ranking ranked(const std::vector<BandScore>& scores, int top_n, Key key,
               bool (*keep)(const BandScore&)) {
  std::vector<const BandScore*> kept;
  for (const auto& s : scores) {
    if (keep(s)) kept.push_back(&s);
  }
  std::stable_sort(kept.begin(), kept.end(), [&](const BandScore* a, const BandScore* b) {
    const double ka = key(*a);
    const double kb = key(*b);
    if (ka != kb) return ka > kb;
    return a->band.f_lo_hz < b->band.f_lo_hz;
  });
  const auto limit = std::min<std::size_t>(kept.size(), static_cast<std::size_t>(std::max(top_n, 0)));
  Ranking out;
  out.reserve(limit);
  for (std::size_t i = 0; i < limit; ++i) out.push_back(kept[i]->band);
  return out;
}

}  // namespace

NormalizedLevel normalize_level(const std::vector<BandScore>& scores) {
  NormalizedLevel out;
  if (scores.empty()) return out;
  if (scores.size() == 1) {
    out.brf.push_back(1.0);
    out.rms.push_back(1.0);
    return out;
  }
  const double positive_scale = scale_for(scores, true);
  const double negative_scale = scale_for(scores, false);
  double rms_max = 0.0;
  for (const auto& s : scores) rms_max = std::max(rms_max, s.rms_band);

  out.brf.reserve(scores.size());
  out.rms.reserve(scores.size());
  for (const auto& s : scores) {
    out.brf.push_back(normalized(s.brf, positive_scale, negative_scale));
    out.rms.push_back(rms_max > 0.0 ? s.rms_band / rms_max : 0.0);
  }
  return out;
}

Ranking rank_by_brf(const std::vector<BandScore>& scores, int top_n) {
  return ranked(
      scores, top_n, [](const BandScore& s) { return s.brf; },
      [](const BandScore& s) { return s.relevant && s.brf > 0.0; });
}

Ranking rank_by_rms(const std::vector<BandScore>& scores, int top_n) {
  return ranked(
      scores, top_n, [](const BandScore& s) { return s.rms_band; },
      [](const BandScore&) { return true; });
}

LevelResult analyze_level(const Spectrum& spectrum, const GateVerdict& gate, int k, int top_n) {
  LevelResult result;
  result.level = k;
  const auto bands = bands_at_level(spectrum, k);
  result.scores.reserve(bands.size());
  for (const auto& band : bands) result.scores.push_back(score_band(spectrum, gate, band));

  if (k == 0) {
    // The full band always equals the signal: S_diff = 3 and rms_diff = 0.
    auto& full = result.scores.front();
    full.s_diff_db = kEntropyShiftDb;
    full.rms_diff_db = 0.0;
    full.brf = band_relevance_factor(full.s_diff_db, full.rms_diff_db);
    full.relevant = gate.relevant;
  }

  auto normalized = normalize_level(result.scores);
  result.brf_normalized = std::move(normalized.brf);
  result.rms_normalized = std::move(normalized.rms);
  result.ranking = rank_by_brf(result.scores, top_n);
  return result;
}

AnalysisReport analyze(const Signal& signal, int max_level, int top_n, std::string source_id) {
  if (max_level < 0) throw Error(ErrorKind::InvalidInput, "max level must be non-negative");
  if (top_n < 1) throw Error(ErrorKind::InvalidInput, "top_n must be at least 1");

  const Spectrum spec = spectrum(signal);
  const int deepest = max_level_for(signal.size());
  if (deepest < 0) throw Error(ErrorKind::InvalidInput, "signal too short for band analysis");

  AnalysisReport report;
  report.metadata.source_id = std::move(source_id);
  report.metadata.sample_rate_hz = signal.sample_rate_hz();
  report.metadata.sample_count = signal.size();
  report.metadata.requested_max_level = max_level;
  report.metadata.max_level = std::min(max_level, deepest);
  report.metadata.level_trimmed = max_level > deepest;
  report.metadata.top_n = top_n;

  report.gate = gate(spec);
  if (!report.gate.relevant) return report;

  for (int k = 0; k <= report.metadata.max_level; ++k) {
    report.levels.push_back(analyze_level(spec, report.gate, k, top_n));
    report.rms_rankings.push_back(rank_by_rms(report.levels.back().scores, top_n));
  }
  return report;
}

}  // namespace brf
