#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "brf/analysis.hpp"
#include "brf/signal.hpp"
#include "brf/synth.hpp"

namespace brf {

inline constexpr const char* kToolName = "brf";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchemaVersion = "1.0";
inline constexpr int kReportSchemaMajor = 1;

enum class SignalFormat { Csv, Wav };

struct SignalFile {
  std::filesystem::path path;
  std::optional<SignalFormat> format;  // nullopt: from the extension
  int channel = 0;
  std::optional<double> fs_override_hz;
};

// csv: optional "# fs=<hz>" comment, then one amplitude per line.
// wav: integer PCM, 8/16/24/32 bit, samples scaled to [-1, 1).
Signal read_signal(const SignalFile& file);

// Writes "# fs=<hz>" and one shortest-round-trip amplitude per line.
void write_csv_signal(const Signal& signal, const std::filesystem::path& path);

// 16-bit mono PCM; samples are clipped to [-1, 1).
void write_wav_pcm16(const Signal& signal, const std::filesystem::path& path);

nlohmann::ordered_json report_to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const nlohmann::json& json);

// Byte-deterministic JSON (fixed key order, 2-space indent, trailing newline).
void write_report(const AnalysisReport& report, const std::filesystem::path& path);
AnalysisReport read_report(const std::filesystem::path& path);

enum class HeatmapKind { Brf, Rms };

const char* to_string(HeatmapKind kind) noexcept;
HeatmapKind parse_heatmap_kind(const std::string& text);

// One row per level k = 0..K; each row has 2^K cells and every level-k band
// fills the 2^(K-k) columns of its finest-level descendants.
struct HeatmapMatrix {
  HeatmapKind kind = HeatmapKind::Brf;
  std::vector<std::string> column_labels;
  std::vector<std::vector<double>> rows;
};

HeatmapMatrix build_heatmap(const AnalysisReport& report, HeatmapKind kind);

// CSV heatmap with a band-edge header row. A gate-failed report produces the
// single-row marker "irrelevant".
void write_heatmap(const AnalysisReport& report, HeatmapKind kind, const std::filesystem::path& path);

// SVG rendering: blue for positive, white at zero, red for negative.
void write_heatmap_svg(const AnalysisReport& report, HeatmapKind kind, const std::filesystem::path& path);

struct SynthRecord {
  std::vector<Tone> tones;
  double sample_rate_hz = 0.0;
  std::size_t sample_count = 0;
  std::optional<double> target_snr_db;
  double realized_snr_db = kPositiveInfinity;
  double alpha = 0.0;
  SnrConvention convention = SnrConvention::Paper;
  std::uint64_t seed = 0;
};

void write_synth_metadata(const SynthRecord& record, const std::filesystem::path& path);

// Shortest decimal that round-trips; infinities as "+inf" / "-inf".
std::string format_number(double value);

}  // namespace brf
