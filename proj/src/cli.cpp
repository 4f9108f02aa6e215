#include "brf/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

#include "brf/analysis.hpp"
#include "brf/io.hpp"
#include "brf/rank_metrics.hpp"
#include "brf/synth.hpp"

namespace brf::cli {

namespace {

struct GlobalOptions {
  std::uint64_t seed = 0;
  bool quiet = false;
};

struct InputOptions {
  std::string path;
  std::optional<double> fs;
  int channel = 0;

  SignalFile file() const { return SignalFile{path, std::nullopt, channel, fs}; }
};

void add_input_options(CLI::App& cmd, InputOptions& in) {
  cmd.add_option("signal", in.path, "Signal file (.csv or .wav). DC is kept; detrend first if it is meaningless.")
      ->required();
  cmd.add_option("--fs", in.fs, "Sample rate in Hz (overrides the file header)")->check(CLI::PositiveNumber);
  cmd.add_option("--channel", in.channel, "WAV channel index")->check(CLI::NonNegativeNumber);
}

std::string fixed(double value, int digits) {
  if (std::isinf(value)) return value > 0 ? "+inf" : "-inf";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

std::vector<Tone> parse_tone_list(const std::string& text) {
  std::vector<Tone> tones;
  std::stringstream list(text);
  std::string item;
  while (std::getline(list, item, ',')) {
    std::stringstream fields(item);
    std::string field;
    std::vector<double> values;
    while (std::getline(fields, field, ':')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(field, &used));
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidConfig, "bad tone '" + item + "' (expected f[:amplitude[:phase]])");
      }
    }
    if (values.empty() || values.size() > 3) {
      throw Error(ErrorKind::InvalidConfig, "bad tone '" + item + "' (expected f[:amplitude[:phase]])");
    }
    tones.push_back(Tone{values[0], values.size() > 1 ? values[1] : 1.0, values.size() > 2 ? values[2] : 0.0});
  }
  if (tones.empty()) throw Error(ErrorKind::InvalidConfig, "empty tone list");
  return tones;
}

std::optional<double> parse_snr(const std::string& text) {
  if (text == "none") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::InvalidConfig, "--snr expects a dB value or 'none'");
}

// Noise stream for a given target SNR. The Case-1 levels reuse the corpus
// sub-seeds so `synth --snr 12 --seed s` reproduces the corpus member.
std::uint64_t noise_stream(double snr_db) {
  for (std::size_t i = 0; i < kCase1SnrLevelsDb.size(); ++i) {
    if (kCase1SnrLevelsDb[i] == snr_db) return i + 1;
  }
  return kCase1SnrLevelsDb.size() + 1;
}

struct SynthOptions {
  std::string snr = "none";
  std::string tones = "case1";
  double duration = kCase1DurationS;
  double fs = kCase1SampleRateHz;
  std::string out;
  std::string convention = "paper";
  std::string amplitudes = "floored";
  bool random_phases = false;
};

int cmd_synth(const SynthOptions& o, const GlobalOptions& g, std::ostream& out) {
  SynthConfig config;
  config.duration_s = o.duration;
  config.sample_rate_hz = o.fs;
  config.seed = g.seed;
  config.snr_db = parse_snr(o.snr);
  config.convention = parse_snr_convention(o.convention);
  if (o.amplitudes != "floored" && o.amplitudes != "full") {
    throw Error(ErrorKind::InvalidConfig, "--amplitude-range expects 'floored' or 'full'");
  }
  if (o.tones == "case1") {
    config.tones = case1_tones(g.seed, o.amplitudes == "full" ? AmplitudeRange::Full : AmplitudeRange::Floored,
                               o.random_phases);
  } else {
    config.tones = parse_tone_list(o.tones);
  }

  const Signal clean = tone_sum(config);
  NoiseInjection noisy{clean, 0.0, kPositiveInfinity};
  if (config.snr_db) {
    noisy = add_noise(clean, *config.snr_db, derive_seed(g.seed, noise_stream(*config.snr_db)), config.convention);
  }

  write_csv_signal(noisy.signal, o.out);
  SynthRecord record{config.tones,   config.sample_rate_hz, noisy.signal.size(), config.snr_db,
                     noisy.realized_snr_db, noisy.alpha,   config.convention,   g.seed};
  write_synth_metadata(record, o.out + ".meta.json");
  if (!g.quiet) {
    out << "wrote " << o.out << " (" << noisy.signal.size() << " samples, fs=" << format_number(config.sample_rate_hz)
        << " Hz, snr=" << (config.snr_db ? fixed(noisy.realized_snr_db, 3) + " dB" : std::string("none")) << ")\n";
  }
  return kOk;
}

int cmd_gate(const InputOptions& in, const GlobalOptions& g, std::ostream& out) {
  const Signal signal = read_signal(in.file());
  const GateVerdict verdict = gate(spectrum(signal));
  if (!g.quiet) {
    out << "s_base=" << fixed(verdict.s_base, 6) << " s_base_db=" << fixed(verdict.s_base_db, 4) << " "
        << (verdict.relevant ? "RELEVANT" : "IRRELEVANT") << "\n";
  }
  return verdict.relevant ? kOk : kIrrelevant;
}

void print_rankings(std::ostream& out, const AnalysisReport& report, bool brf_side) {
  out << (brf_side ? "BRF ranking" : "RMS ranking") << " (top " << report.metadata.top_n << ")\n";
  const double nyquist = report.metadata.sample_rate_hz / 2.0;
  for (std::size_t i = 0; i < report.levels.size(); ++i) {
    const int k = report.levels[i].level;
    const Ranking& ranking = brf_side ? report.levels[i].ranking : report.rms_rankings[i];
    out << "level " << k << " (BW " << format_number(nyquist / static_cast<double>(1L << k)) << " hz):";
    if (ranking.empty()) out << "  -";
    for (std::size_t r = 0; r < ranking.size(); ++r) out << "  " << r + 1 << ": " << band_label(ranking[r]);
    out << "\n";
  }
}

struct AnalyzeOptions {
  InputOptions input;
  int max_level = kDefaultMaxLevel;
  int top = kDefaultTopN;
  std::string out;
  std::string heatmap;
  std::string heatmap_kind = "brf";
  std::string svg;
};

int cmd_analyze(const AnalyzeOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const HeatmapKind kind = parse_heatmap_kind(o.heatmap_kind);
  const Signal signal = read_signal(o.input.file());
  const AnalysisReport report = analyze(signal, o.max_level, o.top, o.input.path);

  if (report.metadata.level_trimmed) {
    err << "warning: max level " << o.max_level << " leaves bands narrower than 2 bins for N=" << signal.size()
        << "; trimmed to " << report.metadata.max_level << "\n";
  }
  write_report(report, o.out);
  if (!o.heatmap.empty()) write_heatmap(report, kind, o.heatmap);
  if (!o.svg.empty()) write_heatmap_svg(report, kind, o.svg);

  if (!g.quiet) {
    out << "source: " << report.metadata.source_id << "  fs=" << format_number(report.metadata.sample_rate_hz)
        << " Hz  N=" << report.metadata.sample_count << "  K=" << report.metadata.max_level
        << "  top=" << report.metadata.top_n << "\n";
    out << "gate: s_base=" << fixed(report.gate.s_base, 6) << " (" << fixed(report.gate.s_base_db, 4) << " dB) "
        << (report.gate.relevant ? "RELEVANT" : "IRRELEVANT") << "\n";
    if (!report.gate.relevant) {
      out << "signal classified as noise\n";
    } else {
      print_rankings(out, report, true);
      print_rankings(out, report, false);
    }
  }
  return report.gate.relevant ? kOk : kIrrelevant;
}

struct CompareOptions {
  std::string report;
  std::optional<int> top;
  std::string format = "pretty";
};

int cmd_compare(const CompareOptions& o, std::ostream& out) {
  const AnalysisReport report = read_report(o.report);
  const int top = o.top.value_or(report.metadata.top_n);
  if (top < 1) throw Error(ErrorKind::InvalidConfig, "--top must be at least 1");
  const auto rows = compare_rankings(report, top);

  if (o.format == "csv") {
    out << "analysis";
    for (const auto& r : rows) out << ',' << r.level;
    out << "\nVA";
    for (const auto& r : rows) out << ',' << format_number(r.values);
    out << "\nPA";
    for (const auto& r : rows) out << ',' << format_number(r.position);
    out << "\n";
    return kOk;
  }
  out << "k-level";
  for (const auto& r : rows) {
    std::string cell = std::to_string(r.level);
    out << std::string(9 - std::min<std::size_t>(cell.size(), 8), ' ') << cell;
  }
  auto row = [&](const char* name, auto value) {
    out << "\n" << name << "     ";
    for (const auto& r : rows) {
      std::string cell = fixed(value(r), 1) + "%";
      out << std::string(9 - std::min<std::size_t>(cell.size(), 8), ' ') << cell;
    }
  };
  row("VA", [](const LevelAgreement& r) { return r.values; });
  row("PA", [](const LevelAgreement& r) { return r.position; });
  out << "\n";
  return kOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidConfig:
    case ErrorKind::Configuration:
    case ErrorKind::LevelTooDeep:
      return kUsageError;
    default:
      return kIoError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Band Relevance Factor: entropy-based selection of informative frequency bands"};
  app.name(args.empty() ? "brf" : args.front());
  app.require_subcommand(1);
  // Global flags are also accepted after the subcommand name.
  app.fallthrough();
  app.set_version_flag("--version",
                       std::string(kToolName) + " " + kToolVersion + " (report schema " + kReportSchemaVersion + ")");

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Random seed")->default_val(0);
  app.add_flag("--quiet", global.quiet, "Suppress stdout summaries");

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a multi-tone signal with calibrated Gaussian noise");
  synth_cmd->add_option("--snr", synth.snr, "Target SNR in dB, or 'none'")->capture_default_str();
  synth_cmd->add_option("--tones", synth.tones, "'case1' or f[:amp[:phase]],...")->capture_default_str();
  synth_cmd->add_option("--duration", synth.duration, "Duration in seconds")->capture_default_str();
  synth_cmd->add_option("--fs", synth.fs, "Sample rate in Hz")->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "Output CSV path")->required();
  synth_cmd->add_option("--snr-convention", synth.convention, "paper: 10log10(rms ratio); power: 20log10(rms ratio)")
      ->check(CLI::IsMember({"paper", "power"}))
      ->capture_default_str();
  synth_cmd->add_option("--amplitude-range", synth.amplitudes, "floored: (0.05,1]; full: (0,1]")
      ->check(CLI::IsMember({"floored", "full"}))
      ->capture_default_str();
  synth_cmd->add_flag("--random-phases", synth.random_phases, "Draw tone phases uniformly in [0, 2pi)");

  InputOptions gate_in;
  auto* gate_cmd = app.add_subcommand("gate", "Classify a signal as relevant or noise (-3 dB entropy rule)");
  add_input_options(*gate_cmd, gate_in);

  AnalyzeOptions analyze_opts;
  auto* analyze_cmd = app.add_subcommand("analyze", "Score and rank dyadic bands; write a JSON report");
  add_input_options(*analyze_cmd, analyze_opts.input);
  analyze_cmd->add_option("--max-level", analyze_opts.max_level, "Deepest level K")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  analyze_cmd->add_option("--top", analyze_opts.top, "Bands per ranking")->check(CLI::PositiveNumber)->capture_default_str();
  analyze_cmd->add_option("--out", analyze_opts.out, "Report JSON path")->required();
  analyze_cmd->add_option("--heatmap", analyze_opts.heatmap, "Heatmap CSV path");
  analyze_cmd->add_option("--heatmap-kind", analyze_opts.heatmap_kind, "brf or rms")
      ->check(CLI::IsMember({"brf", "rms"}))
      ->capture_default_str();
  analyze_cmd->add_option("--svg", analyze_opts.svg, "Heatmap SVG path");

  CompareOptions compare;
  auto* compare_cmd = app.add_subcommand("compare", "VA/PA agreement of BRF and rms rankings in a report");
  compare_cmd->add_option("report", compare.report, "Report JSON")->required();
  compare_cmd->add_option("--top", compare.top, "Ranking cap (default: the report's top_n)")->check(CLI::PositiveNumber);
  compare_cmd->add_option("--format", compare.format, "pretty or csv")
      ->check(CLI::IsMember({"pretty", "csv"}))
      ->capture_default_str();

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsageError;
  }

  try {
    if (*synth_cmd) return cmd_synth(synth, global, out);
    if (*gate_cmd) return cmd_gate(gate_in, global, out);
    if (*analyze_cmd) return cmd_analyze(analyze_opts, global, out, err);
    if (*compare_cmd) return cmd_compare(compare, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kUsageError;
}

}  // namespace brf::cli
