#include "brf/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace brf {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0.0 ? "+inf" : "-inf";
  std::array<char, 32> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), result.ptr);
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::optional<double> parse_double(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto result = std::from_chars(first, last, value);
  if (result.ec != std::errc() || result.ptr != last) return std::nullopt;
  return value;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "failed writing '" + path.string() + "'");
}

std::vector<char> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  return std::vector<char>((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

Signal read_csv(const fs::path& path, std::optional<double> fs_override) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");

  std::optional<double> fs_header;
  std::vector<double> samples;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const std::string body = trim(text.substr(1));
      if (body.rfind("fs=", 0) == 0) {
        fs_header = parse_double(trim(body.substr(3)));
        if (!fs_header) {
          throw Error(ErrorKind::Parse, path.string() + ":" + std::to_string(line_number) + ": bad fs header");
        }
      }
      continue;
    }
    const auto value = parse_double(text);
    if (!value) {
      throw Error(ErrorKind::Parse, path.string() + ":" + std::to_string(line_number) +
                                        ": not a number: '" + text + "'");
    }
    samples.push_back(*value);
  }

  const auto fs_hz = fs_override ? fs_override : fs_header;
  if (!fs_hz) {
    throw Error(ErrorKind::Configuration, path.string() + ": no sample rate (add '# fs=<hz>' or pass --fs)");
  }
  return Signal(Eigen::Map<const Eigen::VectorXd>(samples.data(), static_cast<Eigen::Index>(samples.size())),
                *fs_hz);
}

std::uint32_t le_u32(const char* p) {
  const auto* b = reinterpret_cast<const unsigned char*>(p);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint16_t le_u16(const char* p) {
  const auto* b = reinterpret_cast<const unsigned char*>(p);
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

Signal read_wav(const fs::path& path, int channel, std::optional<double> fs_override) {
  const std::vector<char> bytes = read_bytes(path);
  auto fail = [&](const std::string& why) { return Error(ErrorKind::Format, path.string() + ": " + why); };
  if (bytes.size() < 12 || std::string(bytes.data(), 4) != "RIFF" || std::string(bytes.data() + 8, 4) != "WAVE") {
    throw fail("not a RIFF/WAVE file");
  }

  std::uint16_t format_tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
  const char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::string id(bytes.data() + pos, 4);
    const std::size_t size = le_u32(bytes.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) {
      if (id != "data") throw fail("truncated chunk '" + id + "'");
    }
    if (id == "fmt ") {
      if (size < 16) throw fail("short fmt chunk");
      format_tag = le_u16(bytes.data() + body);
      channels = le_u16(bytes.data() + body + 2);
      sample_rate = le_u32(bytes.data() + body + 4);
      bits = le_u16(bytes.data() + body + 14);
      // WAVE_FORMAT_EXTENSIBLE: the real format tag leads the sub-format GUID.
      if (format_tag == 0xFFFE && size >= 26) format_tag = le_u16(bytes.data() + body + 24);
    } else if (id == "data") {
      data = bytes.data() + body;
      data_size = std::min(size, bytes.size() - body);
    }
    pos = body + size + (size & 1U);
  }

  if (format_tag != 1) throw fail("only integer PCM is supported");
  if (bits != 8 && bits != 16 && bits != 24 && bits != 32) {
    throw fail("unsupported bit depth " + std::to_string(bits));
  }
  if (channels == 0 || data == nullptr) throw fail("missing fmt or data chunk");
  if (channel < 0 || channel >= channels) {
    throw Error(ErrorKind::Configuration, path.string() + ": channel " + std::to_string(channel) +
                                              " not in file with " + std::to_string(channels) + " channels");
  }

  const std::size_t width = bits / 8;
  const std::size_t frame = width * channels;
  const std::size_t frames = data_size / frame;
  const double full_scale = std::ldexp(1.0, bits - 1);
  Eigen::VectorXd samples(static_cast<Eigen::Index>(frames));
  for (std::size_t i = 0; i < frames; ++i) {
    const auto* b = reinterpret_cast<const unsigned char*>(data + i * frame + static_cast<std::size_t>(channel) * width);
    std::int64_t value = 0;
    if (bits == 8) {
      value = static_cast<std::int64_t>(b[0]) - 128;
    } else {
      std::uint32_t raw = 0;
      for (std::size_t k = 0; k < width; ++k) raw |= static_cast<std::uint32_t>(b[k]) << (8 * k);
      const std::uint32_t sign = std::uint32_t{1} << (bits - 1);
      value = static_cast<std::int64_t>(raw) - ((raw & sign) ? (std::int64_t{1} << bits) : 0);
    }
    samples[static_cast<Eigen::Index>(i)] = static_cast<double>(value) / full_scale;
  }
  return Signal(std::move(samples), fs_override ? *fs_override : static_cast<double>(sample_rate));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

ordered_json number(double value) {
  if (std::isinf(value)) return value > 0.0 ? "+inf" : "-inf";
  return value;
}

double to_number(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "+inf") return kPositiveInfinity;
    if (s == "-inf") return kNegativeInfinity;
    throw Error(ErrorKind::Format, "unexpected string '" + s + "' for a number");
  }
  return j.get<double>();
}

ordered_json ranking_json(const Ranking& ranking) {
  ordered_json out = ordered_json::array();
  for (const auto& band : ranking) out.push_back({{"index", band.index}, {"band", band_label(band)}});
  return out;
}

Ranking ranking_from(const nlohmann::json& j, double nyquist, int level) {
  Ranking out;
  for (const auto& entry : j) out.push_back(BandSpec::make(nyquist, level, entry.at("index").get<long>()));
  return out;
}

}  // namespace

Signal read_signal(const SignalFile& file) {
  SignalFormat format;
  if (file.format) {
    format = *file.format;
  } else {
    std::string ext = file.path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    format = ext == ".wav" ? SignalFormat::Wav : SignalFormat::Csv;
  }
  if (!fs::exists(file.path)) throw Error(ErrorKind::Io, "no such file '" + file.path.string() + "'");
  return format == SignalFormat::Wav ? read_wav(file.path, file.channel, file.fs_override_hz)
                                     : read_csv(file.path, file.fs_override_hz);
}

void write_csv_signal(const Signal& signal, const fs::path& path) {
  auto out = open_output(path);
  out << "# fs=" << format_number(signal.sample_rate_hz()) << '\n';
  for (Eigen::Index i = 0; i < signal.samples().size(); ++i) out << format_number(signal.samples()[i]) << '\n';
  finish(out, path);
}

void write_wav_pcm16(const Signal& signal, const fs::path& path) {
  const auto n = static_cast<std::uint32_t>(signal.size());
  const auto rate = static_cast<std::uint32_t>(std::lround(signal.sample_rate_hz()));
  std::string bytes = "RIFF";
  put_u32(bytes, 36 + 2 * n);
  bytes += "WAVEfmt ";
  put_u32(bytes, 16);
  put_u16(bytes, 1);
  put_u16(bytes, 1);
  put_u32(bytes, rate);
  put_u32(bytes, rate * 2);
  put_u16(bytes, 2);
  put_u16(bytes, 16);
  bytes += "data";
  put_u32(bytes, 2 * n);
  for (Eigen::Index i = 0; i < signal.samples().size(); ++i) {
    const double scaled = std::round(signal.samples()[i] * 32768.0);
    const auto q = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
    put_u16(bytes, static_cast<std::uint16_t>(q));
  }
  auto out = open_output(path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  finish(out, path);
}

ordered_json report_to_json(const AnalysisReport& report) {
  const auto& meta = report.metadata;
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["metadata"] = {{"source_id", meta.source_id},
                   {"sample_rate_hz", meta.sample_rate_hz},
                   {"sample_count", meta.sample_count},
                   {"max_level", meta.max_level},
                   {"requested_max_level", meta.requested_max_level},
                   {"top_n", meta.top_n},
                   {"level_trimmed", meta.level_trimmed}};
  j["gate"] = {{"s_base", report.gate.s_base},
               {"s_base_db", number(report.gate.s_base_db)},
               {"threshold_db", kGateThresholdDb},
               {"relevant", report.gate.relevant}};

  ordered_json levels = ordered_json::array();
  for (std::size_t li = 0; li < report.levels.size(); ++li) {
    const auto& level = report.levels[li];
    ordered_json bands = ordered_json::array();
    for (std::size_t i = 0; i < level.scores.size(); ++i) {
      const auto& s = level.scores[i];
      bands.push_back({{"index", s.band.index},
                       {"band", band_label(s.band)},
                       {"f_lo_hz", s.band.f_lo_hz},
                       {"f_hi_hz", s.band.f_hi_hz},
                       {"rms_band", s.rms_band},
                       {"rms_diff_db", number(s.rms_diff_db)},
                       {"s_filtered", s.s_filtered},
                       {"s_diff_db", number(s.s_diff_db)},
                       {"brf", number(s.brf)},
                       {"relevant", s.relevant},
                       {"brf_normalized", level.brf_normalized.at(i)},
                       {"rms_normalized", level.rms_normalized.at(i)}});
    }
    const Ranking rms_ranking = li < report.rms_rankings.size() ? report.rms_rankings[li] : Ranking{};
    levels.push_back({{"level", level.level},
                      {"bands", std::move(bands)},
                      {"brf_ranking", ranking_json(level.ranking)},
                      {"rms_ranking", ranking_json(rms_ranking)}});
  }
  j["levels"] = std::move(levels);
  return j;
}

AnalysisReport report_from_json(const nlohmann::json& j) {
  try {
    const auto version = j.at("schema_version").get<std::string>();
    const auto dot = version.find('.');
    const auto major = parse_double(version.substr(0, dot));
    if (!major || static_cast<int>(*major) != kReportSchemaMajor) {
      throw Error(ErrorKind::Format, "unsupported report schema version '" + version + "'");
    }

    AnalysisReport report;
    const auto& meta = j.at("metadata");
    report.metadata.source_id = meta.at("source_id").get<std::string>();
    report.metadata.sample_rate_hz = meta.at("sample_rate_hz").get<double>();
    report.metadata.sample_count = meta.at("sample_count").get<std::size_t>();
    report.metadata.max_level = meta.at("max_level").get<int>();
    report.metadata.requested_max_level = meta.at("requested_max_level").get<int>();
    report.metadata.top_n = meta.at("top_n").get<int>();
    report.metadata.level_trimmed = meta.at("level_trimmed").get<bool>();

    const auto& g = j.at("gate");
    report.gate.s_base = g.at("s_base").get<double>();
    report.gate.s_base_db = to_number(g.at("s_base_db"));
    report.gate.relevant = g.at("relevant").get<bool>();

    const double nyquist = report.metadata.sample_rate_hz / 2.0;
    for (const auto& lj : j.at("levels")) {
      LevelResult level;
      level.level = lj.at("level").get<int>();
      for (const auto& bj : lj.at("bands")) {
        BandScore s;
        s.band = BandSpec::make(nyquist, level.level, bj.at("index").get<long>());
        s.rms_band = bj.at("rms_band").get<double>();
        s.rms_diff_db = to_number(bj.at("rms_diff_db"));
        s.s_filtered = bj.at("s_filtered").get<double>();
        s.s_diff_db = to_number(bj.at("s_diff_db"));
        s.brf = to_number(bj.at("brf"));
        s.relevant = bj.at("relevant").get<bool>();
        level.scores.push_back(s);
        level.brf_normalized.push_back(bj.at("brf_normalized").get<double>());
        level.rms_normalized.push_back(bj.at("rms_normalized").get<double>());
      }
      level.ranking = ranking_from(lj.at("brf_ranking"), nyquist, level.level);
      report.rms_rankings.push_back(ranking_from(lj.at("rms_ranking"), nyquist, level.level));
      report.levels.push_back(std::move(level));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, std::string("malformed report: ") + e.what());
  }
}

void write_report(const AnalysisReport& report, const fs::path& path) {
  auto out = open_output(path);
  out << report_to_json(report).dump(2) << '\n';
  finish(out, path);
}

AnalysisReport read_report(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, path.string() + ": " + e.what());
  }
  return report_from_json(j);
}

const char* to_string(HeatmapKind kind) noexcept { return kind == HeatmapKind::Brf ? "brf" : "rms"; }

HeatmapKind parse_heatmap_kind(const std::string& text) {
  if (text == "brf") return HeatmapKind::Brf;
  if (text == "rms") return HeatmapKind::Rms;
  throw Error(ErrorKind::InvalidConfig, "unknown heatmap kind '" + text + "'");
}

HeatmapMatrix build_heatmap(const AnalysisReport& report, HeatmapKind kind) {
  HeatmapMatrix matrix;
  matrix.kind = kind;
  if (report.levels.empty()) return matrix;

  const int deepest = report.levels.back().level;
  const std::size_t columns = std::size_t{1} << deepest;
  for (const auto& band : bands_at_level(report.metadata.sample_rate_hz / 2.0, deepest)) {
    matrix.column_labels.push_back(band_label(band));
  }
  for (const auto& level : report.levels) {
    const auto& values = kind == HeatmapKind::Brf ? level.brf_normalized : level.rms_normalized;
    const std::size_t block = columns >> level.level;
    std::vector<double> row;
    row.reserve(columns);
    for (double v : values) row.insert(row.end(), block, v);
    matrix.rows.push_back(std::move(row));
  }
  return matrix;
}

void write_heatmap(const AnalysisReport& report, HeatmapKind kind, const fs::path& path) {
  auto out = open_output(path);
  if (!report.gate.relevant) {
    out << "irrelevant\n";
    finish(out, path);
    return;
  }
  const HeatmapMatrix matrix = build_heatmap(report, kind);
  out << "level";
  for (const auto& label : matrix.column_labels) out << ',' << label;
  out << '\n';
  for (std::size_t k = 0; k < matrix.rows.size(); ++k) {
    out << report.levels[k].level;
    for (double v : matrix.rows[k]) out << ',' << format_number(v);
    out << '\n';
  }
  finish(out, path);
}

namespace {

std::string cell_colour(double v) {
  // White at zero, towards blue for +1 and red for -1.
  static constexpr std::array<double, 3> kWhite = {255, 255, 255};
  static constexpr std::array<double, 3> kBlue = {33, 102, 172};
  static constexpr std::array<double, 3> kRed = {178, 24, 43};
  const auto& target = v >= 0.0 ? kBlue : kRed;
  const double t = std::clamp(std::abs(v), 0.0, 1.0);
  std::array<char, 8> hex{};
  std::snprintf(hex.data(), hex.size(), "#%02x%02x%02x",
                static_cast<int>(std::lround(kWhite[0] + t * (target[0] - kWhite[0]))),
                static_cast<int>(std::lround(kWhite[1] + t * (target[1] - kWhite[1]))),
                static_cast<int>(std::lround(kWhite[2] + t * (target[2] - kWhite[2]))));
  return hex.data();
}

}  // namespace

void write_heatmap_svg(const AnalysisReport& report, HeatmapKind kind, const fs::path& path) {
  constexpr double kPlotWidth = 1024.0;
  constexpr double kRowHeight = 24.0;
  constexpr double kLeft = 48.0;
  constexpr double kTop = 24.0;

  const HeatmapMatrix matrix = build_heatmap(report, kind);
  const std::size_t rows = matrix.rows.size();
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(kLeft + kPlotWidth + 8)
      << "\" height=\"" << format_number(kTop + kRowHeight * static_cast<double>(std::max<std::size_t>(rows, 1)) + 24)
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<text x=\"" << format_number(kLeft) << "\" y=\"16\">" << to_string(kind)
      << (report.gate.relevant ? " heatmap" : ": signal classified as noise") << "</text>\n";

  for (std::size_t k = 0; k < rows; ++k) {
    const auto& row = matrix.rows[k];
    const double y = kTop + kRowHeight * static_cast<double>(k);
    svg << "<text x=\"4\" y=\"" << format_number(y + 16) << "\">k=" << report.levels[k].level << "</text>\n";
    // Runs of equal value are drawn as one rectangle.
    const double cell = kPlotWidth / static_cast<double>(row.size());
    std::size_t start = 0;
    while (start < row.size()) {
      std::size_t end = start + 1;
      while (end < row.size() && row[end] == row[start]) ++end;
      svg << "<rect x=\"" << format_number(kLeft + cell * static_cast<double>(start)) << "\" y=\""
          << format_number(y) << "\" width=\"" << format_number(cell * static_cast<double>(end - start))
          << "\" height=\"" << format_number(kRowHeight) << "\" fill=\"" << cell_colour(row[start])
          << "\" stroke=\"#808080\" stroke-width=\"0.25\"/>\n";
      start = end;
    }
  }
  if (rows > 0) {
    const double y = kTop + kRowHeight * static_cast<double>(rows) + 14;
    svg << "<text x=\"" << format_number(kLeft) << "\" y=\"" << format_number(y) << "\">0 Hz</text>\n";
    svg << "<text x=\"" << format_number(kLeft + kPlotWidth) << "\" y=\"" << format_number(y)
        << "\" text-anchor=\"end\">" << format_number(report.metadata.sample_rate_hz / 2.0) << " Hz</text>\n";
  }
  svg << "</svg>\n";

  auto out = open_output(path);
  out << svg.str();
  finish(out, path);
}

void write_synth_metadata(const SynthRecord& record, const fs::path& path) {
  ordered_json tones = ordered_json::array();
  for (const auto& t : record.tones) {
    tones.push_back({{"frequency_hz", t.frequency_hz}, {"amplitude", t.amplitude}, {"phase_rad", t.phase_rad}});
  }
  ordered_json j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["seed"] = record.seed;
  j["sample_rate_hz"] = record.sample_rate_hz;
  j["sample_count"] = record.sample_count;
  j["tones"] = std::move(tones);
  j["snr_convention"] = to_string(record.convention);
  j["target_snr_db"] = record.target_snr_db ? ordered_json(*record.target_snr_db) : ordered_json("none");
  j["realized_snr_db"] = number(record.realized_snr_db);
  j["noise_alpha"] = record.alpha;

  auto out = open_output(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

}  // namespace brf
