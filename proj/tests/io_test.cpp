#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>

#include "brf/io.hpp"
#include "brf/synth.hpp"
#include "oracles.hpp"
#include "test_paths.hpp"

using namespace brf;
using testing::slurp;
using testing::spit;

namespace {

const testing::ScratchDir& scratch() {
  static const testing::ScratchDir dir("brf_io_test");
  return dir;
}

void le(std::string& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

// Minimal RIFF/WAVE writer for integer frames, independent of the library.
std::string wav_bytes(std::uint16_t format, std::uint16_t channels, std::uint32_t rate, std::uint16_t bits,
                      const std::vector<std::int32_t>& frames) {
  std::string data;
  for (std::int32_t v : frames) le(data, static_cast<std::uint32_t>(v), bits / 8);
  std::string out = "RIFF";
  le(out, 36 + data.size(), 4);
  out += "WAVEfmt ";
  le(out, 16, 4);
  le(out, format, 2);
  le(out, channels, 2);
  le(out, rate, 4);
  le(out, rate * channels * bits / 8, 4);
  le(out, channels * bits / 8, 2);
  le(out, bits, 2);
  out += "data";
  le(out, data.size(), 4);
  return out + data;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidInput;
}

AnalysisReport medium_report(std::uint64_t seed = 5, int levels = 8) {
  return analyze(case1_corpus(seed).members[1].noisy.signal, levels, 5, "medium");
}

}  // namespace

TEST_CASE("csv with fs header") {
  std::string text = "# fs=20480\n";
  for (int i = 0; i < 20480; ++i) text += std::to_string(std::sin(i * 0.01)) + "\n";
  const auto path = scratch() / "header.csv";
  spit(path, text);
  const Signal s = read_signal(SignalFile{path});
  CHECK(s.size() == 20480);
  CHECK(s.sample_rate_hz() == 20480.0);
}

TEST_CASE("csv fs comes from the header or the override") {
  const auto path = scratch() / "nofs.csv";
  spit(path, "1\n2\n3\n");
  CHECK(kind_of([&] { read_signal(SignalFile{path}); }) == ErrorKind::Configuration);
  SignalFile with_flag{path};
  with_flag.fs_override_hz = 100.0;
  CHECK(read_signal(with_flag).sample_rate_hz() == 100.0);
  CHECK(read_signal(with_flag).size() == 3);
}

TEST_CASE("csv parse errors carry the line number") {
  const auto path = scratch() / "bad.csv";
  spit(path, "# fs=10\n1.0\n\n2.5\nabc\n");
  try {
    read_signal(SignalFile{path});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    CHECK(std::string(e.what()).find(":5:") != std::string::npos);
  }
  CHECK(kind_of([&] { read_signal(SignalFile{scratch() / "missing.csv"}); }) == ErrorKind::Io);
}

TEST_CASE("csv round trip is exact") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const Signal x(oracle::random_samples(1000 + trial, rng) * 1e-3, 12345.678);
    const auto path = scratch() / "round.csv";
    write_csv_signal(x, path);
    const Signal y = read_signal(SignalFile{path});
    CHECK(y.sample_rate_hz() == x.sample_rate_hz());
    CHECK(y.samples() == x.samples());
  }
}

TEST_CASE("wav 16-bit mono") {
  const auto path = scratch() / "mono.wav";
  spit(path, wav_bytes(1, 1, 25000, 16, {0, 16384, -32768, 32767, -1}));
  const Signal s = read_signal(SignalFile{path});
  CHECK(s.sample_rate_hz() == 25000.0);
  REQUIRE(s.size() == 5);
  CHECK(s.samples()[0] == 0.0);
  CHECK(s.samples()[1] == 0.5);
  CHECK(s.samples()[2] == -1.0);
  CHECK(s.samples()[3] == 32767.0 / 32768.0);
  CHECK(s.samples()[4] == -1.0 / 32768.0);
}

TEST_CASE("wav 24-bit stereo channel selection") {
  const auto path = scratch() / "stereo.wav";
  // Frames interleave (left, right).
  spit(path, wav_bytes(1, 2, 8000, 24, {4194304, -4194304, -8388608, 1, 0, 0}));
  SignalFile file{path};
  file.channel = 1;
  const Signal right = read_signal(file);
  REQUIRE(right.size() == 3);
  CHECK(right.samples()[0] == -0.5);
  CHECK(right.samples()[1] == 1.0 / 8388608.0);
  file.channel = 0;
  CHECK(read_signal(file).samples()[1] == -1.0);
  file.channel = 2;
  CHECK(kind_of([&] { read_signal(file); }) == ErrorKind::Configuration);
}

TEST_CASE("wav format errors") {
  const auto flt = scratch() / "float.wav";
  spit(flt, wav_bytes(3, 1, 8000, 32, {0, 0, 0}));
  CHECK(kind_of([&] { read_signal(SignalFile{flt}); }) == ErrorKind::Format);
  const auto odd = scratch() / "odd.wav";
  spit(odd, wav_bytes(1, 1, 8000, 12, {0, 0, 0}));
  CHECK(kind_of([&] { read_signal(SignalFile{odd}); }) == ErrorKind::Format);
  const auto junk = scratch() / "junk.wav";
  spit(junk, "not a wave file at all");
  CHECK(kind_of([&] { read_signal(SignalFile{junk}); }) == ErrorKind::Format);
}

TEST_CASE("wav round trip to PCM quantization") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  Eigen::VectorXd x(4000);
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = u(rng);
  const auto path = scratch() / "rt.wav";
  write_wav_pcm16(Signal(x, 25000.0), path);
  const Signal y = read_signal(SignalFile{path});
  CHECK(y.sample_rate_hz() == 25000.0);
  CHECK((y.samples() - x).cwiseAbs().maxCoeff() <= 0.5 / 32768.0 + 1e-15);
}

TEST_CASE("report round trip") {
  const AnalysisReport report = medium_report();
  const auto path = scratch() / "report.json";
  write_report(report, path);
  CHECK(read_report(path) == report);

  const AnalysisReport noise = analyze(gaussian_noise(4096, 4096.0, 2), 8, 5, "noise");
  write_report(noise, path);
  CHECK(read_report(path) == noise);
  const std::string text = slurp(path);
  CHECK(text.find("\"relevant\": false") != std::string::npos);
  CHECK(text.find("\"levels\": []") != std::string::npos);
}

TEST_CASE("report sentinels are strings") {
  AnalysisReport report = medium_report(5, 1);
  report.gate.s_base_db = kNegativeInfinity;
  report.levels[1].scores[1].rms_diff_db = kPositiveInfinity;
  const auto json = report_to_json(report);
  CHECK(json["gate"]["s_base_db"] == "-inf");
  CHECK(json["levels"][1]["bands"][1]["rms_diff_db"] == "+inf");
  CHECK(report_from_json(nlohmann::json::parse(json.dump())) == report);
}

TEST_CASE("report files are byte-identical across runs") {
  write_report(medium_report(), scratch() / "a.json");
  write_report(medium_report(), scratch() / "b.json");
  CHECK(slurp(scratch() / "a.json") == slurp(scratch() / "b.json"));
}

TEST_CASE("loader checks the schema version") {
  auto json = report_to_json(medium_report(5, 2));
  CHECK(json["schema_version"] == kReportSchemaVersion);
  json["schema_version"] = "2.0";
  CHECK(kind_of([&] { report_from_json(nlohmann::json::parse(json.dump())); }) == ErrorKind::Format);
  json["schema_version"] = "1.7";
  CHECK_NOTHROW(report_from_json(nlohmann::json::parse(json.dump())));
  CHECK(kind_of([&] { report_from_json(nlohmann::json::parse("{\"schema_version\": \"1.0\"}")); }) ==
        ErrorKind::Format);
}

TEST_CASE("heatmap shape and replication") {
  const AnalysisReport report = medium_report(5, 3);
  const HeatmapMatrix m = build_heatmap(report, HeatmapKind::Brf);
  REQUIRE(m.rows.size() == 4);
  CHECK(m.column_labels.size() == 8);
  CHECK(m.column_labels.front() == "0:1280");
  for (std::size_t k = 0; k < m.rows.size(); ++k) {
    REQUIRE(m.rows[k].size() == 8);
    const std::size_t block = 8 >> k;
    for (std::size_t c = 0; c < 8; ++c) {
      CHECK(m.rows[k][c] == report.levels[k].brf_normalized[c / block]);
    }
  }
  for (double v : m.rows[0]) CHECK(v == 1.0);

  const auto path = scratch() / "hm.csv";
  write_heatmap(report, HeatmapKind::Brf, path);
  std::istringstream lines(slurp(path));
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 8);
    if (count == 0) CHECK(line.rfind("level,0:1280,", 0) == 0);
    if (count == 1) CHECK(line == "0,1,1,1,1,1,1,1,1");
    ++count;
  }
  CHECK(count == 5);

  const HeatmapMatrix rms = build_heatmap(report, HeatmapKind::Rms);
  for (const auto& row : rms.rows) {
    for (double v : row) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("heatmap cell over the 700 Hz tone is 1 when it dominates") {
  std::uint64_t seed = 0;
  auto loudest = [](const std::vector<Tone>& tones) {
    return std::max_element(tones.begin(), tones.end(), [](const Tone& a, const Tone& b) {
             return a.amplitude < b.amplitude;
           })->frequency_hz;
  };
  while (loudest(case1_tones(seed)) != 700.0) ++seed;
  const AnalysisReport report = medium_report(seed, 8);
  const HeatmapMatrix m = build_heatmap(report, HeatmapKind::Brf);
  REQUIRE(m.rows.size() == 9);
  CHECK(m.column_labels[17] == "680:720");
  CHECK(m.rows[8][17] == 1.0);
}

TEST_CASE("gate-failed heatmap is a marker") {
  const AnalysisReport noise = analyze(gaussian_noise(4096, 4096.0, 2));
  const auto path = scratch() / "noise.csv";
  write_heatmap(noise, HeatmapKind::Brf, path);
  CHECK(slurp(path) == "irrelevant\n");
}

TEST_CASE("svg rendering") {
  const auto path = scratch() / "hm.svg";
  write_heatmap_svg(medium_report(5, 4), HeatmapKind::Brf, path);
  const std::string svg = slurp(path);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("#2166ac") != std::string::npos);  // full positive
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK_THROWS_AS(write_heatmap_svg(medium_report(5, 1), HeatmapKind::Brf, scratch() / "no/such/dir.svg"), Error);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1562.5) == "1562.5");
  CHECK(format_number(kPositiveInfinity) == "+inf");
  CHECK(format_number(kNegativeInfinity) == "-inf");
  CHECK(parse_heatmap_kind("rms") == HeatmapKind::Rms);
  CHECK_THROWS_AS(parse_heatmap_kind("kurtosis"), Error);
}
