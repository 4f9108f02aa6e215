#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "brf/signal.hpp"

namespace brf {

inline constexpr std::array<double, 11> kCase1Frequencies = {
    30.0, 120.0, 500.0, 700.0, 750.0, 2300.0, 2450.0, 2600.0, 2700.0, 2800.0, 3450.0};
inline constexpr double kCase1SampleRateHz = 20480.0;
inline constexpr double kCase1DurationS = 1.0;

struct Tone {
  double frequency_hz = 0.0;
  double amplitude = 1.0;
  double phase_rad = 0.0;

  friend bool operator==(const Tone&, const Tone&) = default;
};

// How the SNR figure relates the signal and noise rms values.
//   paper: snr = 10 log10(rms_signal / rms_noise)
//   power: snr = 20 log10(rms_signal / rms_noise)
enum class SnrConvention { Paper, Power };

const char* to_string(SnrConvention convention) noexcept;
SnrConvention parse_snr_convention(const std::string& text);

// Lower bound of the per-tone amplitude draw.
enum class AmplitudeRange {
  Floored,  // (0.05, 1]
  Full,     // (0, 1]
};

struct SynthConfig {
  std::vector<Tone> tones;
  double duration_s = kCase1DurationS;
  double sample_rate_hz = kCase1SampleRateHz;
  std::optional<double> snr_db;  // nullopt: noiseless
  std::uint64_t seed = 0;
  SnrConvention convention = SnrConvention::Paper;
};

// Number of samples for duration * fs; throws InvalidConfig unless it is a
// positive integer.
std::size_t sample_count_for(double duration_s, double sample_rate_hz);

// x[n] = sum_j A_j sin(2 pi f_j n / fs + theta_j).
Signal tone_sum(const SynthConfig& config);

struct NoiseInjection {
  Signal signal;
  double alpha = 0.0;
  double realized_snr_db = kPositiveInfinity;
};

// x + alpha G, G ~ N(0, 1) i.i.d. from `seed`; alpha = rms_signal / 10^(snr/10)
// (paper convention) or rms_signal / 10^(snr/20) (power convention). An
// infinite SNR returns the signal unchanged.
NoiseInjection add_noise(const Signal& signal, double snr_db, std::uint64_t seed,
                         SnrConvention convention = SnrConvention::Paper);

// SNR of a signal / noise pair under `convention`.
double snr_db_of(double rms_signal, double rms_noise, SnrConvention convention);

// Pure N(0,1) noise.
Signal gaussian_noise(std::size_t sample_count, double sample_rate_hz, std::uint64_t seed);

// Case-1 tone set with amplitudes drawn from `seed`.
std::vector<Tone> case1_tones(std::uint64_t seed, AmplitudeRange range = AmplitudeRange::Floored,
                              bool random_phases = false);

struct CorpusMember {
  std::string name;  // low / medium / high / mixed
  double target_snr_db = 0.0;
  NoiseInjection noisy;
};

struct Case1Corpus {
  std::vector<Tone> tones;
  Signal clean;
  std::array<CorpusMember, 4> members;
};

inline constexpr std::array<double, 4> kCase1SnrLevelsDb = {24.0, 12.0, 6.0, 0.0};

struct CorpusOptions {
  AmplitudeRange amplitudes = AmplitudeRange::Floored;
  bool random_phases = false;
  SnrConvention convention = SnrConvention::Paper;
};

// Four noisy variants (24, 12, 6, 0 dB) of one tone realization, each with
// its own noise sub-seed.
Case1Corpus case1_corpus(std::uint64_t seed, const CorpusOptions& options = {});

// Deterministic sub-seed for stream `stream` of a master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace brf
