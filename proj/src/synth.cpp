#include "brf/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace brf {

const char* to_string(SnrConvention convention) noexcept {
  return convention == SnrConvention::Paper ? "paper" : "power";
}

SnrConvention parse_snr_convention(const std::string& text) {
  if (text == "paper") return SnrConvention::Paper;
  if (text == "power") return SnrConvention::Power;
  throw Error(ErrorKind::InvalidConfig, "unknown snr convention '" + text + "'");
}

std::size_t sample_count_for(double duration_s, double sample_rate_hz) {
  if (!(duration_s > 0.0) || !(sample_rate_hz > 0.0)) {
    throw Error(ErrorKind::InvalidConfig, "duration and sample rate must be positive");
  }
  const double exact = duration_s * sample_rate_hz;
  const double rounded = std::round(exact);
  if (rounded < 2.0 || std::abs(exact - rounded) > 1e-9 * std::max(1.0, exact)) {
    throw Error(ErrorKind::InvalidConfig, "duration * sample rate must be an integer sample count >= 2");
  }
  return static_cast<std::size_t>(rounded);
}

Signal tone_sum(const SynthConfig& config) {
  if (config.tones.empty()) throw Error(ErrorKind::InvalidConfig, "tone list is empty");
  const std::size_t n = sample_count_for(config.duration_s, config.sample_rate_hz);
  const double nyquist = config.sample_rate_hz / 2.0;
  for (const auto& tone : config.tones) {
    if (!(tone.frequency_hz >= 0.0) || !(tone.frequency_hz < nyquist)) {
      throw Error(ErrorKind::InvalidConfig, "tone frequency must lie in [0, fs/2)");
    }
    if (!(tone.amplitude > 0.0) || tone.amplitude > 1.0) {
      throw Error(ErrorKind::InvalidConfig, "tone amplitude must lie in (0, 1]");
    }
  }

  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (const auto& tone : config.tones) {
    const double w = 2.0 * std::numbers::pi * tone.frequency_hz / config.sample_rate_hz;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      x[i] += tone.amplitude * std::sin(w * static_cast<double>(i) + tone.phase_rad);
    }
  }
  return Signal(std::move(x), config.sample_rate_hz);
}

double snr_db_of(double rms_signal, double rms_noise, SnrConvention convention) {
  const double ratio = rms_signal / rms_noise;
  return (convention == SnrConvention::Paper ? 10.0 : 20.0) * std::log10(ratio);
}

NoiseInjection add_noise(const Signal& signal, double snr_db, std::uint64_t seed,
                         SnrConvention convention) {
  if (std::isinf(snr_db) && snr_db > 0.0) return NoiseInjection{signal, 0.0, kPositiveInfinity};
  if (std::isnan(snr_db) || std::isinf(snr_db)) {
    throw Error(ErrorKind::InvalidConfig, "snr must be finite or +inf");
  }
  const double rms_signal = signal.rms();
  if (!(rms_signal > 0.0)) throw Error(ErrorKind::InvalidInput, "cannot calibrate noise against a silent signal");

  const double divisor = convention == SnrConvention::Paper ? 10.0 : 20.0;
  const double alpha = rms_signal / std::pow(10.0, snr_db / divisor);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd noise(signal.samples().size());
  for (Eigen::Index i = 0; i < noise.size(); ++i) noise[i] = alpha * gauss(rng);

  const double rms_noise = std::sqrt(noise.squaredNorm() / static_cast<double>(noise.size()));
  return NoiseInjection{Signal(signal.samples() + noise, signal.sample_rate_hz()), alpha,
                        snr_db_of(rms_signal, rms_noise, convention)};
}

Signal gaussian_noise(std::size_t sample_count, double sample_rate_hz, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd x(static_cast<Eigen::Index>(sample_count));
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = gauss(rng);
  return Signal(std::move(x), sample_rate_hz);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

std::vector<Tone> case1_tones(std::uint64_t seed, AmplitudeRange range, bool random_phases) {
  std::mt19937_64 rng(derive_seed(seed, 0));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const double floor = range == AmplitudeRange::Floored ? 0.05 : 0.0;

  std::vector<Tone> tones;
  tones.reserve(kCase1Frequencies.size());
  for (double f : kCase1Frequencies) {
    Tone tone;
    tone.frequency_hz = f;
    // unit() is in [0, 1), so this lands in (floor, 1].
    tone.amplitude = 1.0 - unit(rng) * (1.0 - floor);
    tones.push_back(tone);
  }
  if (random_phases) {
    for (auto& tone : tones) tone.phase_rad = phase(rng);
  }
  return tones;
}

Case1Corpus case1_corpus(std::uint64_t seed, const CorpusOptions& options) {
  SynthConfig config;
  config.tones = case1_tones(seed, options.amplitudes, options.random_phases);
  config.duration_s = kCase1DurationS;
  config.sample_rate_hz = kCase1SampleRateHz;
  config.seed = seed;
  config.convention = options.convention;
  Signal clean = tone_sum(config);

  static constexpr std::array<const char*, 4> kNames = {"low", "medium", "high", "mixed"};
  auto member = [&](std::size_t i) {
    return CorpusMember{kNames[i], kCase1SnrLevelsDb[i],
                        add_noise(clean, kCase1SnrLevelsDb[i], derive_seed(seed, i + 1), options.convention)};
  };
  std::array<CorpusMember, 4> members = {member(0), member(1), member(2), member(3)};
  return Case1Corpus{std::move(config.tones), std::move(clean), std::move(members)};
}

}  // namespace brf
