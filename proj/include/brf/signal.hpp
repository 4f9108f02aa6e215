#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <limits>

#include "brf/error.hpp"

namespace brf {

class BandSpec;

// Uniformly sampled real time series. Construction validates the sample
// buffer, so every Signal in flight is finite, non-trivial and has fs > 0.
class Signal {
 public:
  Signal(Eigen::VectorXd samples, double sample_rate_hz);

  const Eigen::VectorXd& samples() const noexcept { return samples_; }
  double sample_rate_hz() const noexcept { return sample_rate_hz_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(samples_.size()); }

  double mean_square() const { return samples_.squaredNorm() / static_cast<double>(samples_.size()); }
  double rms() const;

  // Returns a copy with every sample multiplied by `factor`.
  Signal scaled(double factor) const;

 private:
  Eigen::VectorXd samples_;
  double sample_rate_hz_;
};

// One-sided energy spectrum normalized so that the bins sum to the
// time-domain mean square of the source signal.
class Spectrum {
 public:
  Spectrum(Eigen::VectorXd bin_energy, double sample_rate_hz, std::size_t sample_count);

  const Eigen::VectorXd& bin_energy() const noexcept { return bin_energy_; }
  std::size_t bin_count() const noexcept { return static_cast<std::size_t>(bin_energy_.size()); }
  std::size_t sample_count() const noexcept { return sample_count_; }
  double sample_rate_hz() const noexcept { return sample_rate_hz_; }
  double bin_width_hz() const noexcept { return sample_rate_hz_ / static_cast<double>(sample_count_); }
  double nyquist_hz() const noexcept { return sample_rate_hz_ / 2.0; }
  double total_energy() const { return bin_energy_.sum(); }

 private:
  Eigen::VectorXd bin_energy_;
  double sample_rate_hz_;
  std::size_t sample_count_;
};

// Rectangular-window, single-frame DFT. bin_energy[i] = c_i |X_i|^2 / N^2,
// with c_i = 1 for DC (and Nyquist when N is even) and 2 otherwise.
Spectrum spectrum(const Signal& signal);

// Band rms from the spectrum: sqrt of the energy held by the band's bins.
double rms(const Spectrum& spectrum, const BandSpec& band);

// Full-band rms (square root of the total spectral energy).
double rms(const Spectrum& spectrum);

inline constexpr double kNegativeInfinity = -std::numeric_limits<double>::infinity();
inline constexpr double kPositiveInfinity = std::numeric_limits<double>::infinity();

// 20 log10(value / 1). Zero maps to -inf.
double rms_db(double value);

}  // namespace brf
