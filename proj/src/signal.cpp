#include "brf/signal.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "brf/bands.hpp"

namespace brf {

Signal::Signal(Eigen::VectorXd samples, double sample_rate_hz)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz) {
  if (samples_.size() < 2) {
    throw Error(ErrorKind::InvalidInput, "signal needs at least 2 samples");
  }
  if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_)) {
    throw Error(ErrorKind::InvalidInput, "sample rate must be positive and finite");
  }
  if (!samples_.allFinite()) {
    throw Error(ErrorKind::InvalidInput, "signal contains non-finite samples");
  }
}

double Signal::rms() const { return std::sqrt(mean_square()); }

Signal Signal::scaled(double factor) const { return Signal(samples_ * factor, sample_rate_hz_); }

Spectrum::Spectrum(Eigen::VectorXd bin_energy, double sample_rate_hz, std::size_t sample_count)
    : bin_energy_(std::move(bin_energy)),
      sample_rate_hz_(sample_rate_hz),
      sample_count_(sample_count) {
  if (sample_count_ < 2 || bin_energy_.size() != static_cast<Eigen::Index>(sample_count_ / 2 + 1)) {
    throw Error(ErrorKind::InvalidInput, "spectrum bin count does not match sample count");
  }
  if (!(sample_rate_hz_ > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "sample rate must be positive");
  }
  if (!bin_energy_.allFinite() || (bin_energy_.array() < 0.0).any()) {
    throw Error(ErrorKind::InvalidInput, "bin energies must be finite and non-negative");
  }
}

Spectrum spectrum(const Signal& signal) {
  const auto n = static_cast<Eigen::Index>(signal.size());
  std::vector<double> input(signal.samples().data(), signal.samples().data() + n);
  std::vector<std::complex<double>> bins;

  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  fft.fwd(bins, input);

  // Even N: bins 0..N/2, odd N: bins 0..(N-1)/2, i.e. N/2 + 1 in both cases
  // after integer division.
  const Eigen::Index bin_count = n / 2 + 1;
  const double scale = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  Eigen::VectorXd energy(bin_count);
  for (Eigen::Index i = 0; i < bin_count; ++i) {
    const bool single = i == 0 || (n % 2 == 0 && i == n / 2);
    energy[i] = (single ? 1.0 : 2.0) * std::norm(bins[static_cast<std::size_t>(i)]) * scale;
  }
  return Spectrum(std::move(energy), signal.sample_rate_hz(), signal.size());
}

double rms(const Spectrum& spectrum, const BandSpec& band) {
  const BinRange range = bin_range(spectrum.sample_count(), band);
  if (range.empty()) {
    throw Error(ErrorKind::ZeroWidthBand, "band " + band_label(band) + " holds no bins");
  }
  const auto begin = static_cast<Eigen::Index>(range.begin);
  const auto count = static_cast<Eigen::Index>(range.size());
  return std::sqrt(spectrum.bin_energy().segment(begin, count).sum());
}

double rms(const Spectrum& spectrum) { return std::sqrt(spectrum.total_energy()); }

double rms_db(double value) {
  if (value < 0.0 || std::isnan(value)) {
    throw Error(ErrorKind::InvalidInput, "rms must be non-negative");
  }
  if (value == 0.0) return kNegativeInfinity;
  return 20.0 * std::log10(value);
}

}  // namespace brf
