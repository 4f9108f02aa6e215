#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstddef>

#include "brf/bands.hpp"
#include "brf/signal.hpp"

namespace brf {

// Normalized energy shares of n spectral bins.
class EnergyDistribution {
 public:
  // Validates: n >= 2, every entry >= 0, entries sum to 1 within 1e-12.
  explicit EnergyDistribution(Eigen::VectorXd probabilities);

  // Normalizes non-negative energies by their sum.
  static EnergyDistribution from_energies(const Eigen::Ref<const Eigen::VectorXd>& energies);

  const Eigen::VectorXd& probabilities() const noexcept { return probabilities_; }
  std::size_t source_bin_count() const noexcept { return static_cast<std::size_t>(probabilities_.size()); }

 private:
  Eigen::VectorXd probabilities_;
};

// Shannon entropy in nats, with 0 log 0 = 0.
template <typename Derived>
typename Derived::Scalar shannon_entropy(const Eigen::DenseBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  Scalar h(0);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const Scalar v = p.derived().coeff(i);
    if (v > Scalar(0)) h -= v * std::log(v);
  }
  return h;
}

// Shannon entropy divided by log(n): 0 for a one-hot distribution, 1 for a
// uniform one. Accepts any dense expression of probabilities.
template <typename Derived>
typename Derived::Scalar normalized_entropy(const Eigen::DenseBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  const Scalar s = shannon_entropy(p) / std::log(static_cast<Scalar>(p.size()));
  // Rounding can push a uniform distribution a few ulps past 1.
  return s < Scalar(0) ? Scalar(0) : (s > Scalar(1) ? Scalar(1) : s);
}

// Energy distribution over the band's bins only (n = band bin count).
// Throws ZeroEnergyBand when the band is silent, DegenerateBand when it holds
// fewer than 2 bins.
EnergyDistribution energy_distribution(const Spectrum& spectrum, const BandSpec& band);

// Distribution over every bin of the spectrum.
EnergyDistribution energy_distribution(const Spectrum& spectrum);

double spectral_entropy(const EnergyDistribution& dist);

// 10 log10(s); s = 0 maps to -inf.
double entropy_db(double s);

}  // namespace brf
