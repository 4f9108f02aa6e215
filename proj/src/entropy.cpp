#include "brf/entropy.hpp"

#include <cmath>
#include <string>

namespace brf {

EnergyDistribution::EnergyDistribution(Eigen::VectorXd probabilities)
    : probabilities_(std::move(probabilities)) {
  if (probabilities_.size() < 2) {
    throw Error(ErrorKind::DegenerateBand, "distribution needs at least 2 states");
  }
  if (!probabilities_.allFinite() || (probabilities_.array() < 0.0).any()) {
    throw Error(ErrorKind::InvalidInput, "probabilities must be finite and non-negative");
  }
  if (std::abs(probabilities_.sum() - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidInput, "probabilities must sum to 1");
  }
}

EnergyDistribution EnergyDistribution::from_energies(const Eigen::Ref<const Eigen::VectorXd>& energies) {
  if (energies.size() < 2) {
    throw Error(ErrorKind::DegenerateBand, "distribution needs at least 2 bins");
  }
  const double total = energies.sum();
  if (!(total > 0.0)) {
    throw Error(ErrorKind::ZeroEnergyBand, "band holds no energy");
  }
  return EnergyDistribution(energies / total);
}

EnergyDistribution energy_distribution(const Spectrum& spectrum, const BandSpec& band) {
  const BinRange range = band_slice(spectrum, band);
  return EnergyDistribution::from_energies(spectrum.bin_energy().segment(
      static_cast<Eigen::Index>(range.begin), static_cast<Eigen::Index>(range.size())));
}

EnergyDistribution energy_distribution(const Spectrum& spectrum) {
  return EnergyDistribution::from_energies(spectrum.bin_energy());
}

double spectral_entropy(const EnergyDistribution& dist) {
  return normalized_entropy(dist.probabilities());
}

double entropy_db(double s) {
  if (s < 0.0 || std::isnan(s)) {
    throw Error(ErrorKind::InvalidInput, "entropy must be non-negative");
  }
  if (s == 0.0) return kNegativeInfinity;
  return 10.0 * std::log10(s);
}

}  // namespace brf
