#include "brf/bands.hpp"

#include <array>
#include <charconv>
#include <cstdint>
#include <string>

namespace brf {

namespace {

std::string shortest(double value) {
  std::array<char, 32> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), result.ptr);
}

void check_level(int k) {
  if (k < 0 || k > kLevelCeiling) {
    throw Error(ErrorKind::LevelTooDeep, "level " + std::to_string(k) + " outside [0, " +
                                             std::to_string(kLevelCeiling) + "]");
  }
}

// First bin whose centre frequency is >= index * nyquist / 2^k, i.e.
// ceil(index * N / 2^(k+1)).
std::size_t first_bin(std::size_t sample_count, int k, std::uint64_t index) {
  const std::uint64_t numerator = index * static_cast<std::uint64_t>(sample_count);
  const std::uint64_t denominator = std::uint64_t{1} << (k + 1);
  return static_cast<std::size_t>((numerator + denominator - 1) / denominator);
}

}  // namespace

BandSpec BandSpec::make(double nyquist_hz, int level, long index) {
  check_level(level);
  const long count = 1L << level;
  if (index < 0 || index >= count) {
    throw Error(ErrorKind::InvalidInput, "band index out of range for level");
  }
  const double width = nyquist_hz / static_cast<double>(count);
  BandSpec band;
  band.level = level;
  band.index = index;
  band.f_lo_hz = static_cast<double>(index) * width;
  band.f_hi_hz = index + 1 == count ? nyquist_hz : static_cast<double>(index + 1) * width;
  return band;
}

bool BandSpec::contains(double frequency_hz) const noexcept {
  return frequency_hz >= f_lo_hz && (frequency_hz < f_hi_hz || (is_last() && frequency_hz <= f_hi_hz));
}

std::string band_label(const BandSpec& band) {
  return shortest(band.f_lo_hz) + ":" + shortest(band.f_hi_hz);
}

std::vector<BandSpec> bands_at_level(double nyquist_hz, int k) {
  check_level(k);
  if (!(nyquist_hz > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "nyquist frequency must be positive");
  }
  const long count = 1L << k;
  std::vector<BandSpec> bands;
  bands.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) bands.push_back(BandSpec::make(nyquist_hz, k, i));
  return bands;
}

std::vector<BandSpec> bands_at_level(const Spectrum& spectrum, int k) {
  const int deepest = max_level_for(spectrum.sample_count());
  if (k > deepest) {
    throw Error(ErrorKind::LevelTooDeep, "level " + std::to_string(k) +
                                             " leaves bands narrower than 2 bins (max " +
                                             std::to_string(deepest) + ")");
  }
  return bands_at_level(spectrum.nyquist_hz(), k);
}

int max_level_for(std::size_t sample_count) {
  int deepest = -1;
  for (int k = 0; k <= kLevelCeiling; ++k) {
    const std::uint64_t count = std::uint64_t{1} << k;
    if (2 * count > sample_count / 2 + 1) break;
    // Interior band widths differ by at most one bin; checking every band
    // keeps the rule exact for any N.
    bool ok = true;
    for (std::uint64_t i = 0; i < count && ok; ++i) {
      const std::size_t begin = first_bin(sample_count, k, i);
      const std::size_t end = i + 1 == count ? sample_count / 2 + 1 : first_bin(sample_count, k, i + 1);
      ok = end >= begin + 2;
    }
    if (!ok) break;
    deepest = k;
  }
  return deepest;
}

BinRange bin_range(std::size_t sample_count, const BandSpec& band) {
  check_level(band.level);
  const auto index = static_cast<std::uint64_t>(band.index);
  BinRange range;
  range.begin = first_bin(sample_count, band.level, index);
  range.end = band.is_last() ? sample_count / 2 + 1 : first_bin(sample_count, band.level, index + 1);
  return range;
}

BinRange band_slice(const Spectrum& spectrum, const BandSpec& band) {
  const BinRange range = bin_range(spectrum.sample_count(), band);
  if (range.size() < 2) {
    throw Error(ErrorKind::DegenerateBand, "band " + band_label(band) + " holds fewer than 2 bins");
  }
  return range;
}

}  // namespace brf
