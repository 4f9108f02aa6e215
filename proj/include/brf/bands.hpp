#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "brf/signal.hpp"

namespace brf {

// Deepest level ever considered, independent of signal length.
inline constexpr int kLevelCeiling = 30;

// Default decomposition depth, the deepest level used in the case studies.
inline constexpr int kDefaultMaxLevel = 8;

// One dyadic band: [0, nyquist] split into 2^level equal intervals.
struct BandSpec {
  int level = 0;
  long index = 0;
  double f_lo_hz = 0.0;
  double f_hi_hz = 0.0;

  static BandSpec make(double nyquist_hz, int level, long index);

  bool is_last() const noexcept { return index == (1L << level) - 1; }
  double width_hz() const noexcept { return f_hi_hz - f_lo_hz; }
  bool contains(double frequency_hz) const noexcept;

  friend bool operator==(const BandSpec&, const BandSpec&) = default;
};

// "f_lo:f_hi" with the shortest round-trip decimal for each edge.
std::string band_label(const BandSpec& band);

// Half-open bin index range [begin, end).
struct BinRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end > begin ? end - begin : 0; }
  bool empty() const noexcept { return size() == 0; }

  friend bool operator==(const BinRange&, const BinRange&) = default;
};

// All 2^k bands of level k covering [0, nyquist_hz].
std::vector<BandSpec> bands_at_level(double nyquist_hz, int k);

// Same, but rejects levels whose bands would hold fewer than 2 bins of
// `spectrum`.
std::vector<BandSpec> bands_at_level(const Spectrum& spectrum, int k);

// Deepest level at which every band of an N-sample spectrum has >= 2 bins.
int max_level_for(std::size_t sample_count);

// Bin i (centre i*df) belongs to the band iff f_lo <= i*df < f_hi; the last
// band of a level also takes the Nyquist bin. Computed in integer arithmetic
// from (level, index) so band edges never depend on rounding. May be empty.
BinRange bin_range(std::size_t sample_count, const BandSpec& band);

// bin_range with the >= 2 bin requirement of the entropy measures.
BinRange band_slice(const Spectrum& spectrum, const BandSpec& band);

}  // namespace brf
