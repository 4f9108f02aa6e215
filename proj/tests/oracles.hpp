#pragma once

// Reference computations used only by the tests. None of these call into the
// library's numeric paths.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

// One-sided energy spectrum by direct DFT summation, O(N^2).
inline std::vector<double> naive_energy_spectrum(const Eigen::VectorXd& x) {
  const auto n = static_cast<std::size_t>(x.size());
  std::vector<double> out(n / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    long double re = 0.0L;
    long double im = 0.0L;
    for (std::size_t t = 0; t < n; ++t) {
      const long double angle = -2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k * t % n) /
                                static_cast<long double>(n);
      re += static_cast<long double>(x[static_cast<Eigen::Index>(t)]) * std::cos(angle);
      im += static_cast<long double>(x[static_cast<Eigen::Index>(t)]) * std::sin(angle);
    }
    const bool single = k == 0 || (n % 2 == 0 && k == n / 2);
    out[k] = static_cast<double>((single ? 1.0L : 2.0L) * (re * re + im * im) /
                                 (static_cast<long double>(n) * static_cast<long double>(n)));
  }
  return out;
}

inline double mean_square(const Eigen::VectorXd& x) {
  long double acc = 0.0L;
  for (Eigen::Index i = 0; i < x.size(); ++i) acc += static_cast<long double>(x[i]) * x[i];
  return static_cast<double>(acc / static_cast<long double>(x.size()));
}

// -sum p log p / log n with long double accumulation.
inline double normalized_entropy(const std::vector<double>& p) {
  long double h = 0.0L;
  for (double v : p) {
    if (v > 0.0) h -= static_cast<long double>(v) * std::log(static_cast<long double>(v));
  }
  return static_cast<double>(h / std::log(static_cast<long double>(p.size())));
}

// Bin indices whose centre frequency i*fs/N lies in [lo, hi), plus the last
// bin when `last` is set, found by scanning every bin.
inline std::vector<std::size_t> bins_by_frequency(std::size_t n, double fs, double lo, double hi, bool last) {
  std::vector<std::size_t> out;
  const std::size_t bins = n / 2 + 1;
  for (std::size_t i = 0; i < bins; ++i) {
    const long double f = static_cast<long double>(i) * fs / static_cast<long double>(n);
    if ((f >= lo && f < hi) || (last && i + 1 == bins)) out.push_back(i);
  }
  return out;
}

// Set and position agreement by brute force over integer labels.
inline std::pair<double, double> agreement(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.empty() && b.empty()) return {100.0, 100.0};
  const std::set<int> sa(a.begin(), a.end());
  int shared = 0;
  for (int v : b) shared += static_cast<int>(sa.count(v));
  int same = 0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) same += a[i] == b[i] ? 1 : 0;
  const double denom = static_cast<double>(std::max(a.size(), b.size()));
  return {100.0 * shared / denom, 100.0 * same / denom};
}

inline Eigen::VectorXd random_samples(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> offset(-2.0, 2.0);
  const double dc = offset(rng);
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = dc + g(rng);
  return x;
}

}  // namespace oracle
