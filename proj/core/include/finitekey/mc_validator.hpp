#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace finitekey {

/// Monte-Carlo check of the parameter-estimation deviation bound.
///
/// Randomness: each trial t owns a std::mt19937_64 engine seeded with
/// `seed + t` (standard seeding). One engine output per sample; its top 53
/// bits k are compared against integer thresholds ceil(c_i * 2^53) where c_i
/// = p_0 + ... + p_i, i.e. the first i with k * 2^-53 < c_i wins. The last
/// outcome absorbs any rounding remainder.
/// Both the engine and the conversion are fully specified, so the rates are
/// reproducible across platforms and independent of the thread count.
struct TrialConfig {
  std::uint64_t m = 0;
  int d = 2;
  std::vector<double> true_distribution;
  double eps_bar_prime = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  /// Binary outcome distribution (1 - p, p).
  static TrialConfig binary(std::uint64_t m, double p, double eps_bar_prime,
                            std::uint64_t trials, std::uint64_t seed);

  /// Throws DomainError unless m >= 1, d >= 2, d == distribution size,
  /// entries nonnegative and summing to 1 within 1e-12, eps_bar_prime in
  /// (0, 1) and trials >= 1000.
  void validate() const;
};

/// Deviation between empirical and true statistics. L1 norm; the half-L1
/// reading would divide by two here.
double statistics_deviation(std::span<const double> empirical,
                            std::span<const double> expected);

/// Fraction of trials whose m-sample empirical distribution deviates from the
/// true one by more than xi(m, d, eps_bar_prime).
double empirical_violation_rate(const TrialConfig& config, unsigned threads = 0);

}  // namespace finitekey
