#include "finitekey/mc_validator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "finitekey/bounds.hpp"
#include "finitekey/errors.hpp"

namespace finitekey {
namespace {

// u = (x >> 11) * 2^-53 satisfies u < c exactly when (x >> 11) < ceil(c * 2^53),
// so samples are classified on the integer draw without converting to double.
std::vector<std::uint64_t> integer_thresholds(const std::vector<double>& cdf) {
  std::vector<std::uint64_t> out;
  out.reserve(cdf.size());
  for (double c : cdf) {
    const double scaled = std::ceil(std::clamp(c, 0.0, 1.0) * 0x1.0p53);
    out.push_back(static_cast<std::uint64_t>(scaled));
  }
  return out;
}

// Number of violations among trials [begin, end).
std::uint64_t count_violations(const TrialConfig& config,
                               const std::vector<std::uint64_t>& thresholds, double limit,
                               std::uint64_t begin, std::uint64_t end) {
  const auto d = static_cast<std::size_t>(config.d);
  std::vector<std::uint64_t> counts(d);
  std::vector<double> empirical(d);
  std::uint64_t violations = 0;
  for (std::uint64_t t = begin; t < end; ++t) {
    std::mt19937_64 engine(config.seed + t);
    std::fill(counts.begin(), counts.end(), 0);
    if (d == 2) {
      const std::uint64_t first = thresholds[0];
      std::uint64_t hits = 0;
      for (std::uint64_t s = 0; s < config.m; ++s) hits += (engine() >> 11) < first;
      counts[0] = hits;
      counts[1] = config.m - hits;
    } else {
      for (std::uint64_t s = 0; s < config.m; ++s) {
        const std::uint64_t k = engine() >> 11;
        std::size_t i = 0;
        while (i + 1 < d && k >= thresholds[i]) ++i;
        ++counts[i];
      }
    }
    for (std::size_t i = 0; i < d; ++i) {
      empirical[i] = static_cast<double>(counts[i]) / static_cast<double>(config.m);
    }
    if (statistics_deviation(empirical, config.true_distribution) > limit) ++violations;
  }
  return violations;
}

}  // namespace

TrialConfig TrialConfig::binary(std::uint64_t m, double p, double eps_bar_prime,
                                std::uint64_t trials, std::uint64_t seed) {
  return {m, 2, {1.0 - p, p}, eps_bar_prime, trials, seed};
}

void TrialConfig::validate() const {
  if (m < 1) throw DomainError("trial config: m must be >= 1");
  if (d < 2) throw DomainError("trial config: d must be >= 2");
  if (true_distribution.size() != static_cast<std::size_t>(d)) {
    throw DomainError("trial config: distribution must have d entries");
  }
  for (double p : true_distribution) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("trial config: probabilities must lie in [0, 1]");
  }
  const double total = std::accumulate(true_distribution.begin(), true_distribution.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("trial config: probabilities must sum to 1");
  if (!(eps_bar_prime > 0.0 && eps_bar_prime < 1.0)) {
    throw DomainError("trial config: eps_bar_prime must lie in (0, 1)");
  }
  if (trials < 1000) throw DomainError("trial config: trials must be >= 1000");
}

double statistics_deviation(std::span<const double> empirical,
                            std::span<const double> expected) {
  if (empirical.size() != expected.size()) {
    throw DomainError("statistics_deviation: size mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < empirical.size(); ++i) sum += std::abs(empirical[i] - expected[i]);
  return sum;
}

double empirical_violation_rate(const TrialConfig& config, unsigned threads) {
  config.validate();
  const double threshold = xi(static_cast<double>(config.m), config.d, config.eps_bar_prime);

  std::vector<double> cdf(config.true_distribution.size());
  std::partial_sum(config.true_distribution.begin(), config.true_distribution.end(),
                   cdf.begin());
  const auto thresholds = integer_thresholds(cdf);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  constexpr std::uint64_t kChunk = 1024;
  const std::uint64_t chunks = (config.trials + kChunk - 1) / kChunk;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));

  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> violations{0};
  auto worker = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      const std::uint64_t begin = c * kChunk;
      const std::uint64_t end = std::min(config.trials, begin + kChunk);
      violations += count_violations(config, thresholds, threshold, begin, end);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return static_cast<double>(violations.load()) / static_cast<double>(config.trials);
}

}  // namespace finitekey
