#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "finitekey/bounds.hpp"
#include "finitekey/entropy.hpp"
#include "finitekey/protocols.hpp"

namespace finitekey {

/// Rate maximisation for one (protocol, N, Q) point. The observed error rate
/// Q is used for every basis (e0 = e1 = e2 = Q).
struct OptimizationProblem {
  ProtocolKind kind = ProtocolKind::bb84;
  double N = 0.0;
  Probability Q{0.0};
  double eps = 1e-5;
  ErrorCorrectionModel ec{1.2, 1e-10};

  /// Throws DomainError unless N >= 1 and ec.eps_ec < eps < 1.
  void validate() const;
};

/// Grid layout of the search. Free variables are p0 (uniform grid on (0, 1)),
/// log10(eps_bar) below log10(eps - eps_ec), and log10(eps_bar_prime / eps_bar)
/// below 0. After the coarse pass, a (2w+1)^3 local grid around the incumbent
/// is re-evaluated each round with steps divided by `shrink`.
struct SearchConfig {
  int p0_points = 120;
  int eps_bar_points = 32;
  int ratio_points = 32;
  double eps_bar_decades = 8.0;
  double ratio_decades = 10.0;
  int refine_rounds = 10;
  int refine_half_width = 4;
  double shrink = 4.0;
};

struct OptimizationResult {
  double r_star = 0.0;
  double p0_star = 0.0;
  double eps_bar_star = 0.0;
  double eps_bar_prime_star = 0.0;
  BoundBreakdown breakdown;
  std::size_t evaluations = 0;
  /// Empty when a feasible point was found.
  std::string diagnostic;

  bool feasible() const noexcept { return breakdown.feasible; }
};

/// Full pipeline sift -> xi -> H_xi -> leak_EC -> Delta -> r' -> r.
/// Infeasible inputs (bad allocation, bad budget ordering, l <= 0) yield
/// feasible = false and r = 0; this function never throws for such points.
BoundBreakdown evaluate(const OptimizationProblem& problem, double p0, double eps_bar,
                        double eps_bar_prime);

/// Deterministic grid search plus local refinement. Bit-for-bit reproducible
/// for the same problem and config.
OptimizationResult optimize(const OptimizationProblem& problem,
                            const SearchConfig& config = {});

struct ThresholdResult {
  bool exists = false;
  double n0 = 0.0;       ///< smallest N with r > 0, rounded up to an integer
  double n0_real = 0.0;  ///< upper end of the final bisection bracket
  int probes = 0;
  std::string diagnostic;
};

struct ThresholdOptions {
  double relative_tolerance = 1e-3;
  double start_N = 1e3;
  double max_N = 1e30;
};

/// Smallest N with a positive optimised rate, by bisection on log N between
/// a bracket found by doubling. Reports nonexistence when the asymptotic rate
/// at Q is not positive.
ThresholdResult find_n0(ProtocolKind kind, Probability Q, double eps,
                        const ErrorCorrectionModel& ec, const SearchConfig& config = {},
                        const ThresholdOptions& options = {});

struct SweepCell {
  ProtocolKind kind = ProtocolKind::bb84;
  double N = 0.0;
  double Q = 0.0;
  OptimizationResult result;
};

/// One optimisation per (Q, N) cell, Q-major in input order. Cells run on
/// `threads` workers (0 = hardware concurrency); output order does not
/// depend on scheduling.
std::vector<SweepCell> sweep(ProtocolKind kind, std::span<const double> N_grid,
                             std::span<const double> Q_list, double eps,
                             const ErrorCorrectionModel& ec, const SearchConfig& config = {},
                             unsigned threads = 0);

}  // namespace finitekey
