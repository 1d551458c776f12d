#pragma once

#include <optional>
#include <string_view>

#include "finitekey/entropy.hpp"

namespace finitekey {

enum class ProtocolKind { bb84, six_states };

/// Number of bases: 2 for BB84, 3 for six-states.
int basis_count(ProtocolKind kind) noexcept;

/// "bb84" / "six-states".
std::string_view to_string(ProtocolKind kind) noexcept;

/// Accepts "bb84", "six-states", "six_states" and "sixstates" (case-sensitive).
std::optional<ProtocolKind> parse_protocol(std::string_view name) noexcept;

/// Signal budget after sifting in the asymmetric protocols. The key basis is
/// chosen with probability p0 by both sides; the remaining probability mass is
/// split evenly among the estimation bases. `m` is the sample size of *each*
/// estimation basis.
struct SiftingAllocation {
  ProtocolKind kind = ProtocolKind::bb84;
  double N = 0.0;
  double p0 = 0.0;
  double n = 0.0;
  double m = 0.0;
  double discarded = 0.0;

  int estimation_bases() const noexcept { return basis_count(kind) - 1; }
  /// n >= 1 and m >= 1.
  bool feasible() const noexcept { return n >= 1.0 && m >= 1.0; }
};

/// Infeasible allocations (n < 1 or m < 1) are flagged through feasible(),
/// not raised. Throws DomainError unless 0 < p0 < 1 and N >= 1.
SiftingAllocation sift(ProtocolKind kind, double N, double p0);

/// Observed error rates. e2 is carried for completeness; the six-states
/// entropy is always evaluated at e1 = e2.
struct ChannelStatistics {
  Probability e0;
  Probability e1;
  Probability e2;

  static ChannelStatistics uniform(Probability q) { return {q, q, q}; }
};

/// BB84 worst-case entropy from an already shifted phase-error rate:
/// 1 - h(min(e1_tilde, 1/2)).
double bb84_entropy_at(double e1_tilde);

/// Six-states worst-case entropy from shifted rates:
/// (1 - e0~) [1 - h((1 - e1~ - e0~/2) / (1 - e0~))], with e1~ capped at 1/2,
/// the argument of h clamped to [0, 1] and the result clamped to [0, 1].
/// Returns 0 once e0~ >= 1.
double six_states_entropy_at(double e0_tilde, double e1_tilde);

/// H_xi(X|E) for BB84 with e1~ = e1 + xi(m, 2, eps_bar_prime).
double h_xi_bb84(Probability e1, double m, double eps_bar_prime);

/// H_xi(X|E) for six-states with e1~ = e1 + xi(m1, 2, eps_bar_prime) and
/// e0~ = e0 + xi(n, 2, eps_bar_prime); e0 is estimated on the raw key itself.
double h_xi_six_states(Probability e0, Probability e1, double n, double m1,
                       double eps_bar_prime);

/// Asymptotic H(X|E) with perfect statistics (no shift).
double asymptotic_entropy(ProtocolKind kind, const ChannelStatistics& stats);

/// Error-correction leakage per raw bit, f_ec * h(e0).
double h_xy(Probability e0_observed, double f_ec);

}  // namespace finitekey
