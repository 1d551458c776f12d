#include "finitekey/protocols.hpp"

#include <algorithm>

#include "finitekey/bounds.hpp"
#include "finitekey/errors.hpp"

namespace finitekey {

int basis_count(ProtocolKind kind) noexcept {
  return kind == ProtocolKind::bb84 ? 2 : 3;
}

std::string_view to_string(ProtocolKind kind) noexcept {
  return kind == ProtocolKind::bb84 ? "bb84" : "six-states";
}

std::optional<ProtocolKind> parse_protocol(std::string_view name) noexcept {
  if (name == "bb84" || name == "BB84") return ProtocolKind::bb84;
  if (name == "six-states" || name == "six_states" || name == "sixstates") {
    return ProtocolKind::six_states;
  }
  return std::nullopt;
}

SiftingAllocation sift(ProtocolKind kind, double N, double p0) {
  if (!(p0 > 0.0 && p0 < 1.0)) throw DomainError("sift: p0 must lie in (0, 1)");
  if (!(N >= 1.0)) throw DomainError("sift: N must be >= 1");
  SiftingAllocation a;
  a.kind = kind;
  a.N = N;
  a.p0 = p0;
  const double p_est = (1.0 - p0) / a.estimation_bases();
  a.n = N * p0 * p0;
  a.m = N * p_est * p_est;
  // Everything else is a basis mismatch.
  a.discarded = N - a.n - a.estimation_bases() * a.m;
  return a;
}

double bb84_entropy_at(double e1_tilde) {
  const double e = std::clamp(e1_tilde, 0.0, 0.5);
  return std::clamp(1.0 - binary_entropy(Probability(e)), 0.0, 1.0);
}

double six_states_entropy_at(double e0_tilde, double e1_tilde) {
  const double e0 = std::max(e0_tilde, 0.0);
  if (e0 >= 1.0) return 0.0;
  const double e1 = std::clamp(e1_tilde, 0.0, 0.5);
  const double arg = std::clamp((1.0 - e1 - e0 / 2.0) / (1.0 - e0), 0.0, 1.0);
  const double value = (1.0 - e0) * (1.0 - binary_entropy(Probability(arg)));
  return std::clamp(value, 0.0, 1.0);
}

double h_xi_bb84(Probability e1, double m, double eps_bar_prime) {
  return bb84_entropy_at(e1.value() + xi(m, 2, eps_bar_prime));
}

double h_xi_six_states(Probability e0, Probability e1, double n, double m1,
                       double eps_bar_prime) {
  const double e0_tilde = e0.value() + xi(n, 2, eps_bar_prime);
  const double e1_tilde = e1.value() + xi(m1, 2, eps_bar_prime);
  return six_states_entropy_at(e0_tilde, e1_tilde);
}

double asymptotic_entropy(ProtocolKind kind, const ChannelStatistics& stats) {
  if (kind == ProtocolKind::bb84) return bb84_entropy_at(stats.e1.value());
  return six_states_entropy_at(stats.e0.value(), stats.e1.value());
}

double h_xy(Probability e0_observed, double f_ec) {
  if (!(f_ec >= 1.0)) throw DomainError("h_xy: f_ec must be >= 1");
  return f_ec * binary_entropy(e0_observed);
}

}  // namespace finitekey
