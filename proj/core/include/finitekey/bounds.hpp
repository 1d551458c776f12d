#pragma once

#include <optional>

namespace finitekey {

/// Failure-probability budget of one protocol run.
///
/// The total security parameter eps is split into the error-correction
/// failure eps_ec, the smoothing parameter eps_bar and the parameter
/// estimation failure eps_bar_prime. A budget is valid iff
///
///   eps - eps_ec > eps_bar > eps_bar_prime > 0,  all four in (0, 1).
///
/// eps_bar_prime = 0 is excluded because the statistical deviation diverges
/// there.
class SecurityBudget {
 public:
  /// Throws DomainError when the ordering above is violated.
  static SecurityBudget create(double eps, double eps_ec, double eps_bar,
                               double eps_bar_prime);
  static std::optional<SecurityBudget> try_create(double eps, double eps_ec,
                                                  double eps_bar,
                                                  double eps_bar_prime) noexcept;
  static bool is_valid(double eps, double eps_ec, double eps_bar,
                       double eps_bar_prime) noexcept;

  double eps() const noexcept { return eps_; }
  double eps_ec() const noexcept { return eps_ec_; }
  double eps_bar() const noexcept { return eps_bar_; }
  double eps_bar_prime() const noexcept { return eps_bar_prime_; }

  /// eps - eps_bar - eps_ec, always > 0 for a valid budget.
  double pa_margin() const noexcept { return eps_ - eps_bar_ - eps_ec_; }
  /// eps_bar - eps_bar_prime, always > 0 for a valid budget.
  double smoothing_gap() const noexcept { return eps_bar_ - eps_bar_prime_; }

 private:
  SecurityBudget(double eps, double eps_ec, double eps_bar, double eps_bar_prime)
      : eps_(eps), eps_ec_(eps_ec), eps_bar_(eps_bar), eps_bar_prime_(eps_bar_prime) {}

  double eps_;
  double eps_ec_;
  double eps_bar_;
  double eps_bar_prime_;
};

/// Error correction characterised by leak_EC = f_ec * h(Q) * n and failure
/// probability eps_ec.
class ErrorCorrectionModel {
 public:
  /// Throws DomainError unless f_ec >= 1 and eps_ec in (0, 1).
  ErrorCorrectionModel(double f_ec, double eps_ec);

  double f_ec() const noexcept { return f_ec_; }
  double eps_ec() const noexcept { return eps_ec_; }

 private:
  double f_ec_;
  double eps_ec_;
};

/// Every intermediate quantity of one rate evaluation.
///
/// Sizes are continuous reals. When `feasible` is false, `r` is 0 and the
/// remaining fields hold whatever could be computed (NaN otherwise).
struct BoundBreakdown {
  double N = 0.0;
  double n = 0.0;
  double m = 0.0;
  double xi_1 = 0.0;                ///< deviation on the complementary-basis rate
  std::optional<double> xi_0;       ///< deviation on the key-basis rate (six-states)
  double delta = 0.0;               ///< per-bit min-entropy correction
  double total_penalty = 0.0;       ///< Delta = PA penalty + n * delta, bits
  double h_xi = 0.0;                ///< worst-case H(X|E) per raw bit
  double leak_ec = 0.0;             ///< bits
  double ell = 0.0;                 ///< secure key length (bits), may be negative
  double r_prime = 0.0;             ///< sifted key rate, unclamped
  double r = 0.0;                   ///< key rate per signal, clamped at 0
  bool feasible = false;
};

/// Statistical deviation of an m-sample estimate over a d-outcome POVM:
/// sqrt((2 ln(1/eps_bar_prime) + d ln(m+1)) / m).
/// Throws DomainError for m < 1, d < 2 or eps_bar_prime outside (0, 1).
double xi(double m, int d, double eps_bar_prime);

/// Min-entropy correction 7 sqrt(log2(2/(eps_bar - eps_bar_prime)) / n).
double delta(double n, double eps_bar, double eps_bar_prime);

/// Same correction expressed through the gap eps_bar - eps_bar_prime, which
/// must lie in (0, 2].
double delta_for_gap(double n, double gap);

/// Privacy-amplification penalty 2 log2(1 / (2 margin)) where
/// margin = eps - eps_bar - eps_ec. Throws InfeasibleBudget if margin <= 0.
double pa_penalty_for_margin(double margin);
double pa_penalty(const SecurityBudget& budget);

/// Delta = pa_penalty + n * delta (bits).
double total_penalty(double n, const SecurityBudget& budget);

/// Saturated secure key length n * h_min_per_bit - leak_ec - pa_penalty.
/// May be negative; the caller clamps.
double key_length(double n, double h_min_per_bit, double leak_ec,
                  const SecurityBudget& budget);

/// Finite-key sifted rate h_xi - (leak_ec + Delta) / n.
double sifted_rate(double n, double h_xi, double leak_ec, const SecurityBudget& budget);

/// Asymptotic sifted rate H(X|E) - H(X|Y).
double asymptotic_rate(double h_xe, double h_xy);

}  // namespace finitekey
