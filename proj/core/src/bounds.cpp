#include "finitekey/bounds.hpp"

#include <cmath>

#include "finitekey/errors.hpp"

namespace finitekey {

bool SecurityBudget::is_valid(double eps, double eps_ec, double eps_bar,
                              double eps_bar_prime) noexcept {
  const auto unit = [](double x) { return x > 0.0 && x < 1.0; };
  return unit(eps) && unit(eps_ec) && unit(eps_bar) && unit(eps_bar_prime) &&
         eps - eps_ec > eps_bar && eps_bar > eps_bar_prime &&
         eps - eps_bar - eps_ec > 0.0;
}

SecurityBudget SecurityBudget::create(double eps, double eps_ec, double eps_bar,
                                      double eps_bar_prime) {
  if (!is_valid(eps, eps_ec, eps_bar, eps_bar_prime)) {
    throw DomainError(
        "security budget requires eps - eps_ec > eps_bar > eps_bar_prime > 0");
  }
  return SecurityBudget(eps, eps_ec, eps_bar, eps_bar_prime);
}

std::optional<SecurityBudget> SecurityBudget::try_create(
    double eps, double eps_ec, double eps_bar, double eps_bar_prime) noexcept {
  if (!is_valid(eps, eps_ec, eps_bar, eps_bar_prime)) return std::nullopt;
  return SecurityBudget(eps, eps_ec, eps_bar, eps_bar_prime);
}

ErrorCorrectionModel::ErrorCorrectionModel(double f_ec, double eps_ec)
    : f_ec_(f_ec), eps_ec_(eps_ec) {
  if (!(f_ec >= 1.0) || !std::isfinite(f_ec)) {
    throw DomainError("f_ec must be >= 1");
  }
  if (!(eps_ec > 0.0 && eps_ec < 1.0)) {
    throw DomainError("eps_ec must lie in (0, 1)");
  }
}

double xi(double m, int d, double eps_bar_prime) {
  if (!(m >= 1.0) || !std::isfinite(m)) throw DomainError("xi: sample size m must be >= 1");
  if (d < 2) throw DomainError("xi: outcome count d must be >= 2");
  if (!(eps_bar_prime > 0.0 && eps_bar_prime < 1.0)) {
    throw DomainError("xi: eps_bar_prime must lie in (0, 1)");
  }
  const double numerator = 2.0 * std::log(1.0 / eps_bar_prime) + d * std::log1p(m);
  return std::sqrt(numerator / m);
}

double delta_for_gap(double n, double gap) {
  if (!(n >= 1.0) || !std::isfinite(n)) throw DomainError("delta: n must be >= 1");
  if (!(gap > 0.0 && gap <= 2.0)) throw DomainError("delta: gap must lie in (0, 2]");
  return 7.0 * std::sqrt(std::log2(2.0 / gap) / n);
}

double delta(double n, double eps_bar, double eps_bar_prime) {
  if (!(eps_bar > eps_bar_prime)) throw DomainError("delta: requires eps_bar > eps_bar_prime");
  return delta_for_gap(n, eps_bar - eps_bar_prime);
}

double pa_penalty_for_margin(double margin) {
  if (!(margin > 0.0)) {
    throw InfeasibleBudget("privacy amplification margin eps - eps_bar - eps_ec <= 0");
  }
  return 2.0 * std::log2(1.0 / (2.0 * margin));
}

double pa_penalty(const SecurityBudget& budget) {
  return pa_penalty_for_margin(budget.pa_margin());
}

double total_penalty(double n, const SecurityBudget& budget) {
  return pa_penalty(budget) + n * delta_for_gap(n, budget.smoothing_gap());
}

double key_length(double n, double h_min_per_bit, double leak_ec,
                  const SecurityBudget& budget) {
  if (!(leak_ec >= 0.0)) throw DomainError("key_length: leak_ec must be >= 0");
  return n * h_min_per_bit - leak_ec - pa_penalty(budget);
}

double sifted_rate(double n, double h_xi, double leak_ec, const SecurityBudget& budget) {
  if (!(leak_ec >= 0.0)) throw DomainError("sifted_rate: leak_ec must be >= 0");
  return h_xi - (leak_ec + total_penalty(n, budget)) / n;
}

double asymptotic_rate(double h_xe, double h_xy) { return h_xe - h_xy; }

}  // namespace finitekey
