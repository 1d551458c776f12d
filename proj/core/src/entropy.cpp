#include "finitekey/entropy.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "finitekey/errors.hpp"

namespace finitekey {

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw DomainError("probability outside [0, 1]: " + std::to_string(value));
  }
}

double binary_entropy(Probability p) {
  const double x = p.value();
  if (x == 0.0 || x == 1.0) return 0.0;
  // log1p keeps the (1-x) term accurate for tiny x.
  const double a = -x * std::log2(x);
  const double b = -(1.0 - x) * std::log1p(-x) / std::numbers::ln2;
  return a + b;
}

double conditional_entropy_xy(Probability e0) { return binary_entropy(e0); }

}  // namespace finitekey
