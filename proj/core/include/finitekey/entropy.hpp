#pragma once

namespace finitekey {

/// A probability validated once at construction. Downstream formulas take
/// this type and never re-check the range.
class Probability {
 public:
  /// Throws DomainError unless 0 <= value <= 1 (NaN rejected).
  explicit Probability(double value);

  constexpr double value() const noexcept { return value_; }
  constexpr double complement() const noexcept { return 1.0 - value_; }

  friend constexpr bool operator==(Probability, Probability) = default;

 private:
  double value_;
};

/// Binary Shannon entropy in bits. h(0) = h(1) = 0 by explicit branch.
double binary_entropy(Probability p);

/// H(X|Y) for a binary symmetric raw-key pair with error rate e0, i.e. h(e0).
double conditional_entropy_xy(Probability e0);

}  // namespace finitekey
