#include "finitekey/entropy.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "finitekey/errors.hpp"

namespace finitekey {
namespace {

TEST(Probability, RejectsValuesOutsideUnitInterval) {
  EXPECT_THROW(Probability(-1e-12), DomainError);
  EXPECT_THROW(Probability(1.0 + 1e-12), DomainError);
  EXPECT_THROW(Probability(std::numeric_limits<double>::quiet_NaN()), DomainError);
  EXPECT_NO_THROW(Probability(0.0));
  EXPECT_NO_THROW(Probability(1.0));
  EXPECT_DOUBLE_EQ(Probability(0.3).complement(), 0.7);
}

TEST(BinaryEntropy, Endpoints) {
  EXPECT_EQ(binary_entropy(Probability(0.0)), 0.0);
  EXPECT_EQ(binary_entropy(Probability(1.0)), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(Probability(0.5)), 1.0);
}

TEST(BinaryEntropy, MatchesHighPrecisionValues) {
  // mpmath, 40 digits.
  EXPECT_NEAR(binary_entropy(Probability(0.25)), 0.8112781244591328639, 1e-15);
  EXPECT_NEAR(binary_entropy(Probability(0.05)), 0.2863969571159561288, 1e-15);
}

TEST(BinaryEntropy, TinyArgumentStaysFinite) {
  const double h = binary_entropy(Probability(1e-300));
  EXPECT_TRUE(std::isfinite(h));
  EXPECT_GE(h, 0.0);
  EXPECT_LT(h, 1e-6);
  const double h_sub = binary_entropy(Probability(std::numeric_limits<double>::denorm_min()));
  EXPECT_TRUE(std::isfinite(h_sub));
  EXPECT_GE(h_sub, 0.0);
}

TEST(BinaryEntropy, SymmetricAndConcaveOnRandomPoints) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double p = unit(rng);
    EXPECT_LT(std::abs(binary_entropy(Probability(p)) - binary_entropy(Probability(1.0 - p))), 1e-12);
    const double a = unit(rng), b = unit(rng);
    EXPECT_GE(binary_entropy(Probability((a + b) / 2)),
              (binary_entropy(Probability(a)) + binary_entropy(Probability(b))) / 2 - 1e-12);
  }
}

TEST(ConditionalEntropyXY, IsBinaryEntropyOfErrorRate) {
  EXPECT_EQ(conditional_entropy_xy(Probability(0.0)), 0.0);
  EXPECT_DOUBLE_EQ(conditional_entropy_xy(Probability(0.5)), 1.0);
  EXPECT_NEAR(conditional_entropy_xy(Probability(0.05)), 0.28639695711595612877, 1e-15);
}

}  // namespace
}  // namespace finitekey
