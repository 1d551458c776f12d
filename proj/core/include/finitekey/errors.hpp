#pragma once

#include <stdexcept>
#include <string>

namespace finitekey {

/// An argument lies outside the mathematical domain of a bound formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The security budget leaves no room for privacy amplification
/// (eps - eps_bar - eps_ec <= 0).
class InfeasibleBudget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A run configuration failed validation. Carries the offending field so the
/// CLI can emit a machine-parseable error line.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, std::string constraint)
      : std::invalid_argument(field + ": " + constraint),
        field_(std::move(field)),
        constraint_(std::move(constraint)) {}

  const std::string& field() const noexcept { return field_; }
  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string field_;
  std::string constraint_;
};

}  // namespace finitekey
