#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "finitekey/config.hpp"
#include "finitekey/optimizer.hpp"

namespace finitekey {

/// Bumped whenever a column or JSON field changes meaning.
inline constexpr int kOutputSchemaVersion = 1;

inline constexpr std::string_view kSweepCsvHeader =
    "protocol,N,Q,p0,eps_bar,eps_bar_prime,xi_1,xi_0,h_xi,leak_per_n,delta_n,r_prime,r,feasible";

/// Scientific notation with 10 significant digits; empty for NaN.
std::string format_real(double value);

/// Value after a round trip through format_real.
double round_significant(double value);

/// One CSV row (no trailing newline) matching kSweepCsvHeader.
/// delta_n is the total penalty per raw bit, Delta / n.
std::string sweep_csv_row(const SweepCell& cell);

struct AsymptoticRow {
  ProtocolKind kind;
  double Q;
  double h_xe;
  double h_xy;
  double r_prime;
};

struct ThresholdRow {
  ProtocolKind kind;
  double Q;
  ThresholdResult threshold;
};

struct ValidationRow {
  std::uint64_t m;
  int d;
  double p;
  double eps_bar_prime;
  std::uint64_t trials;
  std::uint64_t seed;
  double xi;
  double violation_rate;
  double bound;  ///< eps_bar_prime + 3 sqrt(eps_bar_prime / trials)
  bool sound;
};

void write_sweep(std::ostream& out, OutputFormat format, const RunConfig& config,
                 const std::vector<SweepCell>& cells);
void write_thresholds(std::ostream& out, OutputFormat format, const RunConfig& config,
                      const std::vector<ThresholdRow>& rows);
void write_asymptotic(std::ostream& out, OutputFormat format, const RunConfig& config,
                      const std::vector<AsymptoticRow>& rows);
void write_validation(std::ostream& out, OutputFormat format, const RunConfig& config,
                      const std::vector<ValidationRow>& rows);

/// Validates `config`, dispatches on its mode and writes the result to `out`
/// (or to config.output_path when set). Returns 0 on success. Configuration
/// errors propagate as ConfigError.
int run(const RunConfig& config, std::ostream& out);

}  // namespace finitekey
