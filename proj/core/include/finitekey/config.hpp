#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "finitekey/protocols.hpp"

namespace finitekey {

enum class Mode { sweep, find_n0, validate_lemma3, asymptotic };
enum class OutputFormat { csv, json };

std::string_view to_string(Mode mode) noexcept;
std::optional<Mode> parse_mode(std::string_view name) noexcept;

/// Log-spaced N grid, both ends inclusive.
struct NRange {
  double start = 1e4;
  double stop = 1e12;
  int points = 41;

  friend bool operator==(const NRange&, const NRange&) = default;
};

/// Everything a CLI invocation needs. Defaults are the figure settings:
/// eps = 1e-5, eps_ec = 1e-10, f_ec = 1.2.
struct RunConfig {
  Mode mode = Mode::sweep;
  ProtocolKind protocol = ProtocolKind::bb84;
  double eps = 1e-5;
  double eps_ec = 1e-10;
  double f_ec = 1.2;
  std::vector<double> Q_list{0.01, 0.025, 0.05};
  std::variant<NRange, std::vector<double>> N_spec = NRange{};
  OutputFormat format = OutputFormat::csv;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_path;

  // validate-lemma3 matrix
  std::vector<std::uint64_t> mc_m{100, 1000, 10000};
  std::vector<double> mc_p{0.05, 0.25, 0.5};
  std::vector<double> mc_eps_bar_prime{0.5, 0.1, 0.01};
  std::uint64_t mc_trials = 100000;

  unsigned threads = 0;

  /// Throws ConfigError naming the first offending field.
  void validate() const;

  /// Materialised N grid (explicit list or log-spaced range).
  std::vector<double> n_grid() const;
};

inline constexpr std::uint64_t kDefaultSeed = 1;

/// `points` values from start to stop, geometric, inclusive.
std::vector<double> log_space(double start, double stop, int points);

/// "start:stop:points", e.g. "1e4:1e10:60". Throws ConfigError.
NRange parse_n_range(std::string_view text);

/// Comma-separated reals, e.g. "0.01,0.025". Throws ConfigError.
std::vector<double> parse_real_list(std::string_view text, std::string_view field);

/// Overlays the keys present in `doc` onto `config`. Recognised keys:
/// mode, protocol, eps, eps_ec, f_ec, Q, N_range, N_list, format, seed,
/// output, m, p, eps_bar_prime, trials, threads. Unknown keys are rejected.
void apply_config_json(const nlohmann::json& doc, RunConfig& config);

/// Reads a JSON config file and overlays it onto `config`.
void apply_config_file(const std::string& path, RunConfig& config);

}  // namespace finitekey
