#include "finitekey/report.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "finitekey/errors.hpp"
#include "finitekey/mc_validator.hpp"

namespace finitekey {

using nlohmann::json;

std::string format_real(double value) {
  if (std::isnan(value)) return {};
  return fmt::format("{:.9e}", value);
}

double round_significant(double value) {
  if (!std::isfinite(value)) return value;
  return std::stod(format_real(value));
}

namespace {

json number_or_null(double value) {
  if (!std::isfinite(value)) return nullptr;
  return round_significant(value);
}

json config_json(const RunConfig& c) {
  json j;
  j["mode"] = to_string(c.mode);
  j["eps"] = round_significant(c.eps);
  j["eps_ec"] = round_significant(c.eps_ec);
  j["f_ec"] = round_significant(c.f_ec);
  if (c.mode != Mode::validate_lemma3) j["protocol"] = to_string(c.protocol);
  return j;
}

json envelope(const RunConfig& c, json rows) {
  json j;
  j["schema_version"] = kOutputSchemaVersion;
  j["mode"] = to_string(c.mode);
  j["config"] = config_json(c);
  j["rows"] = std::move(rows);
  return j;
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string sweep_csv_row(const SweepCell& cell) {
  const OptimizationResult& res = cell.result;
  const BoundBreakdown& b = res.breakdown;
  const bool has_point = !std::isnan(b.r_prime);
  const auto opt = [&](double v) { return has_point ? format_real(v) : std::string(); };
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}", to_string(cell.kind),
                     format_real(cell.N), format_real(cell.Q), opt(res.p0_star),
                     opt(res.eps_bar_star), opt(res.eps_bar_prime_star), format_real(b.xi_1),
                     b.xi_0 ? format_real(*b.xi_0) : std::string(), format_real(b.h_xi),
                     opt(b.leak_ec / b.n), opt(b.total_penalty / b.n), format_real(b.r_prime),
                     format_real(b.r), bool_text(b.feasible));
}

void write_sweep(std::ostream& out, OutputFormat format, const RunConfig& config,
                 const std::vector<SweepCell>& cells) {
  if (format == OutputFormat::csv) {
    out << kSweepCsvHeader << '\n';
    for (const auto& c : cells) out << sweep_csv_row(c) << '\n';
    return;
  }
  json rows = json::array();
  for (const auto& c : cells) {
    const auto& res = c.result;
    const auto& b = res.breakdown;
    const bool has_point = !std::isnan(b.r_prime);
    json row;
    row["protocol"] = to_string(c.kind);
    row["N"] = number_or_null(c.N);
    row["Q"] = number_or_null(c.Q);
    row["p0"] = has_point ? number_or_null(res.p0_star) : json(nullptr);
    row["eps_bar"] = has_point ? number_or_null(res.eps_bar_star) : json(nullptr);
    row["eps_bar_prime"] = has_point ? number_or_null(res.eps_bar_prime_star) : json(nullptr);
    row["xi_1"] = number_or_null(b.xi_1);
    row["xi_0"] = b.xi_0 ? number_or_null(*b.xi_0) : json(nullptr);
    row["h_xi"] = number_or_null(b.h_xi);
    row["leak_per_n"] = has_point ? number_or_null(b.leak_ec / b.n) : json(nullptr);
    row["delta_n"] = has_point ? number_or_null(b.total_penalty / b.n) : json(nullptr);
    row["r_prime"] = number_or_null(b.r_prime);
    row["r"] = number_or_null(b.r);
    row["feasible"] = b.feasible;
    rows.push_back(std::move(row));
  }
  out << envelope(config, std::move(rows)).dump(2) << '\n';
}

void write_thresholds(std::ostream& out, OutputFormat format, const RunConfig& config,
                      const std::vector<ThresholdRow>& rows) {
  if (format == OutputFormat::csv) {
    out << "protocol,Q,N0,exists,probes\n";
    for (const auto& r : rows) {
      out << fmt::format("{},{},{},{},{}\n", to_string(r.kind), format_real(r.Q),
                         r.threshold.exists ? format_real(r.threshold.n0) : std::string(),
                         bool_text(r.threshold.exists), r.threshold.probes);
    }
    return;
  }
  json arr = json::array();
  for (const auto& r : rows) {
    json row;
    row["protocol"] = to_string(r.kind);
    row["Q"] = number_or_null(r.Q);
    row["N0"] = r.threshold.exists ? number_or_null(r.threshold.n0) : json(nullptr);
    row["exists"] = r.threshold.exists;
    row["probes"] = r.threshold.probes;
    arr.push_back(std::move(row));
  }
  out << envelope(config, std::move(arr)).dump(2) << '\n';
}

void write_asymptotic(std::ostream& out, OutputFormat format, const RunConfig& config,
                      const std::vector<AsymptoticRow>& rows) {
  if (format == OutputFormat::csv) {
    out << "protocol,Q,h_xe,h_xy,r_prime\n";
    for (const auto& r : rows) {
      out << fmt::format("{},{},{},{},{}\n", to_string(r.kind), format_real(r.Q),
                         format_real(r.h_xe), format_real(r.h_xy), format_real(r.r_prime));
    }
    return;
  }
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"protocol", to_string(r.kind)},
                   {"Q", number_or_null(r.Q)},
                   {"h_xe", number_or_null(r.h_xe)},
                   {"h_xy", number_or_null(r.h_xy)},
                   {"r_prime", number_or_null(r.r_prime)}});
  }
  out << envelope(config, std::move(arr)).dump(2) << '\n';
}

void write_validation(std::ostream& out, OutputFormat format, const RunConfig& config,
                      const std::vector<ValidationRow>& rows) {
  if (format == OutputFormat::csv) {
    out << "m,d,p,eps_bar_prime,trials,seed,xi,violation_rate,bound,sound\n";
    for (const auto& r : rows) {
      out << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.m, r.d, format_real(r.p),
                         format_real(r.eps_bar_prime), r.trials, r.seed, format_real(r.xi),
                         format_real(r.violation_rate), format_real(r.bound), bool_text(r.sound));
    }
    return;
  }
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"m", r.m},
                   {"d", r.d},
                   {"p", number_or_null(r.p)},
                   {"eps_bar_prime", number_or_null(r.eps_bar_prime)},
                   {"trials", r.trials},
                   {"seed", r.seed},
                   {"xi", number_or_null(r.xi)},
                   {"violation_rate", number_or_null(r.violation_rate)},
                   {"bound", number_or_null(r.bound)},
                   {"sound", r.sound}});
  }
  out << envelope(config, std::move(arr)).dump(2) << '\n';
}

namespace {

void dispatch(const RunConfig& config, std::ostream& out) {
  const ErrorCorrectionModel ec(config.f_ec, config.eps_ec);
  switch (config.mode) {
    case Mode::sweep: {
      const auto grid = config.n_grid();
      const auto cells =
          sweep(config.protocol, grid, config.Q_list, config.eps, ec, {}, config.threads);
      write_sweep(out, config.format, config, cells);
      break;
    }
    case Mode::find_n0: {
      std::vector<ThresholdRow> rows;
      for (double q : config.Q_list) {
        rows.push_back({config.protocol, q, find_n0(config.protocol, Probability(q), config.eps, ec)});
      }
      write_thresholds(out, config.format, config, rows);
      break;
    }
    case Mode::asymptotic: {
      std::vector<AsymptoticRow> rows;
      for (double q : config.Q_list) {
        const Probability Q(q);
        const double h_xe = asymptotic_entropy(config.protocol, ChannelStatistics::uniform(Q));
        const double leak = h_xy(Q, config.f_ec);
        rows.push_back({config.protocol, q, h_xe, leak, asymptotic_rate(h_xe, leak)});
      }
      write_asymptotic(out, config.format, config, rows);
      break;
    }
    case Mode::validate_lemma3: {
      const std::uint64_t seed = config.seed.value_or(kDefaultSeed);
      std::vector<ValidationRow> rows;
      for (auto m : config.mc_m) {
        for (double p : config.mc_p) {
          for (double e : config.mc_eps_bar_prime) {
            const auto trial = TrialConfig::binary(m, p, e, config.mc_trials, seed);
            const double rate = empirical_violation_rate(trial, config.threads);
            const double bound =
                e + 3.0 * std::sqrt(e / static_cast<double>(config.mc_trials));
            rows.push_back({m, 2, p, e, config.mc_trials, seed,
                            xi(static_cast<double>(m), 2, e), rate, bound, rate <= bound});
          }
        }
      }
      write_validation(out, config.format, config, rows);
      break;
    }
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out) {
  config.validate();
  if (config.output_path) {
    std::ofstream file(*config.output_path, std::ios::binary);
    if (!file) throw ConfigError("output", "cannot open '" + *config.output_path + "' for writing");
    dispatch(config, file);
    return file.good() ? 0 : 1;
  }
  dispatch(config, out);
  return 0;
}

}  // namespace finitekey
