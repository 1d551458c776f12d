// finitekey: finite-key secret-key rates for BB84 and six-states.
//
//   finitekey sweep --protocol bb84 --Q 0.01,0.025,0.05 --N-range 1e4:1e10:60
//   finitekey find-n0 --protocol bb84 --Q 0.01
//   finitekey asymptotic --protocol six-states --Q 0.05
//   finitekey validate-lemma3 --m 100,1000 --p 0.05 --eps-bar-prime 0.1 --trials 100000
//
// Flags override values read from --config.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "finitekey/config.hpp"
#include "finitekey/errors.hpp"
#include "finitekey/report.hpp"

namespace {

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> protocol;
  std::optional<double> eps;
  std::optional<double> eps_ec;
  std::optional<double> f_ec;
  std::optional<std::string> Q;
  std::optional<std::string> N_range;
  std::optional<std::string> N_list;
  std::optional<std::string> output;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> m;
  std::optional<std::string> p;
  std::optional<std::string> eps_bar_prime;
  std::optional<std::uint64_t> trials;
  std::optional<unsigned> threads;
};

void add_flags(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config, "JSON configuration file; flags override its values");
  app.add_option("--protocol", f.protocol, "bb84 | six-states");
  app.add_option("--eps", f.eps, "total security parameter (default 1e-5)");
  app.add_option("--eps-ec", f.eps_ec, "error-correction failure probability (default 1e-10)");
  app.add_option("--f-ec", f.f_ec, "leakage multiplier, leak_EC/n = f_ec h(Q) (default 1.2)");
  app.add_option("--Q", f.Q, "comma-separated error rates");
  app.add_option("--N-range", f.N_range, "log-spaced N grid start:stop:points");
  app.add_option("--N-list", f.N_list, "comma-separated N values");
  app.add_option("--output", f.output, "write to this file instead of stdout");
  app.add_option("--format", f.format, "csv | json");
  app.add_option("--seed", f.seed, "Monte-Carlo seed (validate-lemma3)");
  app.add_option("--m", f.m, "comma-separated sample sizes (validate-lemma3)");
  app.add_option("--p", f.p, "comma-separated error probabilities (validate-lemma3)");
  app.add_option("--eps-bar-prime", f.eps_bar_prime, "comma-separated failure probabilities (validate-lemma3)");
  app.add_option("--trials", f.trials, "Monte-Carlo trials per configuration (validate-lemma3)");
  app.add_option("--threads", f.threads, "worker threads, 0 = all cores");
}

std::vector<std::uint64_t> to_counts(const std::vector<double>& values) {
  std::vector<std::uint64_t> out;
  for (double v : values) {
    if (!(v >= 1.0) || v != static_cast<double>(static_cast<std::uint64_t>(v))) {
      throw finitekey::ConfigError("m", "values must be positive integers");
    }
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

finitekey::RunConfig build_config(const Flags& f, std::optional<finitekey::Mode> mode) {
  using namespace finitekey;
  RunConfig c;
  if (f.config) apply_config_file(*f.config, c);
  if (mode) c.mode = *mode;
  if (f.protocol) {
    const auto kind = parse_protocol(*f.protocol);
    if (!kind) throw ConfigError("protocol", "one of bb84, six-states");
    c.protocol = *kind;
  }
  if (f.eps) c.eps = *f.eps;
  if (f.eps_ec) c.eps_ec = *f.eps_ec;
  if (f.f_ec) c.f_ec = *f.f_ec;
  if (f.Q) c.Q_list = parse_real_list(*f.Q, "Q");
  if (f.N_range && f.N_list) throw ConfigError("N_range", "N_range and N_list are mutually exclusive");
  if (f.N_range) c.N_spec = parse_n_range(*f.N_range);
  if (f.N_list) c.N_spec = parse_real_list(*f.N_list, "N_list");
  if (f.output) c.output_path = *f.output;
  if (f.format) {
    if (*f.format != "csv" && *f.format != "json") throw ConfigError("format", "one of csv, json");
    c.format = *f.format == "csv" ? OutputFormat::csv : OutputFormat::json;
  }
  if (f.seed) c.seed = *f.seed;
  if (f.m) c.mc_m = to_counts(parse_real_list(*f.m, "m"));
  if (f.p) c.mc_p = parse_real_list(*f.p, "p");
  if (f.eps_bar_prime) c.mc_eps_bar_prime = parse_real_list(*f.eps_bar_prime, "eps_bar_prime");
  if (f.trials) c.mc_trials = *f.trials;
  if (f.threads) c.threads = *f.threads;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-key secret-key rates for BB84 and six-states QKD"};
  app.require_subcommand(0, 1);
  Flags flags;
  add_flags(app, flags);

  std::vector<std::pair<CLI::App*, finitekey::Mode>> modes;
  for (auto mode : {finitekey::Mode::sweep, finitekey::Mode::find_n0,
                    finitekey::Mode::validate_lemma3, finitekey::Mode::asymptotic}) {
    auto* sub = app.add_subcommand(std::string(finitekey::to_string(mode)));
    sub->fallthrough();
    modes.emplace_back(sub, mode);
  }
  modes[0].first->description("optimised key rate over an (N, Q) grid");
  modes[1].first->description("smallest N with a positive optimised rate, per Q");
  modes[2].first->description("Monte-Carlo check of the parameter-estimation deviation bound");
  modes[3].first->description("asymptotic sifted rate H(X|E) - f_ec h(Q), per Q");

  CLI11_PARSE(app, argc, argv);

  std::optional<finitekey::Mode> mode;
  for (const auto& [sub, m] : modes) {
    if (sub->parsed()) mode = m;
  }
  if (!mode && !flags.config) {
    std::cerr << app.help();
    return 2;
  }

  try {
    return finitekey::run(build_config(flags, mode), std::cout);
  } catch (const finitekey::ConfigError& e) {
    std::cerr << "error: field=" << e.field() << " constraint=" << e.constraint() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
