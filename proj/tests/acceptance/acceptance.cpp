// Acceptance suite. Prints one PASS/FAIL line per criterion.
//
//   finitekey_acceptance            run every criterion
//   finitekey_acceptance 1 5        run criteria 1 and 5
//
// Exit status is nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "finitekey/bounds.hpp"
#include "finitekey/config.hpp"
#include "finitekey/entropy.hpp"
#include "finitekey/mc_validator.hpp"
#include "finitekey/optimizer.hpp"
#include "finitekey/protocols.hpp"
#include "finitekey/report.hpp"
#include "reference_rate.hpp"

namespace fk = finitekey;
using Clock = std::chrono::steady_clock;

namespace {

// Figure settings.
constexpr double kEps = 1e-5;
constexpr double kEpsEc = 1e-10;
constexpr double kFec = 1.2;

const fk::ErrorCorrectionModel& figure_ec() {
  static const fk::ErrorCorrectionModel ec(kFec, kEpsEc);
  return ec;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, std::string note) {
    if (!ok) pass = false;
    notes.push_back((ok ? "  ok   " : "  FAIL ") + std::move(note));
  }
};

double optimized_rate(fk::ProtocolKind kind, double N, double Q) {
  return fk::optimize({kind, N, fk::Probability(Q), kEps, figure_ec()}).r_star;
}

double threshold(fk::ProtocolKind kind, double Q) {
  return fk::find_n0(kind, fk::Probability(Q), kEps, figure_ec()).n0;
}

// 1. N0 within [3e4, 1e6] for BB84 at Q in {0.01, 0.025}; < 60 s each.
Outcome threshold_reproduction() {
  Outcome o;
  for (double Q : {0.01, 0.025}) {
    const auto t0 = Clock::now();
    const auto res = fk::find_n0(fk::ProtocolKind::bb84, fk::Probability(Q), kEps, figure_ec());
    const double secs = seconds_since(t0);
    o.check(res.exists && res.n0 >= 3e4 && res.n0 <= 1e6,
            fmt::format("BB84 Q={} N0={:.6g} expected in [3e4, 1e6]", Q, res.n0));
    o.check(secs < 60.0, fmt::format("BB84 Q={} runtime {:.2f} s < 60 s", Q, secs));
  }
  return o;
}

// 2. r(1e12) within 5% of 1 - 2.2 h(0.05); r(N) nondecreasing on [N0, 1e12].
Outcome asymptotic_convergence() {
  Outcome o;
  const double Q = 0.05;
  const double target = 1.0 - 2.2 * fk::binary_entropy(fk::Probability(Q));
  const double r12 = optimized_rate(fk::ProtocolKind::bb84, 1e12, Q);
  o.check(std::abs(r12 - target) <= 0.05 * target,
          fmt::format("r(1e12)={:.6f} target={:.6f} rel.err={:.4f} <= 0.05", r12, target,
                      std::abs(r12 - target) / target));

  const double n0 = threshold(fk::ProtocolKind::bb84, Q);
  double previous = -1.0;
  bool monotone = true;
  std::string where;
  for (double N : fk::log_space(n0, 1e12, 40)) {
    const double r = optimized_rate(fk::ProtocolKind::bb84, N, Q);
    if (r < previous) {
      monotone = false;
      where = fmt::format(" (drop at N={:.4g}: {:.6g} < {:.6g})", N, r, previous);
    }
    previous = r;
  }
  o.check(monotone,
          fmt::format("r(N) nondecreasing over 40 log points in [N0={:.6g}, 1e12]{}", n0, where));
  return o;
}

// 3. optimal p1 within a factor 2 of (1/n_b)(N/N0)^(-1/4) on [10 N0, 1e4 N0].
Outcome p1_heuristic() {
  Outcome o;
  for (auto kind : {fk::ProtocolKind::bb84, fk::ProtocolKind::six_states}) {
    for (double Q : {0.01, 0.025, 0.05}) {
      const double n0 = threshold(kind, Q);
      double worst = 1.0;
      for (double N : fk::log_space(10.0 * n0, 1e4 * n0, 13)) {
        const auto res = fk::optimize({kind, N, fk::Probability(Q), kEps, figure_ec()});
        const double p1 = 1.0 - res.p0_star;
        const double heuristic = std::pow(N / n0, -0.25) / fk::basis_count(kind);
        const double ratio = p1 / heuristic;
        if (std::abs(std::log(ratio)) > std::abs(std::log(worst))) worst = ratio;
      }
      o.check(worst >= 0.5 && worst <= 2.0,
              fmt::format("{} Q={} N0={:.6g}: worst p1/heuristic = {:.3f} within [0.5, 2]",
                          fk::to_string(kind), Q, n0, worst));
    }
  }
  return o;
}

// 4. six-states beats BB84 at N=1e10, Q=0.05; ordering reverses near the
// six-states threshold.
Outcome protocol_ordering() {
  Outcome o;
  const double Q = 0.05;
  const double bb = optimized_rate(fk::ProtocolKind::bb84, 1e10, Q);
  const double six = optimized_rate(fk::ProtocolKind::six_states, 1e10, Q);
  o.check(six > bb, fmt::format("N=1e10: six-states r={:.6f} > BB84 r={:.6f}", six, bb));

  const double n0_six = threshold(fk::ProtocolKind::six_states, Q);
  bool reversed = false;
  double at = 0.0;
  for (double N : fk::log_space(n0_six, 3.0 * n0_six, 9)) {
    const double rb = optimized_rate(fk::ProtocolKind::bb84, N, Q);
    const double rs = optimized_rate(fk::ProtocolKind::six_states, N, Q);
    if (rb >= rs) {
      reversed = true;
      at = N;
      break;
    }
  }
  o.check(reversed, fmt::format("BB84 >= six-states in [N0_six={:.6g}, 3 N0_six] (first at N={:.6g})",
                                n0_six, at));
  return o;
}

// 5. optimize vs exhaustive 1000^3 grid oracle, |dr| <= 1e-4, oracle < 10 min.
Outcome oracle_equivalence() {
  Outcome o;
  struct Case {
    bool six;
    double N;
    double Q;
  };
  const Case cases[] = {{false, 1e5, 0.01}, {false, 1e6, 0.01}, {false, 1e8, 0.05},
                        {true, 1e6, 0.025}, {true, 1e9, 0.05}};
  double oracle_seconds = 0.0;
  for (const auto& c : cases) {
    const auto t0 = Clock::now();
    const auto ref = fk::oracle::exhaustive_grid({c.six, c.N, c.Q, kEps, kEpsEc, kFec});
    oracle_seconds += seconds_since(t0);
    const auto kind = c.six ? fk::ProtocolKind::six_states : fk::ProtocolKind::bb84;
    const double r = optimized_rate(kind, c.N, c.Q);
    o.check(std::abs(r - ref.r) <= 1e-4,
            fmt::format("{} N={:.0e} Q={}: optimize={:.8f} oracle={:.8f} |diff|={:.2e} <= 1e-4",
                        fk::to_string(kind), c.N, c.Q, r, ref.r, std::abs(r - ref.r)));
  }
  o.check(oracle_seconds < 600.0, fmt::format("oracle runtime {:.1f} s < 600 s", oracle_seconds));
  return o;
}

// 6. Monte-Carlo soundness of the deviation bound over the 27-config matrix.
Outcome deviation_bound_soundness() {
  Outcome o;
  const auto t0 = Clock::now();
  constexpr std::uint64_t trials = 100000;
  constexpr std::uint64_t seed = 20070611;
  for (std::uint64_t m : {100u, 1000u, 10000u}) {
    for (double p : {0.05, 0.25, 0.5}) {
      for (double e : {0.5, 0.1, 0.01}) {
        const double rate =
            fk::empirical_violation_rate(fk::TrialConfig::binary(m, p, e, trials, seed));
        const double bound = e + 3.0 * std::sqrt(e / trials);
        o.check(rate <= bound,
                fmt::format("m={} p={} eps'={}: rate={:.5f} <= {:.5f}", m, p, e, rate, bound));
      }
    }
  }
  const double secs = seconds_since(t0);
  o.check(secs < 120.0, fmt::format("runtime {:.1f} s < 120 s", secs));
  return o;
}

// 7. Delta identity and property checks on >= 1000 random cases each.
Outcome formula_identities() {
  Outcome o;
  const auto budget = fk::SecurityBudget::create(kEps, kEpsEc, 5e-6, 1e-6);
  for (double n : {1e2, 1e4, 1e6, 1e8}) {
    const double assembled = fk::pa_penalty(budget) + n * fk::delta(n, 5e-6, 1e-6);
    const double closed = 2.0 * std::log2(1.0 / (2.0 * (kEps - 5e-6 - kEpsEc))) +
                          7.0 * std::sqrt(n * std::log2(2.0 / (5e-6 - 1e-6)));
    const double rel = std::abs(assembled - closed) / std::abs(closed);
    o.check(rel <= 1e-12, fmt::format("Delta identity n={:.0e}: rel.err={:.2e} <= 1e-12", n, rel));
  }

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr int cases = 2000;

  int sym_bad = 0, conc_bad = 0, clamp_bad = 0;
  for (int i = 0; i < cases; ++i) {
    const double p = unit(rng);
    if (std::abs(fk::binary_entropy(fk::Probability(p)) -
                 fk::binary_entropy(fk::Probability(1.0 - p))) >= 1e-12) {
      ++sym_bad;
    }
    const double a = unit(rng), b = unit(rng);
    const double mid = fk::binary_entropy(fk::Probability((a + b) / 2.0));
    const double avg =
        (fk::binary_entropy(fk::Probability(a)) + fk::binary_entropy(fk::Probability(b))) / 2.0;
    if (mid < avg - 1e-12) ++conc_bad;

    // Shifted rates anywhere in [0, 1.5]: both entropies stay in [0, 1].
    const double e0t = 1.5 * unit(rng), e1t = 1.5 * unit(rng);
    const double hb = fk::bb84_entropy_at(e1t);
    const double hs = fk::six_states_entropy_at(e0t, e1t);
    if (!(hb >= 0.0 && hb <= 1.0) || !(hs >= 0.0 && hs <= 1.0)) ++clamp_bad;
    if (e1t >= 0.5 && (hb != 0.0 || hs != 0.0)) ++clamp_bad;
  }
  o.check(sym_bad == 0, fmt::format("h symmetry: {} of {} cases violate 1e-12", sym_bad, cases));
  o.check(conc_bad == 0, fmt::format("h midpoint concavity: {} of {} cases violate", conc_bad, cases));
  o.check(clamp_bad == 0, fmt::format("H_xi clamping: {} of {} cases outside [0, 1] or resurrected",
                                      clamp_bad, cases));
  return o;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 8. Two sweeps from the same config file are byte-identical.
Outcome determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "finitekey_acceptance";
  std::filesystem::create_directories(dir);
  const auto cfg_path = dir / "sweep.json";
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({"mode": "sweep", "protocol": "six-states", "Q": [0.01, 0.05],)"
           R"( "N_range": "1e4:1e9:12", "format": "csv"})";
  }
  std::string outputs[2];
  for (int run = 0; run < 2; ++run) {
    fk::RunConfig config;
    fk::apply_config_file(cfg_path.string(), config);
    config.output_path = (dir / fmt::format("run{}.csv", run)).string();
    config.threads = run == 0 ? 1 : 4;
    fk::run(config, std::cout);
    outputs[run] = read_file(*config.output_path);
  }
  o.check(!outputs[0].empty() && outputs[0] == outputs[1],
          fmt::format("sweep outputs identical ({} bytes, threads 1 vs 4)", outputs[0].size()));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"threshold reproduction", threshold_reproduction},
      {"asymptotic convergence", asymptotic_convergence},
      {"p1 heuristic", p1_heuristic},
      {"protocol ordering", protocol_ordering},
      {"oracle equivalence", oracle_equivalence},
      {"deviation-bound soundness", deviation_bound_soundness},
      {"formula identities", formula_identities},
      {"determinism", determinism},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::stoi(argv[i]));
  if (selected.empty()) {
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);
  }

  int failures = 0;
  for (int id : selected) {
    if (id < 1 || id > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    const auto& [name, fn] = criteria[static_cast<std::size_t>(id - 1)];
    const auto t0 = Clock::now();
    const Outcome out = fn();
    for (const auto& note : out.notes) std::printf("%s\n", note.c_str());
    std::printf("[%s] criterion %d: %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", id, name.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
