#include "finitekey/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "finitekey/errors.hpp"

namespace finitekey {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kWorst = -std::numeric_limits<double>::infinity();

// Unclamped (n/N) r', or -inf where the rate is undefined. Used as the search
// objective so the refinement still has a gradient to follow below r = 0.
double raw_score(const BoundBreakdown& b) {
  if (std::isnan(b.r_prime)) return kWorst;
  return (b.n / b.N) * b.r_prime;
}

struct Point {
  double p0;
  double log_eps_bar;
  double log_ratio;
};

class Search {
 public:
  Search(const OptimizationProblem& problem) : problem_(problem) {}

  void consider(const Point& x) {
    const double eps_bar = std::pow(10.0, x.log_eps_bar);
    const double eps_bar_prime = eps_bar * std::pow(10.0, x.log_ratio);
    BoundBreakdown b = evaluate(problem_, x.p0, eps_bar, eps_bar_prime);
    ++evaluations_;
    const double score = raw_score(b);
    if (score > best_score_) {
      best_score_ = score;
      best_ = x;
      best_breakdown_ = b;
      best_eps_bar_ = eps_bar;
      best_eps_bar_prime_ = eps_bar_prime;
    }
  }

  bool found() const { return best_score_ > kWorst; }
  const Point& best() const { return best_; }

  OptimizationResult result() const {
    OptimizationResult out;
    out.evaluations = evaluations_;
    if (!found()) {
      out.breakdown.N = problem_.N;
      out.breakdown.r_prime = kNaN;
      out.diagnostic = "no point with a valid allocation and budget";
      return out;
    }
    out.p0_star = best_.p0;
    out.eps_bar_star = best_eps_bar_;
    out.eps_bar_prime_star = best_eps_bar_prime_;
    out.breakdown = best_breakdown_;
    out.r_star = best_breakdown_.r;
    if (!best_breakdown_.feasible) out.diagnostic = "no feasible point: secure key length <= 0";
    return out;
  }

 private:
  const OptimizationProblem& problem_;
  double best_score_ = kWorst;
  Point best_{};
  BoundBreakdown best_breakdown_;
  double best_eps_bar_ = 0.0;
  double best_eps_bar_prime_ = 0.0;
  std::size_t evaluations_ = 0;
};

}  // namespace

void OptimizationProblem::validate() const {
  if (!(N >= 1.0) || !std::isfinite(N)) throw DomainError("N must be a finite value >= 1");
  if (!(eps > ec.eps_ec() && eps < 1.0)) {
    throw DomainError("eps must satisfy eps_ec < eps < 1");
  }
}

BoundBreakdown evaluate(const OptimizationProblem& problem, double p0, double eps_bar,
                        double eps_bar_prime) {
  BoundBreakdown b;
  b.N = problem.N;
  b.n = b.m = b.xi_1 = b.delta = b.total_penalty = b.h_xi = b.leak_ec = b.ell = kNaN;
  b.r_prime = kNaN;
  if (!(p0 > 0.0 && p0 < 1.0) || !(problem.N >= 1.0)) return b;

  const SiftingAllocation alloc = sift(problem.kind, problem.N, p0);
  b.n = alloc.n;
  b.m = alloc.m;
  if (!alloc.feasible()) return b;

  const auto budget =
      SecurityBudget::try_create(problem.eps, problem.ec.eps_ec(), eps_bar, eps_bar_prime);
  if (!budget) return b;

  const double q = problem.Q.value();
  b.xi_1 = xi(alloc.m, 2, eps_bar_prime);
  if (problem.kind == ProtocolKind::bb84) {
    b.h_xi = bb84_entropy_at(q + b.xi_1);
  } else {
    b.xi_0 = xi(alloc.n, 2, eps_bar_prime);
    b.h_xi = six_states_entropy_at(q + *b.xi_0, q + b.xi_1);
  }
  b.leak_ec = h_xy(problem.Q, problem.ec.f_ec()) * alloc.n;
  b.delta = delta_for_gap(alloc.n, budget->smoothing_gap());
  b.total_penalty = total_penalty(alloc.n, *budget);
  b.ell = key_length(alloc.n, b.h_xi - b.delta, b.leak_ec, *budget);
  b.r_prime = sifted_rate(alloc.n, b.h_xi, b.leak_ec, *budget);
  b.feasible = b.ell > 0.0;
  b.r = b.feasible ? (alloc.n / problem.N) * b.r_prime : 0.0;
  return b;
}

OptimizationResult optimize(const OptimizationProblem& problem, const SearchConfig& config) {
  problem.validate();
  if (config.p0_points < 1 || config.eps_bar_points < 1 || config.ratio_points < 1 ||
      config.refine_half_width < 1 || !(config.shrink > 1.0)) {
    throw DomainError("invalid search configuration");
  }

  const double log_top = std::log10(problem.eps - problem.ec.eps_ec());
  double step_p0 = 1.0 / (config.p0_points + 1);
  double step_eb = config.eps_bar_decades / config.eps_bar_points;
  double step_ratio = config.ratio_decades / config.ratio_points;

  Search search(problem);
  for (int i = 1; i <= config.p0_points; ++i) {
    for (int j = 1; j <= config.eps_bar_points; ++j) {
      for (int k = 1; k <= config.ratio_points; ++k) {
        search.consider({i * step_p0, log_top - j * step_eb, -k * step_ratio});
      }
    }
  }

  if (search.found()) {
    const int w = config.refine_half_width;
    for (int round = 0; round < config.refine_rounds; ++round) {
      step_p0 /= config.shrink;
      step_eb /= config.shrink;
      step_ratio /= config.shrink;
      const Point center = search.best();
      for (int i = -w; i <= w; ++i) {
        for (int j = -w; j <= w; ++j) {
          for (int k = -w; k <= w; ++k) {
            if (i == 0 && j == 0 && k == 0) continue;
            search.consider({center.p0 + i * step_p0, center.log_eps_bar + j * step_eb,
                             center.log_ratio + k * step_ratio});
          }
        }
      }
    }
  }
  return search.result();
}

ThresholdResult find_n0(ProtocolKind kind, Probability Q, double eps,
                        const ErrorCorrectionModel& ec, const SearchConfig& config,
                        const ThresholdOptions& options) {
  ThresholdResult out;
  const double asymptotic = asymptotic_rate(
      asymptotic_entropy(kind, ChannelStatistics::uniform(Q)), h_xy(Q, ec.f_ec()));
  if (!(asymptotic > 0.0)) {
    out.diagnostic = "asymptotic rate is not positive at this Q; no threshold exists";
    return out;
  }

  auto positive = [&](double N) {
    ++out.probes;
    return optimize({kind, N, Q, eps, ec}, config).r_star > 0.0;
  };

  double lo = 0.0;
  double hi = options.start_N;
  if (positive(hi)) {
    lo = hi / 2.0;
    while (lo >= 1.0 && positive(lo)) {
      hi = lo;
      lo /= 2.0;
    }
    lo = std::max(lo, 1.0);
  } else {
    lo = hi;
    hi *= 2.0;
    while (!positive(hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi > options.max_N) {
        out.diagnostic = "no positive rate found below the search cap";
        return out;
      }
    }
  }

  while (hi / lo - 1.0 > options.relative_tolerance) {
    const double mid = std::sqrt(lo * hi);
    if (positive(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.exists = true;
  out.n0_real = hi;
  out.n0 = std::ceil(hi);
  return out;
}

std::vector<SweepCell> sweep(ProtocolKind kind, std::span<const double> N_grid,
                             std::span<const double> Q_list, double eps,
                             const ErrorCorrectionModel& ec, const SearchConfig& config,
                             unsigned threads) {
  std::vector<SweepCell> cells;
  cells.reserve(N_grid.size() * Q_list.size());
  for (double q : Q_list) {
    for (double N : N_grid) {
      cells.push_back({kind, N, Probability(q).value(), {}});
      OptimizationProblem{kind, N, Probability(q), eps, ec}.validate();
    }
  }

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(cells.size(), 1)));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      SweepCell& c = cells[i];
      c.result = optimize({c.kind, c.N, Probability(c.Q), eps, ec}, config);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return cells;
}

}  // namespace finitekey
