#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rootsieve/quasistep.hpp"

namespace rootsieve {

/// Uniform grid of N+1 points x_i = lo + i*h over J.  Each point is
/// produced by a single fused computation so the abscissae are
/// reproducible bit for bit.
struct GridSpec {
  Interval interval;
  int n;

  GridSpec(Interval j, int subdivisions) : interval(j), n(subdivisions) {
    if (n < 2) throw std::invalid_argument("GridSpec: need N >= 2");
  }

  double h() const { return (interval.hi - interval.lo) / n; }
  double point(int i) const { return interval.lo + i * h(); }
};

/// Discretized educated map: values[i][r-1] holds the depth-r value at
/// x_i, std::nullopt where the chain is suppressed.
struct SweepTable {
  GridSpec grid;
  int depths = 1;
  std::vector<double> x;
  std::vector<std::vector<std::optional<double>>> values;
};

namespace detail {

inline int resolve_threads(int requested) {
  int n = requested;
  if (n <= 0) {
    n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
  }
  if (const char* env = std::getenv("ROOTSIEVE_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(1, n);
}

}  // namespace detail

/// Tabulates the educated map at every grid point for depths 1..depths.
/// Evaluations are pure and written by index, so the table is
/// bit-identical regardless of the worker count.
inline SweepTable sweep_grid(const EducatedMap& em, const GridSpec& grid,
                             int depths, int threads = 0) {
  if (depths < 1) throw std::invalid_argument("sweep_grid: depths >= 1");
  if (!em.cfg.domain.contains(grid.interval))
    throw std::invalid_argument("sweep_grid: grid outside predicate domain");

  SweepTable table{grid, depths, {}, {}};
  const int npts = grid.n + 1;
  table.x.resize(npts);
  table.values.assign(npts, std::vector<std::optional<double>>(depths));

  auto work = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      const double xi = grid.point(i);
      table.x[i] = xi;
      std::optional<double> cur = xi;
      for (int r = 0; r < depths; ++r) {
        cur = educated_step(em, *cur);
        if (!cur) break;  // suppression is sticky across depths
        table.values[i][r] = cur;
      }
    }
  };

  const int nworkers = std::min(detail::resolve_threads(threads), npts);
  if (nworkers == 1) {
    work(0, npts);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (npts + nworkers - 1) / nworkers;
    for (int w = 0; w < nworkers; ++w) {
      const int lo = w * chunk;
      const int hi = std::min(npts, lo + chunk);
      if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    for (auto& t : pool) t.join();
  }
  return table;
}

/// Maximal block of consecutive predicate-true grid points.
struct PredicateRun {
  int first_index = 0;
  int last_index = 0;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> values;  // depth-1 values across the run
};

inline std::vector<PredicateRun> detect_runs(const SweepTable& table) {
  if (table.x.empty()) throw std::invalid_argument("detect_runs: empty table");
  std::vector<PredicateRun> runs;
  const int npts = static_cast<int>(table.x.size());
  int i = 0;
  while (i < npts) {
    if (!table.values[i][0]) {
      ++i;
      continue;
    }
    PredicateRun run;
    run.first_index = i;
    while (i < npts && table.values[i][0]) {
      run.values.push_back(*table.values[i][0]);
      ++i;
    }
    run.last_index = i - 1;
    run.lo = table.x[run.first_index];
    run.hi = table.x[run.last_index];
    runs.push_back(std::move(run));
  }
  return runs;
}

/// One separated root: enclosing run, refined value, residual and the
/// composition depth at which successive depths became numerically
/// invariant.
struct RootReport {
  PredicateRun run;
  double root = 0.0;
  double residual = std::numeric_limits<double>::quiet_NaN();
  int depth = 0;
  bool invariant = false;
  bool possibly_multiple = false;
  std::string note;
};

namespace detail {

inline double abs_f(const EducatedMap& em, double x) {
  if (em.map.has_model()) {
    const auto j = em.map.model().eval(x);
    return j ? std::abs(j->v) : std::numeric_limits<double>::infinity();
  }
  const auto y = em.map(x);
  return y ? std::abs(*y - x) : std::numeric_limits<double>::infinity();
}

}  // namespace detail

/// Refines one root per run: seeds at the run's grid point with the
/// smallest |f| and composes the educated map until numerical
/// invariance |psi^{r+1}(x) - psi^r(x)| <= tol * max(1, |psi^r(x)|).
inline RootReport refine_run(const EducatedMap& em, const PredicateRun& run,
                             double tol, int r_max) {
  if (run.values.empty()) throw std::invalid_argument("refine_run: empty run");
  if (!(tol > 0.0)) throw std::invalid_argument("refine_run: tol > 0");

  RootReport report;
  report.run = run;

  double seed = run.lo;
  double best = std::numeric_limits<double>::infinity();
  const double h = run.values.size() > 1
                       ? (run.hi - run.lo) / (run.values.size() - 1)
                       : 0.0;
  for (std::size_t i = 0; i < run.values.size(); ++i) {
    const double xi = run.lo + i * h;
    const double fi = detail::abs_f(em, xi);
    if (fi < best) {
      best = fi;
      seed = xi;
    }
  }

  const double span =
      *std::max_element(run.values.begin(), run.values.end()) -
      *std::min_element(run.values.begin(), run.values.end());
  if (run.values.size() > 1 && span > 4.0 * h) report.possibly_multiple = true;

  std::optional<double> prev = educated_step(em, seed);
  if (!prev) {
    report.root = seed;
    report.depth = 0;
    report.note = "seed suppressed at depth 1";
    report.residual = detail::abs_f(em, seed);
    return report;
  }
  int depth = 1;
  while (depth < r_max) {
    const std::optional<double> next = educated_step(em, *prev);
    if (!next) {
      report.note = "composition suppressed at depth " + std::to_string(depth + 1);
      break;
    }
    ++depth;
    if (std::abs(*next - *prev) <= tol * std::max(1.0, std::abs(*prev))) {
      report.invariant = true;
      prev = next;
      break;
    }
    prev = next;
  }
  report.root = *prev;
  report.depth = depth;
  report.residual = detail::abs_f(em, report.root);
  return report;
}

struct SeparateResult {
  GridSpec grid;
  std::vector<PredicateRun> runs;
  std::vector<RootReport> reports;
};

/// End-to-end pipeline: sweep, detect runs, refine each run, then merge
/// adjacent reports that resolved to the same root (within 2h and equal
/// after rounding to tol), keeping the smaller residual.
inline SeparateResult separate(const FunctionModel& f, MapKind kind,
                               const PredicateConfig& cfg, const GridSpec& grid,
                               double tol, int r_max, int threads = 0) {
  const EducatedMap em{IterationMap::make(kind, f), cfg, 1};
  SweepTable table = sweep_grid(em, grid, 1, threads);
  SeparateResult result{grid, detect_runs(table), {}};
  for (const auto& run : result.runs)
    result.reports.push_back(refine_run(em, run, tol, r_max));

  std::sort(result.reports.begin(), result.reports.end(),
            [](const RootReport& a, const RootReport& b) {
              return a.root < b.root;
            });
  const double h = grid.h();
  std::vector<RootReport> merged;
  for (auto& r : result.reports) {
    if (!merged.empty()) {
      RootReport& last = merged.back();
      const double gap = std::abs(r.root - last.root);
      if (gap <= 2.0 * h &&
          gap <= tol * std::max(1.0, std::abs(last.root))) {
        if (r.residual < last.residual) last = std::move(r);
        continue;
      }
    }
    merged.push_back(std::move(r));
  }
  result.reports = std::move(merged);
  return result;
}

}  // namespace rootsieve
