#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rootsieve/funcmodel.hpp"
#include "rootsieve/predicates.hpp"

namespace rootsieve {

/// Educated quasi-step map: the iteration map g restricted to the
/// points where the configured predicate holds, suppressed (the paper
/// renders the sentinel as 0) everywhere else, composed `depth` times.
struct EducatedMap {
  IterationMap map;
  PredicateConfig cfg;
  int depth = 1;
};

/// One application of the educated map: predicate image on success,
/// std::nullopt where the predicate fails.
inline std::optional<double> educated_step(const EducatedMap& em, double x) {
  const PredicateOutcome out = eval_predicate(em.map, em.cfg, x);
  if (!out.holds) return std::nullopt;
  return out.image;
}

/// depth-fold composition of the educated map itself, so suppression is
/// sticky: once an intermediate fails the predicate the whole chain is
/// suppressed.
inline std::optional<double> educated_eval(const EducatedMap& em, double x) {
  if (em.depth < 1) throw std::invalid_argument("EducatedMap: depth >= 1");
  std::optional<double> cur = x;
  for (int i = 0; i < em.depth; ++i) {
    cur = educated_step(em, *cur);
    if (!cur) return std::nullopt;
  }
  return cur;
}

/// Strictly increasing fixed points plus their resolution (minimum gap
/// between consecutive points).
struct RootSet {
  std::vector<double> points;
  double resolution = std::numeric_limits<double>::infinity();
};

inline RootSet make_root_set(std::vector<double> points) {
  std::sort(points.begin(), points.end());
  RootSet rs;
  rs.points = std::move(points);
  for (std::size_t i = 1; i < rs.points.size(); ++i) {
    const double gap = rs.points[i] - rs.points[i - 1];
    if (!(gap > 0.0))
      throw std::invalid_argument("RootSet: points must be distinct");
    rs.resolution = std::min(rs.resolution, gap);
  }
  return rs;
}

inline double resolution(const RootSet& rs) {
  if (rs.points.size() < 2)
    throw std::invalid_argument("resolution: need at least 2 points");
  return rs.resolution;
}

/// eta / 2; any displacement strictly below it separates the attracting
/// fixed points.
inline double separation_bound(const RootSet& rs) {
  return resolution(rs) / 2.0;
}

/// Exact step map of the k-th Pruitt function: the closest integer [x]
/// (ties to even) when [x] is divisible by one of the first k primes,
/// else 0.  Divisibility is decided on integers, not by comparing a
/// floating sine product to zero.
inline long long pruitt_step_map(int k, double x) {
  if (k < 1 || k > kMaxPruittIndex)
    throw std::out_of_range("pruitt_step_map: k must be in [1, 25]");
  if (!pruitt_interval(k).contains(x))
    throw std::out_of_range("pruitt_step_map: x outside I_k");
  const long long j = std::llrint(std::nearbyint(x));
  for (int i = 1; i <= k; ++i)
    if (j % nth_prime(i) == 0) return j;
  return 0;
}

}  // namespace rootsieve
