#pragma once

#include <cmath>
#include <stdexcept>

#include "rootsieve/interval.hpp"
#include "rootsieve/itermaps.hpp"

namespace rootsieve {

enum class PredicateMode { P0, P1, Both };

/// Domain D and vertical displacement d educating a map.  d matters
/// only when the mode involves the displacement predicate.
struct PredicateConfig {
  Interval domain;
  double d = 0.0;
  PredicateMode mode = PredicateMode::P0;

  PredicateConfig(Interval dom, PredicateMode m, double disp = 0.0)
      : domain(dom), d(disp), mode(m) {
    if ((m == PredicateMode::P0 || m == PredicateMode::Both) && !(d > 0.0))
      throw std::invalid_argument(
          "PredicateConfig: displacement predicate requires d > 0");
  }
};

/// `image` is g(x) for the displacement predicate and g(g(x)) for the
/// slope predicate; meaningful only when `holds`.
struct PredicateOutcome {
  bool holds = false;
  double image = 0.0;
};

/// Displacement predicate: x in D, y = g(x) in D, |y - x| < d (strict).
/// A flagged g(x) fails the predicate.
inline PredicateOutcome eval_p0(const IterationMap& g,
                                const PredicateConfig& cfg, double x) {
  if (!cfg.domain.contains(x)) return {};
  const auto y = g(x);
  if (!y || !cfg.domain.contains(*y)) return {};
  if (!(std::abs(*y - x) < cfg.d)) return {};
  return {true, *y};
}

/// Slope predicate: x, y = g(x), w = g(y) all in D and |w - y| <= |y - x|
/// (non-strict, so fixed points qualify).
inline PredicateOutcome eval_p1(const IterationMap& g,
                                const PredicateConfig& cfg, double x) {
  if (!cfg.domain.contains(x)) return {};
  const auto y = g(x);
  if (!y || !cfg.domain.contains(*y)) return {};
  const auto w = g(*y);
  if (!w || !cfg.domain.contains(*w)) return {};
  if (!(std::abs(*w - *y) <= std::abs(*y - x))) return {};
  return {true, *w};
}

/// Conjunction of both predicates; the image is w = g(g(x)).
inline PredicateOutcome eval_both(const IterationMap& g,
                                  const PredicateConfig& cfg, double x) {
  const PredicateOutcome p0 = eval_p0(g, cfg, x);
  if (!p0.holds) return {};
  return eval_p1(g, cfg, x);
}

inline PredicateOutcome eval_predicate(const IterationMap& g,
                                       const PredicateConfig& cfg, double x) {
  switch (cfg.mode) {
    case PredicateMode::P0:
      return eval_p0(g, cfg, x);
    case PredicateMode::P1:
      return eval_p1(g, cfg, x);
    case PredicateMode::Both:
      return eval_both(g, cfg, x);
  }
  return {};
}

}  // namespace rootsieve
