#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <utility>

#include "rootsieve/funcmodel.hpp"
#include "rootsieve/interval.hpp"

namespace rootsieve {

enum class MapKind { Newton, Halley, Custom };

/// One raw iteration step from a jet of f at x.  Singular denominators
/// yield std::nullopt; no NaN/inf ever escapes as a plain value.
inline std::optional<double> newton_step(double x, const Jet2& f) {
  const double y = x - f.v / f.d1;
  if (!std::isfinite(y)) return std::nullopt;
  return y;
}

inline std::optional<double> halley_step(double x, const Jet2& f) {
  const double den = 2.0 * f.d1 * f.d1 - f.v * f.d2;
  const double y = x - 2.0 * f.v * f.d1 / den;
  if (!std::isfinite(y)) return std::nullopt;
  return y;
}

/// Fixed-point map g whose fixed points encode roots of f.  The raw map
/// applies no damping or safeguarding; the predicates are responsible
/// for discarding wild steps.
class IterationMap {
 public:
  using CustomFn = std::function<std::optional<double>(double)>;

  static IterationMap newton(FunctionModel model) {
    return IterationMap(MapKind::Newton, std::move(model));
  }
  static IterationMap halley(FunctionModel model) {
    return IterationMap(MapKind::Halley, std::move(model));
  }
  static IterationMap make(MapKind kind, FunctionModel model) {
    if (kind == MapKind::Custom)
      throw std::invalid_argument("custom maps need an explicit function");
    return IterationMap(kind, std::move(model));
  }
  static IterationMap custom(CustomFn fn, Interval domain) {
    IterationMap m(MapKind::Custom, std::nullopt, domain);
    m.custom_ = std::move(fn);
    return m;
  }

  MapKind kind() const { return kind_; }
  const Interval& domain() const { return domain_; }
  bool has_model() const { return model_.has_value(); }
  const FunctionModel& model() const { return *model_; }

  std::optional<double> operator()(double x) const {
    if (!std::isfinite(x)) return std::nullopt;
    if (kind_ == MapKind::Custom) {
      auto y = custom_(x);
      if (y && !std::isfinite(*y)) return std::nullopt;
      return y;
    }
    const auto f = model_->eval(x);
    if (!f) return std::nullopt;
    return kind_ == MapKind::Newton ? newton_step(x, *f) : halley_step(x, *f);
  }

 private:
  IterationMap(MapKind kind, FunctionModel model)
      : kind_(kind), domain_(model.domain()), model_(std::move(model)) {}
  IterationMap(MapKind kind, std::optional<FunctionModel> model,
               Interval domain)
      : kind_(kind), domain_(domain), model_(std::move(model)) {}

  MapKind kind_;
  Interval domain_;
  std::optional<FunctionModel> model_;
  CustomFn custom_;
};

/// g^r(x); short-circuits as soon as an intermediate leaves the finite
/// reals.
inline std::optional<double> iterate_r(const IterationMap& m, double x, int r) {
  if (r < 1) throw std::invalid_argument("iterate_r: r must be >= 1");
  std::optional<double> cur = x;
  for (int i = 0; i < r; ++i) {
    cur = m(*cur);
    if (!cur) return std::nullopt;
  }
  return cur;
}

}  // namespace rootsieve
