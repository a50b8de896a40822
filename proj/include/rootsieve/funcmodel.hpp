#pragma once

#include <array>
#include <charconv>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rootsieve/expr.hpp"
#include "rootsieve/interval.hpp"
#include "rootsieve/jet.hpp"

namespace rootsieve {

inline constexpr double kPi = 3.14159265358979323846;

/// First 25 primes; upper bound of the supported Pruitt family.
inline constexpr std::array<int, 25> kFirstPrimes = {
    2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

inline constexpr int kMaxPruittIndex = 25;

inline int nth_prime(int i) {
  if (i < 1 || i > kMaxPruittIndex)
    throw std::out_of_range("nth_prime: index out of range");
  return kFirstPrimes[static_cast<std::size_t>(i - 1)];
}

/// Definition interval of the k-th Pruitt product, [3/2, p_k^2 + 1/3].
inline Interval pruitt_interval(int k) {
  const double pk = nth_prime(k);
  return Interval(1.5, pk * pk + 1.0 / 3.0);
}

/// Target function f with first and second derivatives.  Evaluation is
/// pure; a model may be shared across threads.  Singular points surface
/// as std::nullopt, never as NaN values or traps.
class FunctionModel {
 public:
  using Evaluator = std::function<Jet2(double)>;

  FunctionModel(std::string name, Interval domain, Evaluator eval)
      : name_(std::move(name)), domain_(domain), eval_(std::move(eval)) {}

  const std::string& name() const { return name_; }
  const Interval& domain() const { return domain_; }

  std::optional<Jet2> eval(double x) const {
    const Jet2 j = eval_(x);
    if (!j.finite()) return std::nullopt;
    return j;
  }

  /// Value only; NaN stands in for a flagged evaluation.
  double value(double x) const {
    auto j = eval(x);
    return j ? j->v : std::numeric_limits<double>::quiet_NaN();
  }

  /// Coefficients in ascending degree, evaluated in Horner form.
  static FunctionModel polynomial(std::vector<double> coeffs, Interval domain) {
    if (coeffs.empty())
      throw std::invalid_argument("polynomial: empty coefficient list");
    std::string name = "poly:";
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (i) name += ',';
      name += detail::format_number(coeffs[i]);
    }
    return FunctionModel(std::move(name), domain,
                         [c = std::move(coeffs)](double x) {
                           const Jet2 X = Jet2::variable(x);
                           Jet2 acc = Jet2::constant(c.back());
                           for (std::size_t i = c.size() - 1; i-- > 0;)
                             acc = acc * X + c[i];
                           return acc;
                         });
  }

  /// f_k(x) = prod_{i<=k} sin(x pi / p_i) on [3/2, p_k^2 + 1/3].
  /// Derivatives come from the jet product, so the zeros of individual
  /// factors cause no singularities.
  static FunctionModel pruitt(int k) {
    if (k < 1 || k > kMaxPruittIndex)
      throw std::out_of_range("pruitt: k must be in [1, 25]");
    return FunctionModel("pruitt:" + std::to_string(k), pruitt_interval(k),
                         [k](double x) {
                           const Jet2 X = Jet2::variable(x);
                           Jet2 acc = Jet2::constant(1.0);
                           for (int i = 1; i <= k; ++i)
                             acc = acc * sin(X * (kPi / nth_prime(i)));
                           return acc;
                         });
  }

  /// (x + 1/2)^{3/2} sin(1/x^2) on [-1/2, 1/2]; flagged at x = 0 where
  /// the derivative is unbounded.  Its zeros cluster at +-1/sqrt(m*pi).
  static FunctionModel oscillating() {
    return FunctionModel("oscillating", Interval(-0.5, 0.5), [](double x) {
      const Jet2 X = Jet2::variable(x);
      return pow(X + 0.5, 1.5) * sin(1.0 / (X * X));
    });
  }

  static FunctionModel expression(std::string_view text, Interval domain) {
    ExprPtr tree = parse_expression(text);
    return FunctionModel(std::string(text), domain,
                         [tree](double x) { return eval_expression(tree, x); });
  }

  /// Registry lookup: "pruitt:k", "oscillating", "poly:c0,c1,...".
  /// Anything else is parsed as an expression.  `fallback` supplies the
  /// domain for polynomial and expression models.
  static FunctionModel from_spec(std::string_view spec,
                                 std::optional<Interval> fallback = {}) {
    if (spec == "oscillating") return oscillating();
    if (spec.rfind("pruitt:", 0) == 0) {
      int k = 0;
      const char* first = spec.data() + 7;
      const char* last = spec.data() + spec.size();
      auto [ptr, ec] = std::from_chars(first, last, k);
      if (ec != std::errc{} || ptr != last)
        throw std::invalid_argument("bad pruitt spec: " + std::string(spec));
      return pruitt(k);
    }
    if (spec.rfind("poly:", 0) == 0) {
      if (!fallback)
        throw std::invalid_argument("poly spec requires an interval");
      std::vector<double> coeffs;
      std::string_view rest = spec.substr(5);
      while (!rest.empty()) {
        const std::size_t comma = rest.find(',');
        const std::string_view tok = rest.substr(0, comma);
        double c = 0.0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), c);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
          throw std::invalid_argument("bad poly coefficient: " +
                                      std::string(tok));
        coeffs.push_back(c);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
      return polynomial(std::move(coeffs), *fallback);
    }
    if (!fallback)
      throw std::invalid_argument("expression spec requires an interval");
    return expression(spec, *fallback);
  }

 private:
  std::string name_;
  Interval domain_;
  Evaluator eval_;
};

}  // namespace rootsieve
