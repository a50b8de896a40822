#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "rootsieve/funcmodel.hpp"

using namespace rootsieve;

namespace {

// Central finite differences, the independent oracle for the jets.
// h1 = eps^{1/3} max(1,|x|) for d1, h2 = eps^{1/4} max(1,|x|) for d2.
struct FdResult {
  double d1, d2;
  bool ok;
};

FdResult central_diff(const FunctionModel& m, double x) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double scale = std::max(1.0, std::abs(x));
  const double h1 = std::cbrt(eps) * scale;
  const double h2 = std::pow(eps, 0.25) * scale;
  const auto fp1 = m.eval(x + h1), fm1 = m.eval(x - h1);
  const auto fp2 = m.eval(x + h2), fm2 = m.eval(x - h2);
  const auto f0 = m.eval(x);
  if (!fp1 || !fm1 || !fp2 || !fm2 || !f0) return {0, 0, false};
  return {(fp1->v - fm1->v) / (2.0 * h1),
          (fp2->v - 2.0 * f0->v + fm2->v) / (h2 * h2), true};
}

void check_against_fd(const FunctionModel& m, int npoints, std::mt19937& rng) {
  // Second-derivative scale over the domain.  The h^2 truncation of the
  // d2 stencil is driven by sup|f''''|, so a pointwise-relative
  // comparison at zeros of f'' would measure the oracle's error rather
  // than the jets'.
  double s2 = 1.0;
  for (int i = 0; i <= 256; ++i) {
    const double x =
        m.domain().lo + (m.domain().hi - m.domain().lo) * i / 256.0;
    if (const auto j = m.eval(x))
      if (j->finite()) s2 = std::max(s2, std::abs(j->d2));
  }
  std::uniform_real_distribution<double> xs(m.domain().lo, m.domain().hi);
  int checked = 0;
  int tries = 0;
  while (checked < npoints && tries < npoints * 20) {
    ++tries;
    const double x = xs(rng);
    const auto jet = m.eval(x);
    if (!jet) continue;
    const FdResult fd = central_diff(m, x);
    if (!fd.ok) continue;
    const double tol = 1e-5;
    CHECK(std::abs(jet->d1 - fd.d1) <=
          tol * std::max({1.0, std::abs(jet->d1), std::abs(fd.d1)}));
    CHECK(std::abs(jet->d2 - fd.d2) <=
          tol * std::max({s2, std::abs(jet->d2), std::abs(fd.d2)}));
    ++checked;
  }
  CHECK(checked == npoints);
}

}  // namespace

TEST_CASE("polynomial model evaluates value and derivatives (Horner)") {
  // p(x) = 1 - 2x + 3x^2
  auto m = FunctionModel::polynomial({1.0, -2.0, 3.0}, Interval(-5, 5));
  const auto j = m.eval(2.0);
  REQUIRE(j);
  CHECK(j->v == doctest::Approx(9.0));
  CHECK(j->d1 == doctest::Approx(10.0));
  CHECK(j->d2 == doctest::Approx(6.0));
}

TEST_CASE("pruitt model: values at integers follow divisibility") {
  auto f3 = FunctionModel::pruitt(3);
  // 7 is coprime to 2, 3, 5
  CHECK(std::abs(f3.value(7.0)) > 0.1);
  // 6 is divisible by 2 and 3: double zero, tiny floating residue only
  CHECK(std::abs(f3.value(6.0)) < 1e-12);
}

TEST_CASE("pruitt domain is [3/2, p_k^2 + 1/3]") {
  auto f3 = FunctionModel::pruitt(3);
  CHECK(f3.domain().lo == doctest::Approx(1.5));
  CHECK(f3.domain().hi == doctest::Approx(25.0 + 1.0 / 3.0));
  CHECK_THROWS_AS(FunctionModel::pruitt(0), std::out_of_range);
  CHECK_THROWS_AS(FunctionModel::pruitt(26), std::out_of_range);
}

TEST_CASE("property: pruitt zero at integer j iff some p_i <= p_k divides j") {
  for (int k = 1; k <= 4; ++k) {
    auto fk = FunctionModel::pruitt(k);
    const long long hi = nth_prime(k) * static_cast<long long>(nth_prime(k));
    for (long long j = 2; j <= hi; ++j) {
      bool divisible = false;
      for (int i = 1; i <= k; ++i)
        if (j % nth_prime(i) == 0) divisible = true;
      const double v = fk.value(static_cast<double>(j));
      if (divisible)
        CHECK(std::abs(v) < 1e-9);
      else
        CHECK(std::abs(v) > 1e-6);
    }
  }
}

TEST_CASE("oscillating model flagged at 0, finite elsewhere") {
  auto f = FunctionModel::oscillating();
  CHECK_FALSE(f.eval(0.0));
  const auto j = f.eval(0.3);
  REQUIRE(j);
  CHECK(j->v == doctest::Approx(std::pow(0.8, 1.5) * std::sin(1.0 / 0.09)));
}

TEST_CASE("from_spec registry names") {
  CHECK(FunctionModel::from_spec("pruitt:3").name() == "pruitt:3");
  CHECK(FunctionModel::from_spec("oscillating").name() == "oscillating");
  auto p = FunctionModel::from_spec("poly:-2,0,1", Interval(0, 2));
  CHECK(p.value(1.0) == doctest::Approx(-1.0));  // x^2 - 2 at 1
  auto e = FunctionModel::from_spec("x^2-2", Interval(0, 2));
  CHECK(e.value(1.0) == doctest::Approx(-1.0));
  CHECK_THROWS(FunctionModel::from_spec("pruitt:zz"));
}

TEST_CASE("property: jets agree with central finite differences") {
  std::mt19937 rng(987654321);
  std::vector<FunctionModel> corpus;
  corpus.push_back(FunctionModel::polynomial({1, -2, 3}, Interval(-5, 5)));
  corpus.push_back(
      FunctionModel::polynomial({-2, 0, 1}, Interval(-3, 3)));  // x^2-2
  corpus.push_back(FunctionModel::polynomial({0, 1, 0, -1, 0.25},
                                             Interval(-2, 2)));
  corpus.push_back(FunctionModel::pruitt(1));
  corpus.push_back(FunctionModel::pruitt(2));
  corpus.push_back(FunctionModel::pruitt(3));
  corpus.push_back(FunctionModel::expression("sin(pi*x/2)", Interval(-4, 4)));
  corpus.push_back(FunctionModel::expression("exp(x)*cos(x)", Interval(-2, 2)));
  corpus.push_back(
      FunctionModel::expression("log(x)+sqrt(x)", Interval(0.5, 9)));
  corpus.push_back(
      FunctionModel::expression("(x+1/2)^(3/2)*sin(1/x)", Interval(0.2, 0.5)));
  CHECK(corpus.size() == 10);
  for (const auto& m : corpus) check_against_fd(m, 100, rng);
}
