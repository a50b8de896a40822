#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "rootsieve/pruitt.hpp"

using namespace rootsieve;

namespace {

std::map<long long, int> as_map(const MultiplicityTable& t) {
  std::map<long long, int> m;
  for (const auto& [z, mult] : t.entries) m[z] = mult;
  return m;
}

std::set<long long> zeros_with_multiplicity(const MultiplicityTable& t,
                                            int mult) {
  std::set<long long> out;
  for (const auto& [z, m] : t.entries)
    if (m == mult) out.insert(z);
  return out;
}

// Oracle: the set-difference cascade.  M_j collects multiples of
// products of j distinct primes <= p_k; zeros of multiplicity exactly j
// are M_j \ M_{j+1}.
std::set<long long> cascade_set(int k, int j) {
  const long long hi = nth_prime(k) * static_cast<long long>(nth_prime(k));
  std::set<long long> mj;
  std::vector<int> idx(j);
  // enumerate j-subsets of the first k primes
  std::function<void(int, int, long long)> rec = [&](int start, int left,
                                                     long long prod) {
    if (left == 0) {
      for (long long mult = prod; mult <= hi; mult += prod) mj.insert(mult);
      return;
    }
    for (int i = start; i <= k - left + 1; ++i)
      rec(i + 1, left - 1, prod * nth_prime(i));
  };
  rec(1, j, 1);
  return mj;
}

}  // namespace

TEST_CASE("f4 multiplicities: 30 and 42 are triple, 6 is double") {
  const auto m = as_map(classify_multiplicity(4));
  CHECK(m.at(30) == 3);
  CHECK(m.at(42) == 3);
  CHECK(m.at(6) == 2);
}

TEST_CASE("f4 multiplicity ledger matches the published sets") {
  const auto t = classify_multiplicity(4);
  const std::set<long long> z1 = zeros_with_multiplicity(t, 1);
  const std::set<long long> z2 = zeros_with_multiplicity(t, 2);
  const std::set<long long> z3 = zeros_with_multiplicity(t, 3);
  CHECK(z1 == std::set<long long>{2, 3, 4, 5, 7, 8, 9, 16, 22, 25, 26, 27, 32,
                                  33, 34, 38, 39, 44, 46, 49});
  CHECK(z2 == std::set<long long>{6, 10, 12, 14, 15, 18, 20, 21, 24, 28, 35,
                                  36, 40, 45, 48});
  CHECK(z3 == std::set<long long>{30, 42});
}

TEST_CASE("f3 simple and double zeros") {
  const auto t = classify_multiplicity(3);
  CHECK(zeros_with_multiplicity(t, 1) ==
        std::set<long long>{2, 3, 4, 5, 8, 9, 14, 16, 21, 22, 25});
  CHECK(zeros_with_multiplicity(t, 2) ==
        std::set<long long>{6, 10, 12, 15, 18, 20, 24});
}

TEST_CASE("property: divisor counting agrees with the set cascade") {
  for (int k = 2; k <= 6; ++k) {
    const auto t = classify_multiplicity(k);
    for (int j = 1; j <= k; ++j) {
      std::set<long long> at_least_j;
      for (const auto& [z, m] : t.entries)
        if (m >= j) at_least_j.insert(z);
      CHECK(at_least_j == cascade_set(k, j));
    }
  }
}

TEST_CASE("sieve_primes worked values") {
  CHECK(sieve_primes(3) == std::vector<long long>{7, 11, 13, 17, 19, 23});
  CHECK(sieve_primes(2) == std::vector<long long>{5, 7});
  CHECK(sieve_primes(1) == std::vector<long long>{3});
  CHECK_THROWS_AS(sieve_primes(0), std::out_of_range);
  CHECK_THROWS_AS(sieve_primes(11), std::out_of_range);
}

TEST_CASE("zero_set worked values") {
  const RootSet z3 = zero_set(3);
  CHECK(z3.points == std::vector<double>{2, 3, 4, 5, 6, 8, 9, 10, 12, 14, 15,
                                         16, 18, 20, 21, 22, 24, 25});
  CHECK(z3.resolution == doctest::Approx(1.0));
  CHECK(zero_set(1).points == std::vector<double>{2, 4});
  CHECK(zero_set(2).points == std::vector<double>{2, 3, 4, 6, 8, 9});
}

TEST_CASE("property: zero_set equals direct divisibility enumeration") {
  for (int k = 1; k <= 6; ++k) {
    std::vector<double> expected;
    const long long hi = nth_prime(k) * static_cast<long long>(nth_prime(k));
    for (long long j = 2; j <= hi; ++j) {
      for (int i = 1; i <= k; ++i) {
        if (j % nth_prime(i) == 0) {
          expected.push_back(static_cast<double>(j));
          break;
        }
      }
    }
    CHECK(zero_set(k).points == expected);
  }
}

TEST_CASE("property: |f_k| near a zero of multiplicity m scales like eps^m") {
  const double eps = 1e-6;
  for (int k = 2; k <= 4; ++k) {
    auto fk = FunctionModel::pruitt(k);
    for (const auto& [z, m] : classify_multiplicity(k).entries) {
      const double x = static_cast<double>(z);
      if (!fk.domain().contains(x + eps)) continue;
      const double fplus = std::abs(fk.value(x + eps));
      // log-log slope against a 10x smaller offset
      const double fsmall = std::abs(fk.value(x + eps / 10.0));
      const double slope = std::log10(fplus / fsmall);
      CHECK(std::abs(slope - m) < 0.1);
    }
  }
}
