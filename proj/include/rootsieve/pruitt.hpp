#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "rootsieve/funcmodel.hpp"
#include "rootsieve/quasistep.hpp"

namespace rootsieve {

// Exact integer enumeration is kept instant by capping the family index
// here; the cap is a constant, not a structural limit.
inline constexpr int kMaxSieveIndex = 10;

/// Integer zeros of f_k with their multiplicities.  The multiplicity of
/// a zero j equals the number of distinct primes p_i <= p_k dividing j,
/// by the product form of f_k.
struct MultiplicityTable {
  int k = 0;
  std::vector<std::pair<long long, int>> entries;  // (zero, multiplicity)
};

namespace detail {

inline void check_sieve_index(int k, const char* where) {
  if (k < 1 || k > kMaxSieveIndex)
    throw std::out_of_range(std::string(where) + ": k must be in [1, 10]");
}

inline long long pruitt_int_hi(int k) {
  const long long pk = nth_prime(k);
  return pk * pk;  // largest integer in [3/2, p_k^2 + 1/3]
}

}  // namespace detail

inline MultiplicityTable classify_multiplicity(int k) {
  detail::check_sieve_index(k, "classify_multiplicity");
  MultiplicityTable table;
  table.k = k;
  for (long long j = 2; j <= detail::pruitt_int_hi(k); ++j) {
    int m = 0;
    for (int i = 1; i <= k; ++i)
      if (j % nth_prime(i) == 0) ++m;
    if (m > 0) table.entries.emplace_back(j, m);
  }
  return table;
}

/// Primes p with p_k < p <= p_k^2, read off as the integers where the
/// Pruitt step map vanishes.
inline std::vector<long long> sieve_primes(int k) {
  detail::check_sieve_index(k, "sieve_primes");
  std::vector<long long> primes;
  for (long long j = nth_prime(k) + 1; j <= detail::pruitt_int_hi(k); ++j)
    if (pruitt_step_map(k, static_cast<double>(j)) == 0) primes.push_back(j);
  return primes;
}

/// All integer zeros of f_k in I_k: the primes <= p_k and their
/// multiples up to p_k^2.
inline RootSet zero_set(int k) {
  detail::check_sieve_index(k, "zero_set");
  std::vector<double> zeros;
  for (const auto& [j, m] : classify_multiplicity(k).entries)
    zeros.push_back(static_cast<double>(j));
  return make_root_set(std::move(zeros));
}

}  // namespace rootsieve
