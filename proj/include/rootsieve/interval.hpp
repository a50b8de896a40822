#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rootsieve {

/// Closed bounded interval [lo, hi].
struct Interval {
  double lo;
  double hi;

  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi))
      throw std::invalid_argument("Interval: requires finite lo < hi");
  }

  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  double length() const { return hi - lo; }
};

inline Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

}  // namespace rootsieve
