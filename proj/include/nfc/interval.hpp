#pragma once

#include <optional>
#include <string>

#include "nfc/rat.hpp"

namespace nfc {

// Closed interval with exact rational endpoints.  All operations return
// enclosures of the exact result.
struct Interval {
  Rat lo, hi;

  Interval() : lo(0), hi(0) {}
  Interval(const Rat &x) : lo(x), hi(x) {}
  Interval(const Rat &l, const Rat &h) : lo(l), hi(h) {
    if (l > h) throw std::invalid_argument("interval: lo > hi");
  }

  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }

  Interval operator+(const Interval &o) const { return {lo + o.lo, hi + o.hi}; }
  Interval operator-(const Interval &o) const { return {lo - o.hi, hi - o.lo}; }
  Interval operator-() const { return {-hi, -lo}; }
  Interval operator*(const Interval &o) const;
  Interval operator/(const Interval &o) const;

  Interval &operator+=(const Interval &o) { return *this = *this + o; }
  Interval &operator*=(const Interval &o) { return *this = *this * o; }

  // Certain comparisons; nullopt when the intervals overlap.
  std::optional<bool> certainly_le(const Interval &o) const {
    if (hi <= o.lo) return true;
    if (lo > o.hi) return false;
    return std::nullopt;
  }

  std::string str(int digits = 12) const;
  double approx() const { return mid().get_d(); }
};

Interval ipow(const Interval &x, long e);
// x^(1/k) for x >= 0, k >= 1, to within `width`.
Interval iroot(const Interval &x, unsigned long k, const Rat &width);
// x^(p/q) for x >= 0.
Interval ipow_rat(const Interval &x, const Rat &e, const Rat &width);

// Enclosures computed by series with explicit remainder bounds.
Interval ipi(const Rat &width);
Interval ilog(const Interval &x, const Rat &width);  // natural log, x > 0

inline Rat default_width() { return Rat(1, Int(1) << 60); }

}  // namespace nfc
