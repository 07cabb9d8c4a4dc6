#include "nfc/interval.hpp"

#include <algorithm>
#include <sstream>

namespace nfc {

std::vector<std::pair<Int, unsigned long>> factorize(Int n) {
  std::vector<std::pair<Int, unsigned long>> out;
  if (n < 0) throw std::domain_error("factorize: negative");
  if (n <= 1) return out;
  for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    unsigned long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

Interval Interval::operator*(const Interval &o) const {
  Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
  return {std::min(std::min(a, b), std::min(c, d)),
          std::max(std::max(a, b), std::max(c, d))};
}

Interval Interval::operator/(const Interval &o) const {
  if (o.contains_zero()) throw std::domain_error("interval division by zero");
  Rat a = lo / o.lo, b = lo / o.hi, c = hi / o.lo, d = hi / o.hi;
  return {std::min(std::min(a, b), std::min(c, d)),
          std::max(std::max(a, b), std::max(c, d))};
}

std::string Interval::str(int digits) const {
  std::ostringstream os;
  os.precision(digits);
  os << mid().get_d();
  return os.str();
}

Interval ipow(const Interval &x, long e) {
  if (e == 0) return Interval(Rat(1));
  bool inv = e < 0;
  unsigned long a = static_cast<unsigned long>(inv ? -e : e);
  Interval r(Rat(1)), b = x;
  while (a) {
    if (a & 1) r = r * b;
    b = b * b;
    a >>= 1;
  }
  if (a % 2 == 0 && x.contains_zero() && r.lo < 0) r.lo = 0;
  if (inv) r = Interval(Rat(1)) / r;
  return r;
}

// Bisection on t^k = x endpoints.  x >= 0.
Interval iroot(const Interval &x, unsigned long k, const Rat &width) {
  if (x.lo < 0) throw std::domain_error("iroot of negative interval");
  if (k == 1) return x;
  auto root1 = [&](const Rat &v, bool upper) {
    if (v == 0) return Rat(0);
    Rat lo = 0, hi = v < 1 ? Rat(1) : v;
    while (hi - lo > width / 2) {
      Rat m = (lo + hi) / 2;
      if (rat_pow(m, (long)k) <= v)
        lo = m;
      else
        hi = m;
    }
    return upper ? hi : lo;
  };
  return {root1(x.lo, false), root1(x.hi, true)};
}

Interval ipow_rat(const Interval &x, const Rat &e, const Rat &width) {
  Int num = e.get_num(), den = e.get_den();
  bool neg = num < 0;
  if (neg) num = -num;
  if (!num.fits_slong_p() || !den.fits_ulong_p())
    throw std::domain_error("ipow_rat: exponent too large");
  Interval r = ipow(x, num.get_si());
  if (den != 1) r = iroot(r, den.get_ui(), width);
  if (neg) r = Interval(Rat(1)) / r;
  return r;
}

// Machin: pi/4 = 4 atan(1/5) - atan(1/239); atan by alternating series,
// partial sums bracket the limit.
Interval ipi(const Rat &width) {
  // Alternating series with decreasing terms: the limit lies within the
  // next term of any partial sum.
  auto atan_inv = [&](long q, const Rat &w) {
    Rat x(1, q), x2 = x * x, term = x, s = 0;
    for (int n = 0;; ++n) {
      Rat t = term / (2 * n + 1);
      if (t < w) return Interval(s - t, s + t);
      s += (n % 2 == 0) ? t : -t;
      term = term * x2;
    }
  };
  Rat w = width / 64;
  Interval a = atan_inv(5, w), b = atan_inv(239, w);
  return Interval(Rat(16)) * a - Interval(Rat(4)) * b;
}

// log x = 2 atanh(z), z = (x-1)/(x+1), after scaling x into [1,2) by
// powers of 2.  Remainder of the atanh tail is bounded by a geometric series.
static Interval ilog_point(const Rat &x, const Rat &width) {
  if (x <= 0) throw std::domain_error("log of nonpositive");
  static Rat log2_lo, log2_hi;
  static bool log2_ready = false;
  auto atanh_small = [](const Rat &z, const Rat &w) {
    // |z| < 1/2 always here
    Rat z2 = z * z, term = z, s = 0;
    for (int n = 0;; ++n) {
      s += term / (2 * n + 1);
      term = term * z2;
      Rat tail = (term / (2 * n + 3)) / (1 - z2);
      if (tail < w / 2) {
        if (z >= 0) return Interval(s, s + tail);
        return Interval(s - tail, s);
      }
    }
  };
  Rat w = width / 4;
  if (!log2_ready) {
    Interval l2 = atanh_small(Rat(1, 3), Rat(1, Int(1) << 80)) * Interval(Rat(2));
    log2_lo = l2.lo;
    log2_hi = l2.hi;
    log2_ready = true;
  }
  long k = 0;
  Rat y = x;
  while (y >= 2) {
    y /= 2;
    ++k;
  }
  while (y < 1) {
    y *= 2;
    --k;
  }
  Interval base = atanh_small((y - 1) / (y + 1), w) * Interval(Rat(2));
  Interval l2(log2_lo, log2_hi);
  return base + Interval(Rat(k)) * l2;
}

Interval ilog(const Interval &x, const Rat &width) {
  Interval a = ilog_point(x.lo, width / 2);
  Interval b = ilog_point(x.hi, width / 2);
  return {a.lo, b.hi};
}

}  // namespace nfc
