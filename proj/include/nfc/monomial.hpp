#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nfc/perm.hpp"
#include "nfc/rat.hpp"

namespace nfc {

// Exponent vector of a monomial in n variables.
struct Mono {
  std::vector<uint8_t> e;

  Mono() {}
  explicit Mono(int n) : e(n, 0) {}
  explicit Mono(std::vector<uint8_t> v) : e(std::move(v)) {}

  int vars() const { return (int)e.size(); }
  int degree() const {
    int d = 0;
    for (uint8_t x : e) d += x;
    return d;
  }
  bool operator==(const Mono &o) const { return e == o.e; }
  bool operator<(const Mono &o) const { return e < o.e; }

  // image under g: variable i goes to variable g(i)
  Mono apply(const Perm &g) const {
    Mono r((int)e.size());
    for (int i = 0; i < (int)e.size(); ++i) r.e[g[i]] = e[i];
    return r;
  }
};

struct MonoHash {
  size_t operator()(const Mono &m) const {
    size_t h = 1469598103934665603ull;
    for (uint8_t b : m.e) {
      h ^= b;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Compositions of d into n parts, lexicographically ascending on the
// exponent vector.  rank/unrank use the same order.
struct CompIndex {
  int n, d;
  std::vector<std::vector<Int>> binom;  // binom[m][k] for the recursion
  bool fits_u64 = false;
  std::vector<std::vector<uint64_t>> binom_u64;

  CompIndex(int n, int d);
  Int count() const;  // C(d+n-1, n-1)
  // number of compositions of m into k parts
  Int comps(int m, int k) const;
  Int rank(const uint8_t *e) const;
  // fast path; requires fits_u64
  uint64_t rank_u64(const uint8_t *e) const;
  void unrank(Int r, uint8_t *e) const;
  // iterate all compositions in rank order; cb gets the exponent array
  void for_each(const std::function<void(const uint8_t *)> &cb) const;
};

}  // namespace nfc
