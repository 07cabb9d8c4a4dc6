#include "nfc/monomial.hpp"

#include <stdexcept>

namespace nfc {

CompIndex::CompIndex(int n_, int d_) : n(n_), d(d_) {
  binom.assign(n + d + 1, std::vector<Int>(n + 1, 0));
  for (int m = 0; m <= n + d; ++m) {
    binom[m][0] = 1;
    for (int k = 1; k <= n && k <= m; ++k)
      binom[m][k] = binom[m - 1][k - 1] + (m - 1 >= k ? binom[m - 1][k] : 0);
  }
  fits_u64 = count() < Int("4611686018427387904");  // 2^62
  if (fits_u64) {
    binom_u64.assign(binom.size(), std::vector<uint64_t>(n + 1, 0));
    for (size_t m = 0; m < binom.size(); ++m)
      for (int k = 0; k <= n; ++k)
        binom_u64[m][k] = binom[m][k].fits_ulong_p() ? binom[m][k].get_ui()
                                                     : ~0ull >> 2;
  }
}

uint64_t CompIndex::rank_u64(const uint8_t *e) const {
  uint64_t r = 0;
  int rem = d;
  for (int i = 0; i < n - 1; ++i) {
    int k = n - 1 - i;
    for (int v = 0; v < e[i]; ++v) r += binom_u64[rem - v + k - 1][k - 1];
    rem -= e[i];
  }
  return r;
}

Int CompIndex::comps(int m, int k) const {
  if (k == 0) return m == 0 ? 1 : 0;
  // C(m+k-1, k-1)
  return binom[m + k - 1][k - 1];
}

Int CompIndex::count() const { return comps(d, n); }

Int CompIndex::rank(const uint8_t *e) const {
  Int r = 0;
  int rem = d;
  for (int i = 0; i < n - 1; ++i) {
    for (int v = 0; v < e[i]; ++v) r += comps(rem - v, n - 1 - i);
    rem -= e[i];
  }
  return r;
}

void CompIndex::unrank(Int r, uint8_t *e) const {
  int rem = d;
  for (int i = 0; i < n - 1; ++i) {
    int v = 0;
    while (true) {
      Int c = comps(rem - v, n - 1 - i);
      if (r < c) break;
      r -= c;
      ++v;
    }
    e[i] = (uint8_t)v;
    rem -= v;
  }
  e[n - 1] = (uint8_t)rem;
}

void CompIndex::for_each(const std::function<void(const uint8_t *)> &cb) const {
  std::vector<uint8_t> e(n, 0);
  e[n - 1] = (uint8_t)d;
  if (n == 1) {
    cb(e.data());
    return;
  }
  while (true) {
    cb(e.data());
    // successor in lex order: rightmost position with mass strictly after it
    int j = -1;
    int suffix = 0;
    for (int i = n - 1; i >= 1; --i) {
      suffix += e[i];
      if (suffix > 0) {
        j = i - 1;
        break;
      }
    }
    if (j < 0) return;
    int mass = 0;
    for (int i = j + 1; i < n; ++i) {
      mass += e[i];
      e[i] = 0;
    }
    e[j] += 1;
    e[n - 1] = (uint8_t)(mass - 1);
  }
}

}  // namespace nfc
