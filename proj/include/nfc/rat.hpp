#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace nfc {

using Int = mpz_class;

// mpq_class does not canonicalize two-argument constructions; this wrapper
// does, so Rat(22, 4) == Rat(11, 2) holds and GMP's invariants are kept.
class Rat : public mpq_class {
 public:
  Rat() : mpq_class() {}
  template <typename A, typename B>
  Rat(A &&a, B &&b) : mpq_class(std::forward<A>(a), std::forward<B>(b)) {
    canonicalize();
  }
  template <typename A>
  Rat(A &&a) : mpq_class(std::forward<A>(a)) {}
};

inline Rat rat(long num, long den = 1) { return Rat(num, den); }

inline Int int_pow(const Int &b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline Rat rat_pow(const Rat &b, long e) {
  if (e == 0) return Rat(1);
  Rat r;
  unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(r.get_num_mpz_t(), b.get_num().get_mpz_t(), a);
  mpz_pow_ui(r.get_den_mpz_t(), b.get_den().get_mpz_t(), a);
  r.canonicalize();
  if (e < 0) {
    if (r == 0) throw std::domain_error("rat_pow: 0^negative");
    r = 1 / r;
  }
  return r;
}

inline Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline std::string rat_str(const Rat &r) { return r.get_str(); }

// Parses "p/q" or "p"; throws on garbage.
inline Rat parse_rat(const std::string &s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

// Trial-division factorization; fine for the magnitudes this project sees.
std::vector<std::pair<Int, unsigned long>> factorize(Int n);

}  // namespace nfc
