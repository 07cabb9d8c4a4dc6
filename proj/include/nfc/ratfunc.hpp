#pragma once

#include <string>
#include <vector>

#include "nfc/rat.hpp"

namespace nfc {

// Univariate polynomial over Q, coefficient of x^i at index i.
struct Poly {
  std::vector<Rat> c;

  Poly() {}
  Poly(const Rat &k) { if (k != 0) c = {k}; }
  static Poly var() { return from({0, 1}); }
  static Poly from(std::vector<Rat> v) {
    Poly p;
    p.c = std::move(v);
    p.trim();
    return p;
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool zero() const { return c.empty(); }
  int deg() const { return (int)c.size() - 1; }
  Rat lead() const { return c.empty() ? Rat(0) : c.back(); }

  Poly operator+(const Poly &o) const;
  Poly operator-(const Poly &o) const;
  Poly operator*(const Poly &o) const;
  Poly operator*(const Rat &k) const;
  bool operator==(const Poly &o) const { return c == o.c; }

  // division with remainder
  static void divmod(const Poly &a, const Poly &b, Poly &q, Poly &r);
  static Poly gcd(Poly a, Poly b);

  Rat eval(const Rat &x) const;
  std::string str(const std::string &v = "d") const;
};

// Rational function num/den over Q, normalized: gcd 1, den monic-positive.
struct RatFunc {
  Poly num, den;

  RatFunc() : num(), den(Rat(1)) {}
  RatFunc(const Rat &k) : num(k), den(Rat(1)) {}
  RatFunc(long k) : num(Rat(k)), den(Rat(1)) {}
  RatFunc(Poly n, Poly d);
  static RatFunc var() { return RatFunc(Poly::var(), Poly(Rat(1))); }

  bool zero() const { return num.zero(); }
  RatFunc operator+(const RatFunc &o) const;
  RatFunc operator-(const RatFunc &o) const;
  RatFunc operator-() const { return RatFunc(num * Rat(-1), den); }
  RatFunc operator*(const RatFunc &o) const;
  RatFunc operator/(const RatFunc &o) const;
  bool operator==(const RatFunc &o) const { return num == o.num && den == o.den; }

  Rat eval(const Rat &x) const;  // throws on pole
  std::string str(const std::string &v = "d") const;
};

}  // namespace nfc
