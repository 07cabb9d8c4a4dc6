#include "nfc/ratfunc.hpp"

#include <sstream>

namespace nfc {

Poly Poly::operator+(const Poly &o) const {
  Poly r;
  r.c.resize(std::max(c.size(), o.c.size()), Rat(0));
  for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
  for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
  r.trim();
  return r;
}

Poly Poly::operator-(const Poly &o) const { return *this + o * Rat(-1); }

Poly Poly::operator*(const Poly &o) const {
  if (zero() || o.zero()) return Poly();
  Poly r;
  r.c.assign(c.size() + o.c.size() - 1, Rat(0));
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
  r.trim();
  return r;
}

Poly Poly::operator*(const Rat &k) const {
  Poly r = *this;
  for (auto &x : r.c) x *= k;
  r.trim();
  return r;
}

void Poly::divmod(const Poly &a, const Poly &b, Poly &q, Poly &r) {
  if (b.zero()) throw std::domain_error("poly division by zero");
  q = Poly();
  r = a;
  while (!r.zero() && r.deg() >= b.deg()) {
    int k = r.deg() - b.deg();
    Rat f = r.lead() / b.lead();
    Poly t;
    t.c.assign(k + 1, Rat(0));
    t.c[k] = f;
    q = q + t;
    r = r - t * b;
  }
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.zero()) {
    Poly q, r;
    divmod(a, b, q, r);
    a = b;
    b = r;
  }
  if (!a.zero()) a = a * (Rat(1) / a.lead());
  return a;
}

Rat Poly::eval(const Rat &x) const {
  Rat r = 0;
  for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

std::string Poly::str(const std::string &v) const {
  if (zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = deg(); i >= 0; --i) {
    if (c[i] == 0) continue;
    Rat k = c[i];
    if (!first) os << (k > 0 ? " + " : " - ");
    else if (k < 0) os << "-";
    Rat a = k > 0 ? k : Rat(-k);
    if (a != 1 || i == 0) os << a.get_str();
    if (i > 0) {
      if (a != 1) os << "*";
      os << v;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

RatFunc::RatFunc(Poly n, Poly d) {
  if (d.zero()) throw std::domain_error("ratfunc: zero denominator");
  Poly g = Poly::gcd(n, d);
  if (!g.zero() && g.deg() >= 1) {
    Poly q, r;
    Poly::divmod(n, g, q, r);
    n = q;
    Poly::divmod(d, g, q, r);
    d = q;
  }
  Rat lead = d.lead();
  num = n * (Rat(1) / lead);
  den = d * (Rat(1) / lead);
}

RatFunc RatFunc::operator+(const RatFunc &o) const {
  return RatFunc(num * o.den + o.num * den, den * o.den);
}
RatFunc RatFunc::operator-(const RatFunc &o) const {
  return RatFunc(num * o.den - o.num * den, den * o.den);
}
RatFunc RatFunc::operator*(const RatFunc &o) const {
  return RatFunc(num * o.num, den * o.den);
}
RatFunc RatFunc::operator/(const RatFunc &o) const {
  if (o.zero()) throw std::domain_error("ratfunc division by zero");
  return RatFunc(num * o.den, den * o.num);
}

Rat RatFunc::eval(const Rat &x) const {
  Rat d = den.eval(x);
  if (d == 0) throw std::domain_error("ratfunc: pole at evaluation point");
  return num.eval(x) / d;
}

std::string RatFunc::str(const std::string &v) const {
  if (den.deg() == 0 && den.lead() == 1) return num.str(v);
  return "(" + num.str(v) + ")/(" + den.str(v) + ")";
}

}  // namespace nfc
