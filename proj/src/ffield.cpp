#include "nfc/ffield.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nfc {

namespace {

// polynomial coefficients in base-p digits of the index
std::vector<int> digits(int x, int p, int len) {
  std::vector<int> d(len, 0);
  for (int i = 0; i < len && x; ++i) {
    d[i] = x % p;
    x /= p;
  }
  return d;
}

// multiply two F_p[t] polynomials and reduce mod a monic polynomial `def`
std::vector<int> polymulmod(const std::vector<int> &a, const std::vector<int> &b,
                            const std::vector<int> &def, int p) {
  int e = (int)def.size() - 1;
  std::vector<int> prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  for (int i = (int)prod.size() - 1; i >= e; --i) {
    int c = prod[i];
    if (!c) continue;
    prod[i] = 0;
    for (int j = 0; j < e; ++j)
      prod[i - e + j] = ((prod[i - e + j] - c * def[j]) % p + p * p) % p;
  }
  prod.resize(e);
  return prod;
}

bool poly_irreducible(const std::vector<int> &def, int p) {
  // trial division by all monic polynomials of degree 1..e/2
  int e = (int)def.size() - 1;
  for (int d = 1; 2 * d <= e; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int idx = 0; idx < count; ++idx) {
      std::vector<int> g = digits(idx, p, d + 1);
      g[d] = 1;
      std::vector<int> r = def;
      for (int i = (int)r.size() - 1; i >= d; --i) {
        int c = r[i];
        if (!c) continue;
        for (int j = 0; j <= d; ++j)
          r[i - d + j] = ((r[i - d + j] - c * g[j]) % p + p * p) % p;
        r[i] = 0;
      }
      bool zero = true;
      for (int i = 0; i < d; ++i)
        if (r[i]) zero = false;
      if (zero) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime_power(int q, int *pp, int *ee) {
  if (q < 2) return false;
  int p = 2;
  while (p * p <= q && q % p) ++p;
  if (q % p) p = q;
  int e = 0, x = q;
  while (x % p == 0) {
    x /= p;
    ++e;
  }
  if (x != 1) return false;
  if (pp) *pp = p;
  if (ee) *ee = e;
  return true;
}

FiniteField::FiniteField(int p, int e) : p_(p), e_(e) {
  if (p < 2 || e < 1) throw std::invalid_argument("bad field parameters");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("characteristic is not prime");
  q_ = 1;
  for (int i = 0; i < e; ++i) {
    q_ *= p;
    if (q_ > 256) throw std::invalid_argument("field too large (q > 256)");
  }

  if (e == 1) {
    def_ = {0, 1};  // t
  } else {
    int count = q_;
    bool found = false;
    for (int idx = 0; idx < count && !found; ++idx) {
      std::vector<int> cand = digits(idx, p, e + 1);
      cand[e] = 1;
      if (poly_irreducible(cand, p)) {
        def_ = cand;
        found = true;
      }
    }
    if (!found) throw std::logic_error("no irreducible polynomial found");
  }

  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  frob_.resize(q_);
  inv_.assign(q_, 0);
  for (int a = 0; a < q_; ++a) {
    auto da = digits(a, p, e);
    for (int b = 0; b < q_; ++b) {
      auto db = digits(b, p, e);
      int s = 0, m = 1;
      for (int i = 0; i < e; ++i) {
        s += ((da[i] + db[i]) % p) * m;
        m *= p;
      }
      add_[a * q_ + b] = s;
      auto prod = e == 1 ? std::vector<int>{(da[0] * db[0]) % p}
                         : polymulmod(da, db, def_, p);
      int v = 0;
      m = 1;
      for (int i = 0; i < e; ++i) {
        v += prod[i] * m;
        m *= p;
      }
      mul_[a * q_ + b] = v;
    }
    int s = 0, m = 1;
    for (int i = 0; i < e; ++i) {
      s += ((p - da[i]) % p) * m;
      m *= p;
    }
    neg_[a] = s;
  }
  for (int a = 0; a < q_; ++a) {
    El f = a;
    for (int i = 1; i < p; ++i) f = mul(f, a);
    frob_[a] = f;
    if (a) {
      for (int b = 1; b < q_; ++b)
        if (mul(a, b) == 1) inv_[a] = b;
    }
  }
}

FiniteField::El FiniteField::inv(El a) const {
  if (a == 0) throw std::domain_error("field inverse of zero");
  return inv_[a];
}

FiniteField::El FiniteField::pow(El a, long k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  El r = 1, b = a;
  while (k) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

FiniteField::El FiniteField::from_int(long k) const {
  long r = k % p_;
  if (r < 0) r += p_;
  return (El)r;
}

int FiniteField::mult_order(El a) const {
  if (a == 0) return 0;
  int o = 1;
  El x = a;
  while (x != 1) {
    x = mul(x, a);
    ++o;
  }
  return o;
}

bool FiniteField::is_primitive(El a) const { return mult_order(a) == q_ - 1; }

FiniteField::El FiniteField::primitive_element() const {
  for (int a = 1; a < q_; ++a)
    if (is_primitive(a)) return a;
  throw std::logic_error("no primitive element");
}

std::string FiniteField::el_str(El a) const {
  if (e_ == 1) return std::to_string(a);
  std::ostringstream os;
  os << a << "#";
  return os.str();
}

}  // namespace nfc
