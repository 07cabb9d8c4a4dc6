#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nfc {

// Small finite field F_q, q = p^e <= 256, table-based arithmetic.  The
// defining polynomial for e > 1 is the lexicographically least monic
// irreducible (coefficients read as the base-p integer c_0 + c_1 p + ...).
class FiniteField {
 public:
  using El = int;  // elements are 0..q-1, digit-encoded in base p

  FiniteField(int p, int e);

  int p() const { return p_; }
  int e() const { return e_; }
  int q() const { return q_; }
  const std::vector<int> &defining_poly() const { return def_; }

  El add(El a, El b) const { return add_[a * q_ + b]; }
  El sub(El a, El b) const { return add_[a * q_ + neg_[b]]; }
  El neg(El a) const { return neg_[a]; }
  El mul(El a, El b) const { return mul_[a * q_ + b]; }
  El inv(El a) const;
  El div(El a, El b) const { return mul(a, inv(b)); }
  El pow(El a, long k) const;
  El frobenius(El a) const { return frob_[a]; }  // x -> x^p
  El from_int(long k) const;                     // image of an integer

  bool is_primitive(El a) const;
  El primitive_element() const;

  // multiplicative order; 0 has order 0
  int mult_order(El a) const;

  std::string el_str(El a) const;

 private:
  int p_, e_, q_;
  std::vector<int> def_;
  std::vector<El> add_, mul_, neg_, frob_, inv_;
};

bool is_prime_power(int q, int *p = nullptr, int *e = nullptr);

}  // namespace nfc
