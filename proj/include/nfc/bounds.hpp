#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nfc/interval.hpp"
#include "nfc/rat.hpp"

namespace nfc {

// Explicit constant in product form: pi^a * prod p^{e_p}, with an optional
// extra additive term in the log (for constants of the shape base^{t log n}).
// `unspecified` marks <<-style constants the source never pins down.
struct ConstExpr {
  bool unspecified = false;
  Rat pi_exp = Rat(0);
  std::map<long, Rat> prime_exp;
  Rat extra_log_lo = Rat(0), extra_log_hi = Rat(0);  // certified interval

  static ConstExpr unknown() {
    ConstExpr c;
    c.unspecified = true;
    return c;
  }
  static ConstExpr one() { return ConstExpr{}; }
  static ConstExpr from_rat(const Rat &r);                 // r > 0
  static ConstExpr integer_power(const Int &base, const Rat &e);
  static ConstExpr two_pi_power(const Rat &e);
  static ConstExpr factorial_power(long n, const Rat &e);
  static ConstExpr with_log(const Interval &lg);

  ConstExpr operator*(const ConstExpr &o) const;
  ConstExpr pow(const Rat &e) const;
  bool operator==(const ConstExpr &o) const;

  Interval log_enclosure(const Rat &width = default_width()) const;
  std::string str() const;
};

// Exponent: exact rational when available, otherwise a certified interval
// with a rendered description.
struct Exponent {
  std::optional<Rat> exact;
  Interval encl;
  std::string desc;

  static Exponent of(const Rat &r) {
    Exponent e;
    e.exact = r;
    e.encl = Interval(r);
    e.desc = r.get_str();
    return e;
  }
  static Exponent approx(const Interval &iv, const std::string &d) {
    Exponent e;
    e.encl = iv;
    e.desc = d;
    return e;
  }
  std::string str() const { return desc; }
};

// C * X^{x} * |Disc k|^{-disc} * (log X)^{log_pow}   (+ epsilon on X).
struct BoundExpr {
  std::string kind;
  ConstExpr constant;
  Exponent x;
  Exponent disc;  // exponent b in |Disc k|^{-b}; negative b means growth
  Rat log_pow = Rat(0);
  bool epsilon = false;
  std::string validity;
  std::vector<std::string> notes;

  // log of the bound at given X, |Disc| (epsilon ignored; throws if the
  // constant is unspecified)
  Interval log_value(const Rat &X, const Rat &D) const;
};

// String-keyed parameter bag shared by the CLI and the evaluators.
struct ParamMap {
  std::map<std::string, std::string> kv;

  bool has(const std::string &k) const { return kv.count(k) > 0; }
  Rat rat(const std::string &k) const;
  long li(const std::string &k) const;
  Int big(const std::string &k) const;
  std::vector<int> list(const std::string &k) const;  // "1,2,3"
  void set(const std::string &k, const std::string &v) { kv[k] = v; }
};

// Thrown when a theorem hypothesis fails for the given parameters.
struct HypothesisError : std::domain_error {
  using std::domain_error::domain_error;
};

// kinds: schmidt, schmidt_total, inv_simple, inv_multiplicity, inv_full,
// inv_power_sum, simplified_degree, simplified_elemental_a,
// simplified_elemental_b, simplified_power_sum, sn_r2, sn_large, sn_general,
// bhargava, tau_sum, wild, non_elemental, diagonal, affine, solvable,
// all_fields
BoundExpr closed_form_bound(const std::string &kind, const ParamMap &params);

struct InductionStage {
  Rat a, b;
  long n = 0;
  // optional constant: a closed-form kind evaluated at the stage's degree
  std::optional<std::pair<std::string, ParamMap>> constant;
};
// Exact tower combination; throws HypothesisError naming the failing stage.
BoundExpr induction_combine(const std::vector<InductionStage> &stages, long d);

// Representation transfer: substitute Y = 8^{d(n2-1)|G|} X^{swap}
// |Disc|^{n2 - swap n1} into a bound for the second representation.
BoundExpr transfer_bound(const BoundExpr &target, const Rat &swap, long n1,
                         long n2, const Int &group_order, long d);

// Synthetic rank by primitive class tag.
Exponent rk_tilde(const std::string &tag, const ParamMap &params);

struct AllFieldsCheck {
  Int x;
  long n_max = 0;
  std::string lhs_log, rhs_log;  // rendered intervals
  bool holds = false;
};
// Verifies sum_{2<=n<=log X} of the explicit degree-n bound (over Q) against
// 2 X^{9 (log log X)^3}.
AllFieldsCheck all_fields_check(const Int &X);

// least w with C(w+2, 2) >= 2n+1
int sn_r2_w(long n);
// degree sum of the r=2 independent family: 2nw - w(w-1)(w+4)/6
Rat sn_r2_deg(long n);

}  // namespace nfc
