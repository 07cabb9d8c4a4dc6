#include "nfc/optimize.hpp"

#include <sstream>

namespace nfc {

namespace {
RatFunc D_of(long n) {  // d(n-1) - 1
  return RatFunc::var() * RatFunc(Rat(n - 1)) - RatFunc(1);
}
}  // namespace

SkewSide skew_schmidt_side(long n) {
  RatFunc D = D_of(n);
  RatFunc one(1);
  RatFunc factor = one + one / D;
  SkewSide s;
  s.name = "skew-schmidt(n=" + std::to_string(n) + ")";
  s.a = RatFunc(Rat(n + 2, 4)) * factor;
  s.l = RatFunc(Rat(-(n + 2), 2)) * factor;
  s.b = RatFunc(Rat(-3 * n, 4)) - RatFunc(Rat(n + 2, 4)) / D;
  return s;
}

SkewSide invariant_r2_side(long n) {
  Rat degI = sn_r2_deg(n);
  SkewSide s;
  s.name = "invariant-r2(n=" + std::to_string(n) + ", w=" +
           std::to_string(sn_r2_w(n)) + ")";
  s.a = RatFunc(Rat(1));
  s.l = RatFunc::var() * RatFunc(degI - Rat(2 * n));
  s.b = RatFunc(Rat(-n));
  return s;
}

SkewSide skew_bhargava_side(long n, long ind) {
  if (ind < 3) throw std::domain_error("skew side implemented for ind >= 3");
  RatFunc d = RatFunc::var();
  RatFunc D = D_of(n);
  RatFunc E = d * RatFunc(Rat((n - 2) * (n + 3), 4)) / D;
  SkewSide s;
  s.name = "skew-bhargava(n=" + std::to_string(n) + ", ind=" + std::to_string(ind) + ")";
  s.a = E + RatFunc(Rat(-1) + Rat(1, ind) + Rat(1, n - 1));
  s.l = RatFunc(Rat(-2)) * E;
  s.b = RatFunc(Rat(n, 4) - Rat(n, ind) + Rat(1, 2) - Rat(1, n - 1)) -
        RatFunc(Rat(n + 2, 4)) / D + d / D;
  return s;
}

SkewSide mathieu_invariant_side(const std::string &which) {
  SkewSide s;
  s.name = "power-sum-lambda(" + which + ")";
  RatFunc d = RatFunc::var();
  if (which == "M11") {
    // n = 11, deg I = 54, ind = 4: lambda^{43 d} X^{-1/4} |Disc|^{11/2 + 1/2}
    s.a = RatFunc(Rat(-1, 4));
    s.l = d * RatFunc(Rat(43));
    s.b = RatFunc(Rat(6));
  } else if (which == "M12") {
    // n = 12, deg I = 68, ind = 4
    s.a = RatFunc(Rat(-1, 4));
    s.l = d * RatFunc(Rat(56));
    s.b = RatFunc(Rat(13, 2));
  } else {
    throw std::invalid_argument("mathieu side: which must be M11 or M12");
  }
  return s;
}

OptimizeResult optimize_lambda(const SkewSide &s1, const SkewSide &s2, long n) {
  OptimizeResult r;
  RatFunc denom = s2.l - s1.l;
  if (denom.zero()) {
    r.crossing = false;
    r.note = "lambda exponents coincide; no crossing";
    return r;
  }
  r.crossing = true;
  r.lambda_x = (s1.a - s2.a) / denom;
  r.lambda_d = (s1.b - s2.b) / denom;
  r.a_star = s2.a + s2.l * r.lambda_x;
  r.b_star = s2.b + s2.l * r.lambda_d;
  // exact identity: the two sides agree at the optimum
  if (!((s1.a + s1.l * r.lambda_x) == r.a_star) ||
      !((s1.b + s1.l * r.lambda_d) == r.b_star))
    throw std::logic_error("lambda equalization failed the exactness identity");
  r.delta = RatFunc(Rat(n + 2, 4)) - r.a_star;
  r.gamma = RatFunc(Rat(-3 * n, 4)) - r.b_star;
  // monotonicity: bound 1 nonincreasing, bound 2 nondecreasing in lambda
  r.monotone_ok = true;
  for (long dd = 1; dd <= 8; ++dd) {
    if (s1.l.eval(Rat(dd)) > 0 || s2.l.eval(Rat(dd)) < 0) r.monotone_ok = false;
    if (r.lambda_x.eval(Rat(dd)) <= 0) {
      r.note = "optimal lambda is not increasing in X at d=" + std::to_string(dd);
    }
  }
  return r;
}

std::vector<DeltaRow> delta_table(long n_lo, long n_hi, const Rat &d) {
  if (n_lo < 20 || n_hi > 85 || n_lo > n_hi)
    throw std::domain_error("delta table covers 20 <= n <= 85");
  std::vector<DeltaRow> out;
  for (long n = n_lo; n <= n_hi; ++n) {
    auto opt = optimize_lambda(skew_schmidt_side(n), invariant_r2_side(n), n);
    DeltaRow row;
    row.n = n;
    row.w = sn_r2_w(n);
    row.delta = opt.delta;
    row.gamma = opt.gamma;
    row.delta_at_d = opt.delta.eval(d);
    row.gamma_at_d = opt.gamma.eval(d);
    out.push_back(row);
  }
  return out;
}

MathieuOpt mathieu_bound(const std::string &which, const Rat &d) {
  long n = which == "M11" ? 11 : which == "M12" ? 12 : 0;
  if (!n) throw std::invalid_argument("mathieu_bound: which must be M11 or M12");
  MathieuOpt m;
  m.which = which;
  m.opt = optimize_lambda(skew_bhargava_side(n, 4), mathieu_invariant_side(which), n);
  m.x_exponent_at_d = m.opt.a_star.eval(d);
  return m;
}

}  // namespace nfc
