#pragma once

#include <string>
#include <vector>

#include "nfc/bounds.hpp"
#include "nfc/ratfunc.hpp"

namespace nfc {

// One side of a skew comparison: X^{a(d)} lambda^{l(d)} |Disc k|^{b(d)},
// exponents rational functions of the base degree d.
struct SkewSide {
  RatFunc a, l, b;
  std::string name;
};

struct OptimizeResult {
  RatFunc lambda_x, lambda_d;  // optimal lambda = X^{lambda_x} |Disc|^{lambda_d}
  RatFunc a_star, b_star;      // exponents of the equalized bound
  RatFunc delta, gamma;        // deficits against the Schmidt baseline
  bool crossing = false;
  bool monotone_ok = false;    // l1 <= 0 <= l2 on sampled d >= 1
  std::string note;
};

// Equalizes the two bounds in lambda exactly over Q(d); delta/gamma are
// relative to X^{(n+2)/4} |Disc|^{-3n/4}.
OptimizeResult optimize_lambda(const SkewSide &s1, const SkewSide &s2, long n);

// Problem assemblies.
SkewSide skew_schmidt_side(long n);            // X >= |Disc|^{2n-1} regime
SkewSide invariant_r2_side(long n);            // the r = 2 multiplicity side
SkewSide skew_bhargava_side(long n, long ind); // ind >= 3, simplified regime
// lambda-form of the power-sum bound assembled for the Mathieu groups:
// which in {M11, M12}
SkewSide mathieu_invariant_side(const std::string &which);

struct DeltaRow {
  long n = 0;
  int w = 0;
  RatFunc delta, gamma;
  Rat delta_at_d, gamma_at_d;
};
// Exact delta/gamma over 20 <= n <= 85; throws std::domain_error outside.
std::vector<DeltaRow> delta_table(long n_lo, long n_hi, const Rat &d);

struct MathieuOpt {
  std::string which;
  OptimizeResult opt;
  Rat x_exponent_at_d;  // evaluated at the requested d
};
MathieuOpt mathieu_bound(const std::string &which, const Rat &d = Rat(1));

}  // namespace nfc
