#include "nfc/bounds.hpp"

#include <algorithm>
#include <sstream>

namespace nfc {

ConstExpr ConstExpr::from_rat(const Rat &r) {
  if (r <= 0) throw std::domain_error("constants must be positive");
  ConstExpr c;
  for (auto &[p, e] : factorize(r.get_num()))
    c.prime_exp[p.get_si()] += Rat((long)e);
  for (auto &[p, e] : factorize(r.get_den()))
    c.prime_exp[p.get_si()] -= Rat((long)e);
  return c;
}

ConstExpr ConstExpr::integer_power(const Int &base, const Rat &e) {
  if (base <= 0) throw std::domain_error("integer base must be positive");
  ConstExpr c;
  for (auto &[p, k] : factorize(base)) c.prime_exp[p.get_si()] += Rat((long)k) * e;
  return c;
}

ConstExpr ConstExpr::two_pi_power(const Rat &e) {
  ConstExpr c;
  c.pi_exp = e;
  c.prime_exp[2] = e;
  return c;
}

ConstExpr ConstExpr::factorial_power(long n, const Rat &e) {
  ConstExpr c;
  for (long k = 2; k <= n; ++k)
    for (auto &[p, m] : factorize(Int(k))) c.prime_exp[p.get_si()] += Rat((long)m) * e;
  return c;
}

ConstExpr ConstExpr::with_log(const Interval &lg) {
  ConstExpr c;
  c.extra_log_lo = lg.lo;
  c.extra_log_hi = lg.hi;
  return c;
}

ConstExpr ConstExpr::operator*(const ConstExpr &o) const {
  if (unspecified || o.unspecified) return unknown();
  ConstExpr c = *this;
  c.pi_exp += o.pi_exp;
  for (auto &[p, e] : o.prime_exp) {
    c.prime_exp[p] += e;
    if (c.prime_exp[p] == 0) c.prime_exp.erase(p);
  }
  c.extra_log_lo += o.extra_log_lo;
  c.extra_log_hi += o.extra_log_hi;
  return c;
}

ConstExpr ConstExpr::pow(const Rat &e) const {
  if (unspecified) return unknown();
  ConstExpr c = *this;
  c.pi_exp *= e;
  for (auto &[p, v] : c.prime_exp) v *= e;
  // interval scaling needs sign care
  Rat lo = extra_log_lo * e, hi = extra_log_hi * e;
  c.extra_log_lo = std::min(lo, hi);
  c.extra_log_hi = std::max(lo, hi);
  return c;
}

bool ConstExpr::operator==(const ConstExpr &o) const {
  return unspecified == o.unspecified && pi_exp == o.pi_exp &&
         prime_exp == o.prime_exp && extra_log_lo == o.extra_log_lo &&
         extra_log_hi == o.extra_log_hi;
}

Interval ConstExpr::log_enclosure(const Rat &width) const {
  if (unspecified) throw std::domain_error("log of an unspecified constant");
  Interval s(Rat(0));
  if (pi_exp != 0) s += Interval(pi_exp) * ilog(ipi(width), width);
  for (auto &[p, e] : prime_exp)
    if (e != 0) s += Interval(e) * ilog(Interval(Rat(p)), width);
  s += Interval(extra_log_lo, extra_log_hi);
  return s;
}

std::string ConstExpr::str() const {
  if (unspecified) return "unspecified";
  std::ostringstream os;
  bool first = true;
  if (pi_exp != 0) {
    os << "pi^(" << pi_exp.get_str() << ")";
    first = false;
  }
  for (auto &[p, e] : prime_exp) {
    if (e == 0) continue;
    if (!first) os << " * ";
    os << p << "^(" << e.get_str() << ")";
    first = false;
  }
  if (extra_log_lo != 0 || extra_log_hi != 0) {
    if (!first) os << " * ";
    os << "exp([" << extra_log_lo.get_d() << "," << extra_log_hi.get_d() << "])";
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

Interval BoundExpr::log_value(const Rat &X, const Rat &D) const {
  Rat w = default_width();
  Interval lx = ilog(Interval(X), w), ld = ilog(Interval(D), w);
  Interval s = constant.log_enclosure(w);
  s += x.encl * lx;
  s += (-disc.encl) * ld;
  if (log_pow != 0) s += Interval(log_pow) * ilog(lx, w);
  return s;
}

Rat ParamMap::rat(const std::string &k) const {
  if (!has(k)) throw std::invalid_argument("missing parameter: " + k);
  return parse_rat(kv.at(k));
}

long ParamMap::li(const std::string &k) const {
  Rat r = rat(k);
  if (r.get_den() != 1) throw std::invalid_argument("parameter must be an integer: " + k);
  return r.get_num().get_si();
}

Int ParamMap::big(const std::string &k) const {
  if (!has(k)) throw std::invalid_argument("missing parameter: " + k);
  return Int(kv.at(k));
}

std::vector<int> ParamMap::list(const std::string &k) const {
  if (!has(k)) throw std::invalid_argument("missing parameter: " + k);
  std::vector<int> out;
  std::istringstream ls(kv.at(k));
  std::string tok;
  while (std::getline(ls, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

int sn_r2_w(long n) {
  int w = 1;
  while (binomial(w + 2, 2) < 2 * n + 1) ++w;
  return w;
}

Rat sn_r2_deg(long n) {
  long w = sn_r2_w(n);
  return Rat(2 * n * w) - Rat(w * (w - 1) * (w + 4), 6);
}

namespace {

Rat binom2(long n) { return Rat(n * (n - 1) / 2); }

// sum over small invariants of the large-X resolution of the max factors in
// the congruence-restricted bounds
struct SmallInvAdjust {
  Rat x = Rat(0), disc = Rat(0);
  int count = 0;
};
SmallInvAdjust small_inv_terms(const std::vector<int> &degrees, long n, Rat ind,
                               bool strict, int skip_first) {
  SmallInvAdjust adj;
  int seen = 0;
  for (int deg : degrees) {
    ++seen;
    if (seen <= skip_first) continue;
    Rat lhs(deg), rhs = Rat(n) / ind;
    bool small = strict ? lhs < rhs : lhs <= rhs;
    if (!small) continue;
    adj.x += Rat(1) / ind - Rat(deg, n);
    adj.disc += Rat(3, 2) - Rat(n) / ind;
    ++adj.count;
  }
  return adj;
}

Interval log_iv(const Rat &v) { return ilog(Interval(v), default_width()); }

}  // namespace

BoundExpr closed_form_bound(const std::string &kind, const ParamMap &P) {
  BoundExpr B;
  B.kind = kind;

  if (kind == "schmidt" || kind == "schmidt_total") {
    long n = P.li("n"), d = P.li("d");
    if (n < 2) throw HypothesisError("schmidt needs n >= 2");
    ConstExpr C = ConstExpr::two_pi_power(Rat(d * (n - 1))) *
                  ConstExpr::factorial_power(d, Rat(n - 1)) *
                  ConstExpr::integer_power(Int(n), Rat(d * (5 * n - 2), 4) + 1);
    if (kind == "schmidt_total" &&
        (!P.has("variant") || P.kv.at("variant") != "prim")) {
      C = C * ConstExpr::integer_power(Int(n), Rat(n));
      B.notes.push_back("ordered-factorization count bounded by n^n");
    }
    B.constant = C;
    B.x = Exponent::of(Rat(n + 2, 4));
    B.disc = Exponent::of(Rat(3 * n, 4));
    B.validity = "any X >= 1 (vacuous below |Disc k|^n)";
    return B;
  }

  if (kind == "inv_simple" || kind == "inv_multiplicity") {
    long n = P.li("n"), d = P.li("d"), r = P.li("r");
    Rat degI = P.rat("deg_I");
    Int I1 = P.big("I1");
    long box = kind == "inv_simple" ? 1 : 2;
    ConstExpr C = ConstExpr::two_pi_power(Rat(d * n * r)) *
                  ConstExpr::factorial_power(d, Rat(n * r)) *
                  ConstExpr::integer_power(I1, Rat(d));
    Rat basev = Rat(box * d * n) * (degI + binom2(n));
    if (basev.get_den() != 1) throw std::logic_error("non-integral constant base");
    C = C * ConstExpr::integer_power(basev.get_num(), Rat(d) * degI);
    B.constant = C;
    if (kind == "inv_simple") {
      B.x = Exponent::of(degI / n);
    } else {
      B.x = Exponent::of(degI / n - Rat(r, 2));
    }
    B.disc = Exponent::of(Rat(n * r, 2));
    B.validity = "any X >= 1";
    return B;
  }

  if (kind == "inv_full") {
    long n = P.li("n"), d = P.li("d"), r = P.li("r");
    if (n < 3) throw HypothesisError("inv_full needs n >= 3");
    Rat degI = P.rat("deg_I");
    Int I1 = P.big("I1"), G = P.big("G");
    Rat ind = P.rat("ind"), b = P.rat("b");
    auto degrees = P.list("degrees");
    ConstExpr C = ConstExpr::integer_power(Int(2), Rat(-r * (n - 1))) *
                  (ConstExpr::two_pi_power(Rat(1)) * ConstExpr::from_rat(Rat(2)) *
                   ConstExpr::integer_power(Int(8), Rat(G)))
                      .pow(Rat(d * n * r)) *
                  ConstExpr::factorial_power(d, Rat(n * r)) *
                  ConstExpr::integer_power(I1, Rat(d));
    Rat basev = Rat(2 * d * n) * (degI + binom2(n));
    C = C * ConstExpr::integer_power(basev.get_num(), Rat(d) * degI);
    Rat db1 = Rat(d) * b - 1;
    C = C * ConstExpr::from_rat(Rat(2) / ind).pow(db1);
    B.constant = C;
    B.log_pow = db1;
    auto adj = small_inv_terms(degrees, n, ind, false, 0);
    B.x = Exponent::of(degI / n - Rat(3 * r, 2) + 1 / ind + adj.x);
    B.disc = Exponent::of(-(Rat(n * r, 2) + adj.disc));
    B.validity = "X >= e; max factors resolved to their large-X branch";
    if (adj.count)
      B.notes.push_back(std::to_string(adj.count) +
                        " invariants of degree <= n/ind contribute the product term");
    return B;
  }

  if (kind == "inv_power_sum") {
    long n = P.li("n"), r = P.li("r"), m = P.li("m");
    if (n < 4) throw HypothesisError("inv_power_sum needs n >= 4");
    Rat degI = P.rat("deg_I");
    Rat ind = P.rat("ind");
    auto degrees = P.list("degrees");
    auto adj = small_inv_terms(degrees, n, ind, true, (int)(m * r));
    B.constant = ConstExpr::unknown();
    B.epsilon = true;
    B.x = Exponent::of(degI / n - Rat(3 * r, 2) + 1 / ind + adj.x);
    B.disc = Exponent::of(-(Rat(n * r, 2) + adj.disc));
    B.validity = "first m*r invariants are power sums of degree <= m";
    return B;
  }

  if (kind == "simplified_degree") {
    long n = P.li("n"), d = P.li("d"), w = P.li("w");
    Int G = P.big("G");
    if (w < 5) throw HypothesisError("simplified bounds need w >= 5");
    ConstExpr C = ConstExpr::two_pi_power(Rat(d * n)) *
                  ConstExpr::factorial_power(d, Rat(n)) *
                  ConstExpr::integer_power(G, Rat(d * n)) *
                  ConstExpr::integer_power(Int(2 * d) * Int(n) * Int(n) * Int(n),
                                           Rat(d * n * w));
    B.constant = C;
    B.x = Exponent::of(Rat(w) - Rat(1, 2) - Rat(w * (w - 1)) / Rat(2 * n));
    B.disc = Exponent::of(Rat(n, 2));
    B.validity = "stabilizer-set profile with parameter w";
    return B;
  }

  if (kind == "simplified_elemental_a" || kind == "simplified_elemental_b") {
    long n = P.li("n"), d = P.li("d"), w = P.li("w");
    Int G = P.big("G");
    Rat b = P.rat("b");
    if (w < 5) throw HypothesisError("simplified bounds need w >= 5");
    ConstExpr C = (ConstExpr::two_pi_power(Rat(1)) * ConstExpr::from_rat(Rat(2 * d)) *
                   ConstExpr::integer_power(G, Rat(1)) *
                   ConstExpr::integer_power(Int(8), Rat(G)))
                      .pow(Rat(d * n)) *
                  ConstExpr::integer_power(Int(2 * d) * Int(n) * Int(n) * Int(n),
                                           Rat(d * n * w));
    Rat db1 = Rat(d) * b - 1;
    Rat logscale = kind == "simplified_elemental_a" ? Rat(8, (long)n) : Rat(28, 3 * n);
    C = C * ConstExpr::from_rat(logscale).pow(db1);
    B.constant = C;
    B.log_pow = db1;
    Rat drop = kind == "simplified_elemental_a" ? Rat(binom2(w) - 10)
                                                : Rat(binom2(w) - Rat(40, 3));
    B.x = Exponent::of(Rat(w) - Rat(3, 2) - drop / n);
    B.disc = Exponent::of(Rat(-n, 2));
    B.validity = "elemental primitive, A_n not contained";
    return B;
  }

  if (kind == "simplified_power_sum") {
    long n = P.li("n"), w = P.li("w");
    if (w < 5) throw HypothesisError("simplified bounds need w >= 5");
    std::string form = P.has("form") ? P.kv.at("form") : "plain";
    B.constant = ConstExpr::unknown();
    if (form == "eps") {
      Rat ind = P.rat("ind");
      B.epsilon = true;
      B.x = Exponent::of(Rat(w) - Rat(3, 2) - Rat(w * (w - 1)) / Rat(2 * n) + 1 / ind);
      B.disc = Exponent::of(Rat(-n, 2));
    } else if (form == "plain") {
      B.x = Exponent::of(Rat(w) - Rat(3, 2));
      B.disc = Exponent::of(Rat(-n, 2));
    } else if (form == "induction") {
      B.x = Exponent::of(Rat(w) - 1);
      B.disc = Exponent::of(Rat(w) - Rat(1, 2) + Rat(1, 2 * n));
      B.notes.push_back("epsilon fixed at 1/(3n)");
    } else {
      throw std::invalid_argument("simplified_power_sum form must be eps|plain|induction");
    }
    B.validity = "elemental primitive, A_n not contained";
    return B;
  }

  if (kind == "sn_r2") {
    long n = P.li("n"), d = P.li("d");
    int w = sn_r2_w(n);
    Rat degI = sn_r2_deg(n);
    ConstExpr C = (ConstExpr::two_pi_power(Rat(1)) *
                   ConstExpr::integer_power(Int(n), Rat(1)))
                      .pow(Rat(2 * d * n)) *
                  ConstExpr::factorial_power(d, Rat(2 * n));
    Rat basev = Rat(2 * d * n) * (degI + binom2(n));
    C = C * ConstExpr::integer_power(basev.get_num(), Rat(d) * degI);
    B.constant = C;
    B.x = Exponent::of(Rat(2 * w) - Rat((long)w * (w - 1) * (w + 4)) / Rat(6 * n) - 1);
    B.disc = Exponent::of(Rat(n));
    B.notes.push_back("w = " + std::to_string(w) + ", deg I = " + degI.get_str());
    return B;
  }

  if (kind == "sn_large") {
    long n = P.li("n"), d = P.li("d"), r = P.li("r"), w = P.li("w");
    if (r < 3 || binomial(w + r - 1, r - 1) < n * r)
      throw HypothesisError("sn_large needs r >= 3 and C(w+r-1, r-1) >= nr");
    if ((w == 3 && r == 5 && n == 7) || (w == 4 && r == 5 && n == 14))
      throw HypothesisError("(w, r, n) excluded by the interpolation theorem");
    ConstExpr C = (ConstExpr::two_pi_power(Rat(1)) *
                   ConstExpr::integer_power(Int(n), Rat(1)))
                      .pow(Rat(d * n * r)) *
                  ConstExpr::factorial_power(d, Rat(n * r));
    Rat basev = Rat(2 * d * n) * (Rat(n * r * w) + binom2(n));
    C = C * ConstExpr::integer_power(basev.get_num(), Rat(d * n * r * w));
    B.constant = C;
    B.x = Exponent::of(Rat(r * w) - Rat(r, 2));
    B.disc = Exponent::of(Rat(n * r, 2));
    return B;
  }

  if (kind == "sn_general") {
    long n = P.li("n"), d = P.li("d");
    if (n < 2) throw HypothesisError("sn_general needs n >= 2");
    Rat w = default_width();
    Interval logn = log_iv(Rat(n));
    Interval logn2 = logn * logn;
    Interval c = n >= 3 ? Interval(Rat(1487, 1000))
                        : Interval(Rat(1)) / (log_iv(Rat(2)) * log_iv(Rat(2)));
    Rat cpp(1847, 1000), cp(159, 1000);
    Interval clog =
        Interval(cpp) * Interval(Rat(d * n)) * logn2 * log_iv(Rat(2 * d) * Rat(n * n * n));
    B.constant = ConstExpr::with_log(clog);
    B.x = Exponent::approx(c * logn2, (n >= 3 ? "1.487" : "1/(log 2)^2") +
                                          std::string(" (log n)^2"));
    B.disc = Exponent::approx(Interval(cp) * Interval(Rat(n)) * logn,
                              "0.159 n log n");
    (void)w;
    return B;
  }

  if (kind == "bhargava") {
    long n = P.li("n");
    Rat ind = P.rat("ind");
    if (n < 6 || ind < 2) throw HypothesisError("bhargava needs n >= 6, ind >= 2");
    B.constant = ConstExpr::unknown();
    B.epsilon = true;
    if (ind == 2) {
      B.x = Exponent::of(Rat(n, 4));
      B.disc = Exponent::of(Rat(n - 4, 4));
    } else {
      B.x = Exponent::of(Rat(n - 2, 4) + 1 / ind);
      B.disc = Exponent::of(Rat(n) / ind - Rat(n + 2, 4));
    }
    B.notes.push_back("additive term |Disc k|^{(n^2-1)/2} omitted from the expression");
    return B;
  }

  if (kind == "tau_sum") {
    long n = P.li("n"), d = P.li("d");
    Int G = P.big("G");
    Rat ind = P.rat("ind"), b = P.rat("b");
    ConstExpr C = ConstExpr::integer_power(Int(4 * n), Rat(d) * Rat(G));
    Rat db1 = Rat(d) * b - 1;
    C = C * ConstExpr::from_rat(Rat(2) / ind).pow(db1);
    B.constant = C;
    B.log_pow = db1;
    B.x = Exponent::of(1 / ind);
    B.disc = Exponent::of(Rat(0));
    B.validity = "X >= e";
    return B;
  }

  if (kind == "wild") {
    long n = P.li("n"), d = P.li("d");
    Int G = P.big("G");
    B.constant = ConstExpr::integer_power(Int(4), Rat(d * (n - 1)) * Rat(G));
    B.x = Exponent::of(Rat(0));
    B.disc = Exponent::of(Rat(0));
    B.validity = "bound on the wild part of the discriminant";
    return B;
  }

  if (kind == "non_elemental") {
    long n = P.li("n"), m = P.li("m"), r = P.li("r");
    Interval lmr = log_iv(Rat(m * r));
    Interval lmr2 = lmr * lmr;
    Rat c(1487, 1000), cp(159, 1000);
    B.constant = ConstExpr::unknown();
    B.x = Exponent::approx(Interval(Rat(3) * c * Rat(m * r) / Rat(n)) * lmr2,
                           "3 c m r (log mr)^2 / n, c = 1.487");
    B.disc = Exponent::approx(
        Interval(Rat(2) * c * Rat(m * r)) * lmr2 + Interval(cp * Rat(m * r)) * lmr,
        "2 c m r (log mr)^2 + c' m r log mr");
    return B;
  }

  if (kind == "diagonal") {
    long n = P.li("n");
    Interval ln = log_iv(Rat(n));
    Interval l3 = ln * ln * ln;
    Interval sq = iroot(Interval(Rat(n)), 2, default_width());
    B.constant = ConstExpr::unknown();
    B.x = Exponent::approx(l3 / sq, "c (log n)^3 / sqrt(n), c absolute");
    B.disc = Exponent::approx(sq * ln * ln, "c' sqrt(n) (log n)^2, c' absolute");
    B.notes.push_back("exponents carry unspecified absolute constants");
    return B;
  }

  if (kind == "affine") {
    long p = P.li("p"), m = P.li("m");
    B.constant = ConstExpr::unknown();
    B.epsilon = false;
    B.x = Exponent::of(Rat(44) + Rat(40 * m, (long)p));
    Int pm = int_pow(Int(p), m);
    B.disc = Exponent::of(Rat(33) * Rat(pm) + Rat(7, 2) * Rat(pm - 1) / Rat(p - 1));
    return B;
  }

  if (kind == "solvable") {
    long n = P.li("n");
    B.constant = ConstExpr::unknown();
    bool tower = P.has("form") && P.kv.at("form") == "tower";
    B.x = Exponent::of(Rat(14));
    B.disc = Exponent::of(tower ? Rat(29, 2) : Rat(29, 2) + Rat(1, 2 * n));
    return B;
  }

  if (kind == "all_fields") {
    B.constant = ConstExpr::from_rat(Rat(2));
    B.x = Exponent::approx(Interval(Rat(0), Rat(Int(1) << 20)), "9 (log log X)^3");
    B.disc = Exponent::of(Rat(0));
    B.validity = "X >= 10^6; exponent depends on X";
    return B;
  }

  throw std::invalid_argument("unknown bound kind: " + kind);
}

BoundExpr induction_combine(const std::vector<InductionStage> &stages, long d) {
  size_t m = stages.size();
  if (m == 0) throw std::invalid_argument("no stages");
  for (size_t i = 0; i + 1 < m; ++i) {
    if (stages[i].b < stages[i].a + Rat(1, 2))
      throw HypothesisError("stage " + std::to_string(i + 1) +
                            " violates b_i >= a_i + 1/2");
    if (stages[i].a < stages[i + 1].a &&
        stages[i + 1].a < stages[i].a + Rat(1, 2 * stages[i].n) &&
        stages[i].b < stages[i].a + Rat(1, 2) + Rat(1, 2 * stages[i].n))
      throw HypothesisError("stage " + std::to_string(i + 1) +
                            " violates the strengthened hypothesis b_i >= a_i + "
                            "1/2 + 1/(2 n_i)");
  }
  BoundExpr B;
  B.kind = "induction";
  Rat amax = stages[0].a;
  for (auto &s : stages) amax = std::max(amax, s.a);
  // beta = (n_m + n_{m-1} n_m + ... + n_2 ... n_m)/2
  Rat beta(0);
  Int suffix = 1;
  for (size_t i = m; i-- > 1;) {
    suffix *= stages[i].n;
    beta += Rat(suffix) / 2;
  }
  B.x = Exponent::of(amax);
  B.disc = Exponent::of(stages.back().b + beta);
  ConstExpr C = ConstExpr::integer_power(Int(2), Rat((long)m - 1));
  bool all_specified = true;
  for (size_t i = 0; i + 1 < m; ++i) C = C * ConstExpr::from_rat(stages[i].b);
  Int deg_mult = 1;
  std::vector<Int> dsub(m);
  for (size_t i = m; i-- > 0;) {
    dsub[i] = Int(d) * deg_mult;
    deg_mult *= stages[i].n;
  }
  for (size_t i = 0; i < m; ++i) {
    if (!stages[i].constant.has_value()) {
      all_specified = false;
      continue;
    }
    auto [kind, params] = *stages[i].constant;
    ParamMap pm = params;
    pm.set("d", dsub[i].get_str());
    C = C * closed_form_bound(kind, pm).constant;
  }
  B.constant = all_specified ? C : ConstExpr::unknown();
  if (!all_specified)
    B.notes.push_back("some stage constants unspecified; constant omitted");
  B.notes.push_back("beta = " + beta.get_str());
  return B;
}

BoundExpr transfer_bound(const BoundExpr &target, const Rat &swap, long n1,
                         long n2, const Int &group_order, long d) {
  if (swap <= 0) throw HypothesisError("transfer needs swap > 0");
  if (!target.x.exact.has_value())
    throw std::invalid_argument("transfer requires an exact target X exponent");
  Rat a = *target.x.exact;
  BoundExpr B;
  B.kind = "transfer(" + target.kind + ")";
  B.epsilon = target.epsilon;
  B.log_pow = target.log_pow;
  B.x = Exponent::of(a * swap);
  Rat bt = target.disc.exact.value_or(Rat(0));
  if (!target.disc.exact.has_value())
    throw std::invalid_argument("transfer requires an exact target disc exponent");
  B.disc = Exponent::of(bt - a * (Rat(n2) - swap * Rat(n1)));
  ConstExpr C = target.constant;
  if (!C.unspecified) {
    C = C * ConstExpr::from_rat(Rat(n1, n2));
    C = C * ConstExpr::integer_power(Int(8), Rat(d * (n2 - 1)) * Rat(group_order) * a);
  }
  B.constant = C;
  if (target.log_pow != 0)
    B.notes.push_back("(log Y)^c factor retained with Y substituted");
  B.notes.push_back("Y = 8^{d(n2-1)|G|} X^{swap} |Disc k|^{n2 - swap n1}");
  return B;
}

Exponent rk_tilde(const std::string &tag, const ParamMap &P) {
  if (tag == "alternating-natural") {
    long n = P.li("n");
    Interval l = log_iv(Rat(n));
    return Exponent::approx(l * l, "(log n)^2");
  }
  if (tag == "classical") return Exponent::of(P.rat("m"));
  if (tag == "exceptional" || tag == "sporadic" || tag == "solvable")
    return Exponent::of(Rat(1));
  if (tag == "affine-nonsolvable")
    return Exponent::of(Rat(1) + P.rat("m") / P.rat("p"));
  if (tag == "other") {
    long n = P.li("n");
    Interval l = log_iv(Rat(n));
    Interval s = iroot(Interval(Rat(n)), 2, default_width());
    return Exponent::approx(l * l * l / s, "(log n)^3 / sqrt(n)");
  }
  throw std::invalid_argument("unknown rk~ class tag: " + tag);
}

AllFieldsCheck all_fields_check(const Int &X) {
  if (X < 1000000) throw HypothesisError("all-fields check needs X >= 10^6");
  Rat w = default_width();
  Interval logX = ilog(Interval(Rat(X)), w);
  long nmax = (long)logX.hi.get_d() + 1;
  while (Rat(nmax) > logX.hi) --nmax;  // largest n possibly <= log X
  AllFieldsCheck out;
  out.x = X;
  out.n_max = nmax;

  Interval maxlog(Rat(-100000));
  Rat cpp(1847, 1000);
  for (long n = 2; n <= nmax; ++n) {
    Interval logn = ilog(Interval(Rat(n)), w);
    Interval c = n >= 3 ? Interval(Rat(1487, 1000))
                        : Interval(Rat(1)) / (ilog(Interval(Rat(2)), w) *
                                              ilog(Interval(Rat(2)), w));
    Interval t = Interval(cpp) * Interval(Rat(n)) * logn * logn *
                     ilog(Interval(Rat(2) * Rat(n * n * n)), w) +
                 c * logn * logn * logX;
    if (maxlog.hi < t.hi) maxlog = t;
  }
  // sum <= (nmax - 1) * max term
  Interval lhs = maxlog + ilog(Interval(Rat(nmax - 1)), w);
  Interval loglog = ilog(logX, w);
  Interval rhs = ilog(Interval(Rat(2)), w) +
                 Interval(Rat(9)) * loglog * loglog * loglog * logX;
  out.lhs_log = lhs.str(8);
  out.rhs_log = rhs.str(8);
  auto le = lhs.certainly_le(rhs);
  out.holds = le.has_value() && *le;
  return out;
}

}  // namespace nfc
