#include "nfc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "nfc/catalog.hpp"

namespace nfc {

Quad Quad::operator/(const Quad &o) const {
  long m = pick(o);
  Rat nrm = o.a * o.a - o.b * o.b * m;
  if (nrm == 0) throw std::domain_error("quad division by zero");
  Quad conj(o.a, -o.b, m);
  Quad prod = *this * conj;
  return Quad(prod.a / nrm, prod.b / nrm, m);
}

int Quad::sign() const {
  int sa = a > 0 ? 1 : a < 0 ? -1 : 0;
  if (b == 0 || M == 0) return sa;
  int sb = b > 0 ? 1 : b < 0 ? -1 : 0;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // a and b have opposite signs: compare a^2 vs b^2 M
  Rat lhs = a * a, rhs = b * b * M;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

Interval Quad::enclosure(const Rat &width) const {
  if (b == 0 || M == 0) return Interval(a);
  Interval root = iroot(Interval(Rat(M)), 2, width);
  return Interval(a) + Interval(b) * root;
}

std::string Quad::str() const {
  std::ostringstream os;
  if (b == 0) {
    os << a.get_str();
  } else {
    os << a.get_str() << (b > 0 ? "+" : "-");
    Rat ab = b > 0 ? b : Rat(-b);
    if (ab != 1) os << ab.get_str() << "*";
    os << "sqrt(" << M << ")";
  }
  return os.str();
}

Quad Lattice::place_q(int v, const std::vector<long> &c) const {
  Quad s(Rat(0), M);
  const auto &G = gram[v];
  for (int i = 0; i < d; ++i) {
    if (!c[i]) continue;
    for (int j = 0; j < d; ++j) {
      if (!c[j]) continue;
      s = s + G[i][j] * Quad(Rat(c[i]) * Rat(c[j]), M);
    }
  }
  return s;
}

Quad Lattice::gauge_sq(const std::vector<long> &c) const {
  Quad best = place_q(0, c);
  for (int v = 1; v < places(); ++v) {
    Quad q = place_q(v, c);
    if (best < q) best = q;
  }
  return best;
}

namespace {

// determinant of a Quad matrix by fraction-free-ish elimination (Quad is a
// field, so plain Gaussian elimination with exact division works)
Quad quad_det(std::vector<std::vector<Quad>> a) {
  int n = (int)a.size();
  Quad det(Rat(1), a.empty() ? 0 : a[0][0].M);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (a[r][c].sign() != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Quad(Rat(0), det.M);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det = det * a[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (a[r][c].sign() == 0) continue;
      Quad f = a[r][c] / a[c][c];
      for (int j = c; j < n; ++j) a[r][j] = a[r][j] - f * a[c][j];
    }
  }
  return det;
}

}  // namespace

Lattice lattice_from_rows(const std::string &name, int r1, int r2, long M,
                          const std::vector<std::vector<Quad>> &rows) {
  Lattice L;
  L.name = name;
  L.d = (int)rows.size();
  L.r1 = r1;
  L.r2 = r2;
  L.M = M;
  if (L.d != r1 + 2 * r2) throw std::invalid_argument("rank must equal r1 + 2 r2");
  for (auto &r : rows)
    if ((int)r.size() != L.d)
      throw std::invalid_argument("embedding rows must be square");

  L.gram.resize(L.places());
  for (int v = 0; v < r1; ++v) {
    auto &G = L.gram[v];
    G.assign(L.d, std::vector<Quad>(L.d, Quad(Rat(0), M)));
    for (int i = 0; i < L.d; ++i)
      for (int j = 0; j < L.d; ++j) G[i][j] = rows[i][v] * rows[j][v];
  }
  for (int v = 0; v < r2; ++v) {
    auto &G = L.gram[r1 + v];
    G.assign(L.d, std::vector<Quad>(L.d, Quad(Rat(0), M)));
    int re = r1 + 2 * v, im = r1 + 2 * v + 1;
    for (int i = 0; i < L.d; ++i)
      for (int j = 0; j < L.d; ++j)
        G[i][j] = rows[i][re] * rows[j][re] + rows[i][im] * rows[j][im];
  }
  std::vector<std::vector<Quad>> m(L.d, std::vector<Quad>(L.d, Quad(Rat(0), M)));
  for (int i = 0; i < L.d; ++i)
    for (int j = 0; j < L.d; ++j) m[i][j] = rows[i][j];
  Quad det = quad_det(m);
  Quad lc = det * det;
  // Minkowski measure: multiply the Lebesgue covolume by 2^{r2}
  L.covol2 = lc * Quad(rat_pow(Rat(2), 2 * r2), M);
  if (L.covol2.sign() <= 0) throw std::invalid_argument("basis is linearly dependent");
  return L;
}

namespace {

// Enumerate all integer vectors c with Qhat(c) <= bound, where Qhat is a
// rational positive-definite lower approximation of sum_v Q_v; candidates
// are then filtered with the exact gauge.  Soundness: gauge^2 <= H^2
// implies sum_v Q_v <= (r1+r2) H^2 and Qhat <= sum_v Q_v.
struct Enumerator {
  const Lattice *L;
  Rat bound;  // on Qhat
  std::vector<std::vector<Rat>> qhat;
  // LDL^T data
  std::vector<std::vector<Rat>> lmat;
  std::vector<Rat> dvec;
  long budget;
  long visited = 0;

  void prepare() {
    int n = L->d;
    Rat width(1, Int(1) << 48);
    qhat.assign(n, std::vector<Rat>(n, Rat(0)));
    Rat err(0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Quad s(Rat(0), L->M);
        for (int v = 0; v < L->places(); ++v) s = s + L->gram[v][i][j];
        Interval e = s.enclosure(width);
        qhat[i][j] = e.mid();
        if (e.width() > err) err = e.width();
      }
    // lower form: subtract n * err on the diagonal
    for (int i = 0; i < n; ++i) qhat[i][i] -= Rat(n) * err;
    // LDL^T
    lmat.assign(n, std::vector<Rat>(n, Rat(0)));
    dvec.assign(n, Rat(0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) {
        Rat s = qhat[i][j];
        for (int k = 0; k < j; ++k) s -= lmat[i][k] * lmat[j][k] * dvec[k];
        if (j < i)
          lmat[i][j] = s / dvec[j];
        else {
          dvec[i] = s;
          if (s <= 0)
            throw std::runtime_error("lattice form not positive definite");
        }
      }
      lmat[i][i] = 1;
    }
  }

  // integer range |t - center| with D (t - center)^2 <= rem
  std::pair<long, long> range(const Rat &center, const Rat &D, const Rat &rem) const {
    if (rem < 0) return {1, 0};
    double capprox = center.get_d();
    double r = std::sqrt(std::max(0.0, Rat(rem / D).get_d())) + 2;
    long lo = (long)std::floor(capprox - r), hi = (long)std::ceil(capprox + r);
    auto fits = [&](long t) { return D * (Rat(t) - center) * (Rat(t) - center) <= rem; };
    while (lo <= hi && !fits(lo)) ++lo;
    while (hi >= lo && !fits(hi)) --hi;
    // the double estimate can undershoot; expand until exactness
    while (lo <= hi && fits(lo - 1)) --lo;
    while (lo <= hi && fits(hi + 1)) ++hi;
    return {lo, hi};
  }

  void run(const std::function<void(const std::vector<long> &)> &cb) {
    int n = L->d;
    std::vector<long> c(n, 0);
    // Q(c) = sum_i dvec[i] (c_i + sum_{j>i} lmat[j][i]... careful with the
    // convention: Q(c) = sum_j D_j (c_j + sum_{i>j} L_{ij} c_i)^2
    std::function<void(int, Rat)> rec = [&](int j, Rat rem) {
      if (j < 0) {
        cb(c);
        return;
      }
      Rat center(0);
      for (int i = j + 1; i < n; ++i) center += lmat[i][j] * Rat(c[i]);
      auto [lo, hi] = range(-center, dvec[j], rem);
      for (long t = lo; t <= hi; ++t) {
        if (++visited > budget) throw std::runtime_error("lattice enumeration budget exceeded");
        c[j] = t;
        Rat term = dvec[j] * (Rat(t) + center) * (Rat(t) + center);
        rec(j - 1, rem - term);
      }
      c[j] = 0;
    };
    rec(n - 1, bound);
  }
};

}  // namespace

MinimaReport successive_minima(const Lattice &L, long budget) {
  if (L.d > 8) throw std::runtime_error("successive minima limited to rank <= 8");
  // initial radius: max gauge^2 of the standard basis vectors
  Quad r2q(Rat(0), L.M);
  for (int i = 0; i < L.d; ++i) {
    std::vector<long> e(L.d, 0);
    e[i] = 1;
    Quad g = L.gauge_sq(e);
    if (r2q < g) r2q = g;
  }
  Rat radius = r2q.enclosure().hi + Rat(1, 1000);

  Enumerator en;
  en.L = &L;
  en.bound = radius * Rat(L.places());
  en.budget = budget;
  en.prepare();

  std::vector<std::pair<Quad, std::vector<long>>> pts;
  en.run([&](const std::vector<long> &c) {
    bool zero = true;
    for (long x : c) zero = zero && x == 0;
    if (zero) return;
    Quad g = L.gauge_sq(c);
    if (Rat(0) < radius && !(Quad(radius, L.M) < g)) pts.push_back({g, c});
  });
  std::stable_sort(pts.begin(), pts.end(),
                   [](const auto &x, const auto &y) { return x.first < y.first; });

  MinimaReport rep;
  rep.exhaustion_radius_sq = radius;
  // greedy independent over Q
  std::vector<std::vector<Rat>> rows;
  auto independent = [&](const std::vector<long> &c) {
    std::vector<Rat> v(c.begin(), c.end());
    for (auto &r : rows) {
      // reduce v by r (r has a leading 1 at its pivot)
      int piv = -1;
      for (size_t k = 0; k < r.size(); ++k)
        if (r[k] != 0) {
          piv = (int)k;
          break;
        }
      if (piv >= 0 && v[piv] != 0) {
        Rat f = v[piv] / r[piv];
        for (size_t k = 0; k < v.size(); ++k) v[k] -= f * r[k];
      }
    }
    for (auto &x : v)
      if (x != 0) {
        rows.push_back(v);
        return true;
      }
    return false;
  };
  for (auto &[g, c] : pts) {
    if ((int)rep.vectors.size() == L.d) break;
    if (independent(c)) {
      rep.lambda_sq.push_back(g);
      rep.vectors.push_back(c);
    }
  }
  if ((int)rep.vectors.size() != L.d)
    throw std::logic_error("minima enumeration failed to span (radius too small?)");
  return rep;
}

long count_points_in_box(const Lattice &L, const Rat &H, long budget) {
  if (H <= 0) throw std::invalid_argument("need H > 0");
  Enumerator en;
  en.L = &L;
  en.bound = H * H * Rat(L.places());
  en.budget = budget;
  en.prepare();
  long count = 0;
  Quad h2(H * H, L.M);
  en.run([&](const std::vector<long> &c) {
    if (!(h2 < L.gauge_sq(c))) ++count;
  });
  return count;
}

MinkowskiCheck minkowski_second_check(const Lattice &L, const MinimaReport &mins) {
  // bounds: 2^d/(2^{r1}(2pi)^{r2} d!) covol <= prod lambda_i <= 2^d/(2^{r1}(2pi)^{r2}) covol
  Quad prod2(Rat(1), L.M);
  for (auto &l2 : mins.lambda_sq) prod2 = prod2 * l2;

  MinkowskiCheck out;
  Rat width(1, Int(1) << 60);
  Interval prod = prod2.enclosure(width);      // (prod lambda)^2
  Interval cov2 = L.covol2.enclosure(width);   // covol^2
  Rat c = rat_pow(Rat(2), L.d) / rat_pow(Rat(2), L.r1);
  Interval twopi = ipi(width) * Interval(Rat(2));
  Interval denom = ipow(twopi, L.r2);
  Interval upper_sq = ipow_rat(Interval(c) / denom, Rat(2), width) * cov2;
  Interval lower_sq =
      ipow_rat(Interval(c / Rat(factorial(L.d))) / denom, Rat(2), width) * cov2;
  auto le = [&](const Interval &x, const Interval &y) {
    auto r = x.certainly_le(y);
    if (!r.has_value())
      throw std::runtime_error("minkowski check inconclusive at this precision");
    return *r;
  };
  out.holds = le(lower_sq, prod) && le(prod, upper_sq);
  out.lower_margin = (prod / lower_sq).str(6);
  out.upper_margin = (upper_sq / prod).str(6);
  return out;
}

namespace {

Quad parse_entry(const std::string &tok, long *M) {
  // grammar: term (('+'|'-') term)*, term := rat | rat '*' sqrt | sqrt
  Quad out(Rat(0), *M);
  size_t i = 0;
  auto term = [&]() {
    int sign = 1;
    while (i < tok.size() && (tok[i] == '+' || tok[i] == '-')) {
      if (tok[i] == '-') sign = -sign;
      ++i;
    }
    Rat coeff(1);
    bool have_coeff = false;
    size_t start = i;
    while (i < tok.size() && (isdigit((unsigned char)tok[i]) || tok[i] == '/')) ++i;
    if (i > start) {
      coeff = parse_rat(tok.substr(start, i - start));
      have_coeff = true;
    }
    if (i < tok.size() && tok[i] == '*') ++i;
    if (tok.compare(i, 5, "sqrt(") == 0) {
      i += 5;
      size_t close = tok.find(')', i);
      long m = std::stol(tok.substr(i, close - i));
      i = close + 1;
      if (*M && m != *M && m != 1 && m != 0)
        throw std::invalid_argument("mixed surds in one catalog entry");
      if (m != 1 && m != 0) *M = m;
      out = out + Quad(Rat(0), Rat(sign) * coeff, m == 1 || m == 0 ? 0 : m);
      if (m == 1) out = out + Quad(Rat(sign) * coeff, 0);
      return;
    }
    if (!have_coeff) throw std::invalid_argument("bad catalog entry: " + tok);
    out = out + Quad(Rat(sign) * coeff, *M);
  };
  while (i < tok.size()) term();
  out.M = *M;
  out.reduce();
  return out;
}

}  // namespace

std::vector<Lattice> parse_field_catalog(const std::string &path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open field catalog: " + path);
  std::vector<Lattice> out;
  std::string line;
  std::string name;
  int degree = 0, r1 = 0, r2 = 0;
  long disc = 0;
  std::vector<std::vector<Quad>> rows;
  long M = 0;
  auto flush = [&]() {
    if (name.empty()) return;
    if ((int)rows.size() != degree)
      throw std::invalid_argument("field " + name + ": row count != degree");
    for (auto &r : rows)
      for (auto &q : r) q.M = M;  // unify the surd base
    Lattice L = lattice_from_rows(name, r1, r2, M, rows);
    // sanity: covol^2 must equal |disc| when one is declared
    if (disc) {
      Quad want(Rat(disc < 0 ? -disc : disc), M);
      if (!(L.covol2 == want))
        throw std::invalid_argument("field " + name + ": covol^2 != |disc| (" +
                                    L.covol2.str() + " vs " + want.str() + ")");
    }
    out.push_back(std::move(L));
    name.clear();
    rows.clear();
    M = 0;
    disc = 0;
  };
  while (std::getline(f, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string w;
    if (!(ls >> w)) continue;
    if (w == "field") {
      flush();
      std::string kw1, kw2, kw3;
      ls >> name >> kw1 >> degree >> kw2 >> r1 >> r2 >> kw3 >> disc;
      if (kw1 != "degree" || kw2 != "signature" || kw3 != "disc")
        throw std::invalid_argument("bad field header: " + line);
    } else if (w == "row") {
      std::vector<Quad> row;
      std::string tok;
      while (ls >> tok) row.push_back(parse_entry(tok, &M));
      rows.push_back(row);
    } else {
      throw std::invalid_argument("unknown field-catalog directive: " + w);
    }
  }
  flush();
  return out;
}

namespace {

Lattice zeta5_lattice() {
  // Q(zeta_5), integral basis 1, z, z^2, z^3; two complex places.
  // Gram entries are cos(2 pi j (a-b) / 5) in Q(sqrt 5).
  long M = 5;
  auto cosv = [&](int j, int k) {
    int r = ((j * k) % 5 + 5) % 5;
    if (r == 0) return Quad(Rat(1), M);
    if (r == 1 || r == 4) return Quad(Rat(-1, 4), Rat(1, 4), M);  // (sqrt5-1)/4
    return Quad(Rat(-1, 4), Rat(-1, 4), M);                       // -(sqrt5+1)/4
  };
  Lattice L;
  L.name = "Q(zeta5)";
  L.d = 4;
  L.r1 = 0;
  L.r2 = 2;
  L.M = M;
  L.gram.resize(2);
  for (int v = 0; v < 2; ++v) {
    int j = v + 1;
    auto &G = L.gram[v];
    G.assign(4, std::vector<Quad>(4, Quad(Rat(0), M)));
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) G[a][b] = cosv(j, a - b);
  }
  L.covol2 = Quad(Rat(125), M);  // |Disc| = 125
  return L;
}

}  // namespace

std::vector<std::string> field_catalog_names() {
  std::vector<std::string> names;
  for (auto &L : parse_field_catalog(data_dir() + "/fields.txt")) names.push_back(L.name);
  names.push_back("Q(zeta5)");
  return names;
}

Lattice field_lattice(const std::string &name) {
  if (name == "Q(zeta5)") return zeta5_lattice();
  for (auto &L : parse_field_catalog(data_dir() + "/fields.txt"))
    if (L.name == name) return L;
  throw std::invalid_argument("unknown field lattice: " + name);
}

int IntPoly::degree() const {
  int d = 0;
  for (auto &[e, c] : terms) {
    if (c == 0) continue;
    d = std::max(d, e[0] + e[1] + e[2] + e[3]);
  }
  return d;
}

Int IntPoly::eval(const std::vector<long> &x) const {
  Int s = 0;
  for (auto &[e, c] : terms) {
    Int t = c;
    for (int i = 0; i < nvars; ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

namespace {

struct PolyParser {
  const std::string &s;
  size_t i = 0;
  int nvars;

  void ws() {
    while (i < s.size() && isspace((unsigned char)s[i])) ++i;
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  IntPoly expr() {
    IntPoly r = term();
    while (true) {
      ws();
      if (eat('+')) {
        IntPoly t = term();
        for (auto &[e, c] : t.terms) r.terms[e] += c;
      } else if (eat('-')) {
        IntPoly t = term();
        for (auto &[e, c] : t.terms) r.terms[e] -= c;
      } else
        break;
    }
    r.nvars = nvars;
    return r;
  }
  IntPoly term() {
    IntPoly r = factor();
    while (true) {
      ws();
      if (eat('*')) {
        IntPoly f = factor();
        IntPoly prod;
        prod.nvars = nvars;
        for (auto &[e1, c1] : r.terms)
          for (auto &[e2, c2] : f.terms) {
            std::array<int, 4> e{};
            for (int k = 0; k < 4; ++k) e[k] = e1[k] + e2[k];
            prod.terms[e] += c1 * c2;
          }
        r = prod;
      } else
        break;
    }
    return r;
  }
  IntPoly factor() {
    IntPoly b = base();
    ws();
    if (eat('^')) {
      ws();
      size_t start = i;
      while (i < s.size() && isdigit((unsigned char)s[i])) ++i;
      int k = std::stoi(s.substr(start, i - start));
      IntPoly r;
      r.nvars = nvars;
      r.terms[{0, 0, 0, 0}] = 1;
      for (int t = 0; t < k; ++t) {
        IntPoly prod;
        prod.nvars = nvars;
        for (auto &[e1, c1] : r.terms)
          for (auto &[e2, c2] : b.terms) {
            std::array<int, 4> e{};
            for (int kk = 0; kk < 4; ++kk) e[kk] = e1[kk] + e2[kk];
            prod.terms[e] += c1 * c2;
          }
        r = prod;
      }
      return r;
    }
    return b;
  }
  IntPoly base() {
    ws();
    IntPoly r;
    r.nvars = nvars;
    if (eat('(')) {
      r = expr();
      if (!eat(')')) throw std::invalid_argument("missing ')' in polynomial");
      return r;
    }
    if (i < s.size() && s[i] == '-') {
      ++i;
      IntPoly b = base();
      for (auto &[e, c] : b.terms) c = -c;
      return b;
    }
    if (i < s.size() && s[i] == 'x') {
      ++i;
      size_t start = i;
      while (i < s.size() && isdigit((unsigned char)s[i])) ++i;
      int v = std::stoi(s.substr(start, i - start));
      if (v < 1 || v > nvars) throw std::invalid_argument("variable out of range");
      std::array<int, 4> e{};
      e[v - 1] = 1;
      r.terms[e] = 1;
      return r;
    }
    size_t start = i;
    while (i < s.size() && isdigit((unsigned char)s[i])) ++i;
    if (i == start) throw std::invalid_argument("bad polynomial syntax near index " +
                                                std::to_string(i));
    r.terms[{0, 0, 0, 0}] = Int(s.substr(start, i - start));
    return r;
  }
};

}  // namespace

IntPoly IntPoly::parse(const std::string &s, int nvars) {
  if (nvars < 1 || nvars > 4) throw std::invalid_argument("1..4 variables supported");
  PolyParser p{s, 0, nvars};
  IntPoly r = p.expr();
  p.ws();
  if (p.i != s.size()) throw std::invalid_argument("trailing characters in polynomial");
  r.nvars = nvars;
  return r;
}

HyperCount hypersurface_avoidance_count(const IntPoly &f,
                                        const std::vector<std::vector<long>> &boxes) {
  if ((int)boxes.size() != f.nvars)
    throw std::invalid_argument("box count must match variable count");
  int deg = f.degree();
  Rat total(1);
  for (auto &b : boxes) {
    if ((long)b.size() < 2L * deg)
      throw std::invalid_argument("box smaller than 2 deg F");
    total *= (long)b.size();
  }
  HyperCount out;
  out.lower_bound = total / rat_pow(Rat(2), f.nvars);
  std::vector<long> x(f.nvars);
  std::function<void(int)> rec = [&](int i) {
    if (i == f.nvars) {
      if (f.eval(x) != 0) out.nonzero += 1;
      return;
    }
    for (long v : boxes[i]) {
      x[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  out.ok = Rat(out.nonzero) >= out.lower_bound;
  return out;
}

}  // namespace nfc
