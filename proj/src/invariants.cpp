#include "nfc/invariants.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace nfc {

namespace {

using u64 = unsigned long;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 p) { return (u64)((u128)a * b % p); }

u64 powmod(u64 b, u64 e, u64 p) {
  u64 r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, b, p);
    b = mulmod(b, b, p);
    e >>= 1;
  }
  return r;
}

std::vector<u64> default_primes() {
  static std::vector<u64> ps = [] {
    std::vector<u64> v;
    Int p = Int(1) << 61;
    for (int i = 0; i < 2; ++i) {
      mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
      v.push_back(p.get_ui());
      p += 1 << 13;
    }
    return v;
  }();
  return ps;
}

u64 mod_of(long v, u64 p) {
  long r = v % (long)p;
  if (r < 0) r += (long)p;
  return (u64)r;
}

std::vector<long> random_point(int n, std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> dist(-10, 10);
  std::vector<long> pt(n);
  for (auto &v : pt) v = dist(rng);
  return pt;
}

// Gradient of a single monomial at a point mod p, accumulated into grad.
// Prefix/suffix products over the support keep this linear in the support.
struct ModEvaluator {
  u64 p;
  std::vector<std::vector<u64>> pow;  // pow[i][k] = point[i]^k mod p

  ModEvaluator(const std::vector<long> &point, int maxdeg, u64 prime) : p(prime) {
    pow.assign(point.size(), {});
    for (size_t i = 0; i < point.size(); ++i) {
      pow[i].resize(maxdeg + 2);
      pow[i][0] = 1 % p;
      u64 b = mod_of(point[i], p);
      for (int k = 1; k <= maxdeg + 1; ++k) pow[i][k] = mulmod(pow[i][k - 1], b, p);
    }
  }

  u64 value(const uint8_t *e, int n) const {
    u64 v = 1 % p;
    for (int i = 0; i < n; ++i)
      if (e[i]) v = mulmod(v, pow[i][e[i]], p);
    return v;
  }

  void add_gradient(const uint8_t *e, int n, u64 *grad) const {
    int support[64], k = 0;
    for (int i = 0; i < n; ++i)
      if (e[i]) support[k++] = i;
    if (k == 0) return;
    u64 pre[65], suf[65];
    pre[0] = 1 % p;
    for (int j = 0; j < k; ++j)
      pre[j + 1] = mulmod(pre[j], pow[support[j]][e[support[j]]], p);
    suf[k] = 1 % p;
    for (int j = k - 1; j >= 0; --j)
      suf[j] = mulmod(suf[j + 1], pow[support[j]][e[support[j]]], p);
    for (int j = 0; j < k; ++j) {
      int i = support[j];
      u64 t = mulmod(pre[j], suf[j + 1], p);
      t = mulmod(t, pow[i][e[i] - 1], p);
      t = mulmod(t, e[i] % p, p);
      grad[i] = (grad[i] + t) % p;
    }
  }
};

long rank_mod(std::vector<std::vector<u64>> &rows, u64 p) {
  size_t m = rows.size();
  if (m == 0) return 0;
  size_t n = rows[0].size();
  long rank = 0;
  size_t col = 0;
  for (size_t r = 0; r < m && col < n; ++col) {
    size_t piv = r;
    while (piv < m && rows[piv][col] == 0) ++piv;
    if (piv == m) continue;
    std::swap(rows[r], rows[piv]);
    u64 inv = powmod(rows[r][col], p - 2, p);
    for (size_t j = col; j < n; ++j) rows[r][j] = mulmod(rows[r][j], inv, p);
    for (size_t i = 0; i < m; ++i) {
      if (i == r || rows[i][col] == 0) continue;
      u64 f = rows[i][col];
      for (size_t j = col; j < n; ++j)
        rows[i][j] = (rows[i][j] + p - mulmod(f, rows[r][j], p)) % p;
    }
    ++r;
    ++rank;
  }
  return rank;
}

u64 det_mod(std::vector<std::vector<u64>> rows, u64 p) {
  size_t n = rows.size();
  u64 det = 1 % p;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && rows[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(rows[piv], rows[c]);
      det = p - det;
    }
    det = mulmod(det, rows[c][c], p);
    u64 inv = powmod(rows[c][c], p - 2, p);
    for (size_t i = c + 1; i < n; ++i) {
      if (rows[i][c] == 0) continue;
      u64 f = mulmod(rows[i][c], inv, p);
      for (size_t j = c; j < n; ++j)
        rows[i][j] = (rows[i][j] + p - mulmod(f, rows[c][j], p)) % p;
    }
  }
  return det % p;
}

// Incremental row space mod p for greedy pivoting.
struct RowSpace {
  u64 p;
  std::vector<std::vector<u64>> rows;  // reduced, with pivot cols
  std::vector<size_t> pivots;

  explicit RowSpace(u64 prime) : p(prime) {}
  long rank() const { return (long)rows.size(); }

  bool add(std::vector<u64> v) {
    for (size_t r = 0; r < rows.size(); ++r) {
      u64 f = v[pivots[r]];
      if (f == 0) continue;
      for (size_t j = 0; j < v.size(); ++j)
        v[j] = (v[j] + p - mulmod(f, rows[r][j], p)) % p;
    }
    size_t piv = v.size();
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) {
        piv = j;
        break;
      }
    if (piv == v.size()) return false;
    u64 inv = powmod(v[piv], p - 2, p);
    for (auto &x : v) x = mulmod(x, inv, p);
    rows.push_back(std::move(v));
    pivots.push_back(piv);
    return true;
  }
};

}  // namespace

std::vector<int> InvariantProfile::degrees() const {
  std::vector<int> d;
  for (auto &f : invariants) d.push_back(f.degree);
  std::sort(d.begin(), d.end());
  return d;
}

long InvariantProfile::deg_sum() const {
  long s = 0;
  for (auto &f : invariants) s += f.degree;
  return s;
}

Int InvariantProfile::i1() const {
  Int s = 1;
  for (auto &f : invariants) s *= f.orbit_size;
  return s;
}

int InvariantProfile::power_sum_prefix(int) const {
  int m = 0;
  for (int j = 1;; ++j) {
    bool found = false;
    for (auto &f : invariants)
      if (f.degree == j && is_power_sum(f)) found = true;
    if (!found) break;
    m = j;
  }
  return m;
}

OrbitSum power_sum(const PermGroup &g, int k) {
  if (!g.transitive()) throw std::invalid_argument("power sums need a transitive group");
  Mono m(g.degree());
  m.e[0] = (uint8_t)k;
  Invariants inv(g);
  return inv.orbit_sum(m);
}

bool is_power_sum(const OrbitSum &f) {
  int nz = 0;
  for (uint8_t v : f.rep.e)
    if (v) ++nz;
  return nz == 1 && f.orbit_size == (long)f.rep.e.size();
}

OrbitSum Invariants::orbit_sum(const Mono &m, long budget) const {
  if ((int)m.e.size() != G_->degree())
    throw std::invalid_argument("monomial variable count != group degree");
  if (m.degree() == 0) throw std::invalid_argument("orbit sum of a constant");
  std::unordered_set<Mono, MonoHash> seen;
  std::vector<Mono> queue{m};
  seen.insert(m);
  Mono best = m;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    if ((long)queue.size() > budget)
      throw ResourceError("monomial orbit exceeds budget");
    for (const Perm &g : G_->generators()) {
      Mono img = queue[qi].apply(g);
      if (seen.insert(img).second) {
        if (img < best) best = img;
        queue.push_back(img);
      }
    }
  }
  OrbitSum f;
  f.rep = best;
  f.orbit_size = (long)queue.size();
  f.degree = m.degree();
  return f;
}

std::vector<uint8_t> Invariants::orbit_monomials(const Mono &rep, long budget) const {
  int n = G_->degree();
  std::unordered_set<Mono, MonoHash> seen;
  std::vector<Mono> queue{rep};
  seen.insert(rep);
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    if ((long)queue.size() > budget)
      throw ResourceError("monomial orbit exceeds budget");
    for (const Perm &g : G_->generators()) {
      Mono img = queue[qi].apply(g);
      if (seen.insert(img).second) queue.push_back(img);
    }
  }
  std::vector<uint8_t> flat;
  flat.reserve(queue.size() * n);
  for (auto &m : queue) flat.insert(flat.end(), m.e.begin(), m.e.end());
  return flat;
}

Int Invariants::evaluate(const OrbitSum &f, const std::vector<Int> &point,
                         std::vector<Int> *grad) const {
  int n = G_->degree();
  if ((int)point.size() != n) throw std::invalid_argument("point length != degree");
  auto flat = orbit_monomials(f.rep);
  long cnt = (long)flat.size() / n;
  // power tables
  std::vector<std::vector<Int>> pw(n);
  for (int i = 0; i < n; ++i) {
    pw[i].resize(f.degree + 1);
    pw[i][0] = 1;
    for (int k = 1; k <= f.degree; ++k) pw[i][k] = pw[i][k - 1] * point[i];
  }
  Int val = 0;
  if (grad) grad->assign(n, Int(0));
  for (long t = 0; t < cnt; ++t) {
    const uint8_t *e = flat.data() + t * n;
    Int v = 1;
    for (int i = 0; i < n; ++i)
      if (e[i]) v *= pw[i][e[i]];
    val += v;
    if (grad) {
      for (int i = 0; i < n; ++i) {
        if (!e[i]) continue;
        Int d = e[i];
        for (int j = 0; j < n; ++j)
          if (e[j]) d *= pw[j][j == i ? e[j] - 1 : e[j]];
        (*grad)[i] += d;
      }
    }
  }
  return val;
}

unsigned long Invariants::evaluate_mod(const OrbitSum &f, const std::vector<long> &point,
                                       unsigned long p,
                                       std::vector<unsigned long> *grad) const {
  {
    Int pz = (long)p;
    if (mpz_probab_prime_p(pz.get_mpz_t(), 40) == 0)
      throw std::invalid_argument("modulus is not prime");
  }
  int n = G_->degree();
  if ((int)point.size() != n) throw std::invalid_argument("point length != degree");
  auto flat = orbit_monomials(f.rep);
  long cnt = (long)flat.size() / n;
  ModEvaluator ev(point, f.degree, p);
  u64 val = 0;
  if (grad) grad->assign(n, 0);
  for (long t = 0; t < cnt; ++t) {
    const uint8_t *e = flat.data() + t * n;
    val = (val + ev.value(e, n)) % p;
    if (grad) ev.add_gradient(e, n, grad->data());
  }
  return val;
}

long Invariants::invariant_dimension(int d, bool cumulative, Int space_budget) const {
  if (cumulative) {
    long s = 0;
    for (int k = 1; k <= d; ++k) s += invariant_dimension(k, false, space_budget);
    return s;
  }
  auto scan = scan_degree(d, {}, {}, space_budget);
  return (long)scan.orbits.size();
}

Invariants::DegreeScan Invariants::scan_degree(
    int d, const std::vector<std::vector<long>> &points,
    const std::vector<unsigned long> &primes, Int space_budget) const {
  int n = G_->degree();
  CompIndex ix(n, d);
  if (ix.count() > space_budget)
    throw ResourceError("degree-" + std::to_string(d) +
                        " monomial space exceeds budget");
  if (!ix.fits_u64) throw ResourceError("monomial space too large to index");
  uint64_t total = (uint64_t)ix.count().get_ui();

  std::vector<ModEvaluator> evs;
  for (auto &pt : points)
    for (u64 p : primes) evs.push_back(ModEvaluator(pt, d, p));

  DegreeScan out;
  std::vector<bool> visited(total, false);
  std::vector<uint8_t> queue;   // flat orbit buffer, reused
  std::vector<uint8_t> tmp(n);

  uint64_t counter = 0;
  ix.for_each([&](const uint8_t *e) {
    uint64_t seed_rank = counter++;
    if (visited[seed_rank]) return;
    visited[seed_rank] = true;
    queue.assign(e, e + n);
    std::vector<std::vector<u64>> grads(evs.size(), std::vector<u64>(n, 0));
    size_t head = 0;
    while (head * n < queue.size()) {
      const uint8_t *cur = queue.data() + head * n;
      for (size_t ci = 0; ci < evs.size(); ++ci)
        evs[ci].add_gradient(cur, n, grads[ci].data());
      for (const Perm &g : G_->generators()) {
        for (int i = 0; i < n; ++i) tmp[g[i]] = cur[i];
        uint64_t r = ix.rank_u64(tmp.data());
        if (!visited[r]) {
          visited[r] = true;
          queue.insert(queue.end(), tmp.begin(), tmp.end());
          cur = queue.data() + head * n;  // reallocation safety
        }
      }
      ++head;
    }
    OrbitSum f;
    f.rep = Mono(std::vector<uint8_t>(e, e + n));
    f.orbit_size = (long)(queue.size() / n);
    f.degree = d;
    out.orbits.push_back(std::move(f));
    out.gradients.push_back(std::move(grads));
  });
  return out;
}

SparsePoly SparsePoly::product(const SparsePoly &a, const SparsePoly &b) {
  SparsePoly r;
  r.nvars = a.nvars;
  std::unordered_map<Mono, long, MonoHash> acc;
  for (auto &[ma, ca] : a.terms)
    for (auto &[mb, cb] : b.terms) {
      Mono m = ma;
      for (int i = 0; i < r.nvars; ++i) m.e[i] += mb.e[i];
      acc[m] += ca * cb;
    }
  for (auto &[m, c] : acc)
    if (c) r.terms.push_back({m, c});
  return r;
}

SparsePoly Invariants::expand(const OrbitSum &f) const {
  SparsePoly r;
  int n = G_->degree();
  r.nvars = n;
  auto flat = orbit_monomials(f.rep);
  for (size_t k = 0; k * n < flat.size(); ++k)
    r.terms.push_back({Mono(std::vector<uint8_t>(flat.begin() + k * n,
                                                 flat.begin() + (k + 1) * n)),
                       1});
  return r;
}

IndependenceVerdict Invariants::jacobian_independent_poly(
    const std::vector<SparsePoly> &polys, int trials,
    std::vector<unsigned long> primes, uint64_t seed) const {
  int n = G_->degree();
  if ((int)polys.size() != n)
    throw std::invalid_argument("need exactly degree-many invariants");
  if (primes.empty()) primes = default_primes();
  int maxdeg = 1;
  for (auto &f : polys) maxdeg = std::max(maxdeg, f.degree());

  IndependenceVerdict v;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    auto pt = random_point(n, rng);
    for (u64 p : primes) {
      ModEvaluator ev(pt, maxdeg, p);
      std::vector<std::vector<u64>> J(n, std::vector<u64>(n, 0));
      for (int i = 0; i < n; ++i) {
        std::vector<u64> g(n, 0);
        for (auto &[m, c] : polys[i].terms) {
          std::fill(g.begin(), g.end(), 0);
          ev.add_gradient(m.e.data(), n, g.data());
          u64 cm = mod_of(c, p);
          for (int j = 0; j < n; ++j)
            J[i][j] = (J[i][j] + mulmod(cm, g[j], p)) % p;
        }
      }
      u64 det = det_mod(J, p);
      if (det != 0) {
        v.independent = true;
        v.witness_prime = p;
        v.witness_point = t;
        return v;
      }
      v.trial_log.push_back("point " + std::to_string(t) + " mod " +
                            std::to_string(p) + ": det = 0");
    }
  }
  v.independent = false;
  return v;
}

IndependenceVerdict Invariants::jacobian_independent(
    const std::vector<OrbitSum> &inv, int trials, std::vector<unsigned long> primes,
    uint64_t seed) const {
  int n = G_->degree();
  if ((int)inv.size() != n)
    throw std::invalid_argument("need exactly degree-many invariants");
  if (primes.empty()) primes = default_primes();

  // materialize orbits once
  std::vector<std::vector<uint8_t>> flats;
  int maxdeg = 1;
  for (auto &f : inv) {
    flats.push_back(orbit_monomials(f.rep));
    maxdeg = std::max(maxdeg, f.degree);
  }

  IndependenceVerdict v;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    auto pt = random_point(n, rng);
    for (u64 p : primes) {
      ModEvaluator ev(pt, maxdeg, p);
      std::vector<std::vector<u64>> J(n, std::vector<u64>(n, 0));
      for (int i = 0; i < n; ++i) {
        long cnt = (long)flats[i].size() / n;
        for (long k = 0; k < cnt; ++k)
          ev.add_gradient(flats[i].data() + k * n, n, J[i].data());
      }
      u64 det = det_mod(J, p);
      if (det != 0) {
        v.independent = true;
        v.witness_prime = p;
        v.witness_point = t;
        return v;
      }
      v.trial_log.push_back("point " + std::to_string(t) + " mod " +
                            std::to_string(p) + ": det = 0");
    }
  }
  v.independent = false;
  return v;
}

Invariants::SigmaResult Invariants::construct_from_sigmas(
    const std::vector<std::vector<int>> &sigmas, SigmaVariant variant,
    uint64_t seed) const {
  int n = G_->degree();
  if (sigmas.empty()) throw std::invalid_argument("no sigma sets given");
  if (!G_->transitive()) throw std::invalid_argument("group must be transitive");
  int s = (int)sigmas.size();

  if (!G_->stabilizer_intersection_trivial(sigmas))
    throw std::invalid_argument("sigma family fails the trivial-intersection hypothesis");

  if (variant != SigmaVariant::none) {
    const auto &last = sigmas.back();
    for (size_t skip = 0; skip < last.size(); ++skip) {
      std::vector<std::vector<int>> fam(sigmas.begin(), sigmas.end() - 1);
      std::vector<int> sub;
      for (size_t i = 0; i < last.size(); ++i)
        if (i != skip) sub.push_back(last[i]);
      if (variant == SigmaVariant::a) {
        if (!sub.empty()) fam.push_back(sub);
      } else {
        for (int x : sub) fam.push_back({x});
      }
      if (!G_->stabilizer_intersection_trivial(fam))
        throw std::invalid_argument(
            "variant hypothesis fails for sigma_s minus point " +
            std::to_string(last[skip] + 1));
    }
  }

  std::vector<int> order;
  std::vector<char> used(n, 0);
  for (auto &sg : sigmas)
    for (int p : sg) {
      order.push_back(p);
      used[p] = 1;
    }
  int t = (int)order.size();
  for (int p = 0; p < n; ++p)
    if (!used[p]) order.push_back(p);

  SigmaResult res;
  res.s = s;
  res.t = t;
  res.w = 1;
  for (int j = 0; j < s; ++j) res.w += (long)(s + 2 - (j + 1)) * sigmas[j].size();
  res.w_prime = res.w - t;
  if (variant == SigmaVariant::a) {
    long k = (long)sigmas.back().size();
    res.e_allowance = k * k - k;
  } else if (variant == SigmaVariant::b) {
    long k = (long)sigmas.back().size();
    long fact = 1;
    for (long i = 2; i <= k; ++i) fact *= i;
    res.e_allowance = k * fact;
  }

  Mono p0(n), p1(n);
  for (int j = 0; j < s; ++j)
    for (int p : sigmas[j]) {
      p0.e[p] = (uint8_t)(s + 2 - (j + 1));
      p1.e[p] = (uint8_t)(s + 1 - (j + 1));
    }

  auto low_mono = [&](int i) {
    Mono m(n);
    for (int k = 0; k < i; ++k) m.e[order[k]] = 1;
    return m;
  };

  std::mt19937_64 rng(seed);
  auto primes = default_primes();

  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<OrbitSum> inv;
    for (int i = 1; i <= t; ++i) inv.push_back(orbit_sum(low_mono(i)));

    long exceptional = 0;
    if (variant == SigmaVariant::none) {
      for (int i = t; i < n; ++i) {
        Mono m = p0;
        m.e[order[i]] += 1;
        inv.push_back(orbit_sum(m));
      }
    } else {
      auto pt = random_point(n, rng);
      u64 p = primes[0];
      int maxdeg = (int)res.w + t + 1;
      ModEvaluator ev(pt, maxdeg, p);
      RowSpace rs(p);
      bool low_ok = true;
      for (auto &f : inv) {
        std::vector<u64> g(n, 0);
        auto flat = orbit_monomials(f.rep);
        for (size_t k = 0; k * n < flat.size(); ++k)
          ev.add_gradient(flat.data() + k * n, n, g.data());
        if (!rs.add(std::move(g))) low_ok = false;
      }
      if (!low_ok) continue;  // bad point, retry
      for (int i = t; i < n; ++i) {
        Mono m1 = p1;
        m1.e[order[i]] += 1;
        OrbitSum f1 = orbit_sum(m1);
        std::vector<u64> g(n, 0);
        auto flat = orbit_monomials(f1.rep);
        for (size_t k = 0; k * n < flat.size(); ++k)
          ev.add_gradient(flat.data() + k * n, n, g.data());
        if (rs.add(std::move(g))) {
          inv.push_back(f1);
          continue;
        }
        ++exceptional;
        Mono m0 = p0;
        m0.e[order[i]] += 1;
        OrbitSum f0 = orbit_sum(m0);
        std::vector<u64> g0(n, 0);
        auto flat0 = orbit_monomials(f0.rep);
        for (size_t k = 0; k * n < flat0.size(); ++k)
          ev.add_gradient(flat0.data() + k * n, n, g0.data());
        if (!rs.add(std::move(g0))) {
          inv.clear();
          break;  // even the P0 form failed at this point: retry
        }
        inv.push_back(f0);
      }
      if ((int)inv.size() != n) continue;
    }

    auto verdict = jacobian_independent(inv, 3, primes, seed + attempt + 1);
    if (verdict.independent) {
      res.profile.invariants = inv;
      res.exceptional = exceptional;
      res.verified_independent = true;
      return res;
    }
  }
  throw ProbabilisticFailure(
      "sigma construction failed to certify independence after retries");
}

InvariantProfile Invariants::power_sum_upgrade(const InvariantProfile &profile,
                                               int m, uint64_t seed) const {
  int n = G_->degree();
  InvariantProfile cur = profile;
  auto primes = default_primes();
  for (int j = 1; j <= m; ++j) {
    bool present = false;
    for (auto &f : cur.invariants)
      if (f.degree == j && is_power_sum(f)) present = true;
    if (present) continue;
    OrbitSum pj = power_sum(*G_, j);
    // candidates: non power sums with degree >= j (equal first, keeps the
    // multiset from improving silently; larger degrees would improve it)
    std::vector<size_t> cand;
    for (size_t i = 0; i < cur.invariants.size(); ++i)
      if (!is_power_sum(cur.invariants[i]) && cur.invariants[i].degree >= j)
        cand.push_back(i);
    std::stable_sort(cand.begin(), cand.end(), [&](size_t a, size_t b) {
      return cur.invariants[a].degree < cur.invariants[b].degree;
    });
    bool replaced = false;
    for (size_t i : cand) {
      auto trial = cur.invariants;
      trial[i] = pj;
      auto verdict = jacobian_independent(trial, 2, primes, seed + j);
      if (verdict.independent) {
        cur.invariants = trial;
        replaced = true;
        break;
      }
    }
    if (!replaced)
      throw ProbabilisticFailure("no replaceable member found for power sum of degree " +
                                 std::to_string(j));
  }
  return cur;
}

Invariants::ProfileResult Invariants::minimal_degree_profile(
    int max_degree, uint64_t seed, Int space_budget, long expansion_threshold) const {
  int n = G_->degree();
  auto primes = default_primes();
  std::mt19937_64 rng(seed);

  MinimalityCertificate cert;
  for (int attempt = 0; attempt < 3; ++attempt) {
    cert = MinimalityCertificate{};
    cert.attempts = attempt + 1;
    auto pt = random_point(n, rng);
    std::vector<std::vector<long>> pts{pt};

    RowSpace rs(primes[0]);
    std::vector<OrbitSum> chosen;
    std::vector<long> dims;
    int top_degree = 0;
    for (int d = 1; d <= max_degree && (long)chosen.size() < n; ++d) {
      auto scan = scan_degree(d, pts, {primes[0]}, space_budget);
      dims.push_back((long)scan.orbits.size());
      for (size_t i = 0; i < scan.orbits.size() && (long)chosen.size() < n; ++i) {
        if (rs.add(std::move(scan.gradients[i][0]))) {
          chosen.push_back(scan.orbits[i]);
          top_degree = d;
        }
      }
    }
    if ((long)chosen.size() < n) {
      throw ProbabilisticFailure(
          "fewer than degree-many independent invariants up to max_degree " +
          std::to_string(max_degree) + " (found " + std::to_string(chosen.size()) +
          "); raise max_degree");
    }

    auto verdict = jacobian_independent(chosen, 2, primes, seed + 17 * attempt + 1);
    if (!verdict.independent) continue;  // bad point; retry

    // Certificate: for each d < top_degree, products of the chosen
    // invariants of degree <= d must span the whole degree-d invariant
    // space.  Then every invariant of degree <= d lies in the algebra
    // generated by the chosen ones of degree <= d, so no algebraically
    // independent set can have more than #chosen(<=d) members of degree
    // <= d; at d >= top_degree the bound is the trivial n.  Pointwise
    // domination of the sorted degree multiset follows.
    bool all_ok = true;
    // orbit expansions of chosen invariants, cached lazily
    std::unordered_map<int, std::vector<uint8_t>> flat_cache;
    auto flat_of = [&](size_t i) -> const std::vector<uint8_t> & {
      auto it = flat_cache.find((int)i);
      if (it == flat_cache.end())
        it = flat_cache.emplace((int)i, orbit_monomials(chosen[i].rep)).first;
      return it->second;
    };

    for (int d = 1; d < top_degree && all_ok; ++d) {
      long inv_dim = dims[d - 1];
      // multisets of chosen invariants with total degree d
      std::vector<std::vector<size_t>> products;
      std::vector<size_t> cur;
      std::function<void(size_t, int)> gen = [&](size_t from, int rem) {
        if (rem == 0) {
          products.push_back(cur);
          return;
        }
        for (size_t i = from; i < chosen.size(); ++i) {
          if (chosen[i].degree > rem) continue;
          cur.push_back(i);
          gen(i, rem - chosen[i].degree);
          cur.pop_back();
        }
      };
      gen(0, d);

      CompIndex ix(n, d);
      bool exact = ix.fits_u64 && ix.count() <= expansion_threshold;
      long got = -1;
      unsigned long used_prime = 0;
      for (u64 p : primes) {
        if (exact) {
          size_t cols = (size_t)ix.count().get_ui();
          std::vector<std::vector<u64>> rows;
          for (auto &prod : products) {
            std::unordered_map<Mono, u64, MonoHash> poly;
            poly[Mono(n)] = 1 % p;
            for (size_t i : prod) {
              const auto &flat = flat_of(i);
              std::unordered_map<Mono, u64, MonoHash> next;
              long cnt = (long)flat.size() / n;
              for (auto &[mo, c] : poly)
                for (long k = 0; k < cnt; ++k) {
                  Mono q = mo;
                  const uint8_t *e = flat.data() + k * n;
                  for (int v = 0; v < n; ++v) q.e[v] += e[v];
                  auto &slot = next[q];
                  slot = (slot + c) % p;
                }
              poly = std::move(next);
            }
            std::vector<u64> row(cols, 0);
            for (auto &[mo, c] : poly) row[ix.rank_u64(mo.e.data())] = c;
            rows.push_back(std::move(row));
          }
          got = rank_mod(rows, p);
        } else {
          // evaluation rank: products evaluated at inv_dim + 8 points; a
          // full-rank outcome still certifies (rank <= dim of the span).
          long npts = inv_dim + 8;
          std::mt19937_64 rng2(seed + 1000 + d);
          std::vector<std::vector<u64>> vals(chosen.size());
          std::vector<std::vector<long>> epts;
          for (long k = 0; k < npts; ++k) epts.push_back(random_point(n, rng2));
          for (size_t i = 0; i < chosen.size(); ++i) {
            vals[i].resize(npts);
            const auto &flat = flat_of(i);
            long cnt = (long)flat.size() / n;
            for (long k = 0; k < npts; ++k) {
              ModEvaluator ev(epts[k], chosen[i].degree, p);
              u64 v = 0;
              for (long q = 0; q < cnt; ++q)
                v = (v + ev.value(flat.data() + q * n, n)) % p;
              vals[i][k] = v;
            }
          }
          std::vector<std::vector<u64>> rows;
          for (auto &prod : products) {
            std::vector<u64> row(npts, 1 % p);
            for (size_t i : prod)
              for (long k = 0; k < npts; ++k) row[k] = mulmod(row[k], vals[i][k], p);
            rows.push_back(std::move(row));
          }
          got = rank_mod(rows, p);
        }
        used_prime = p;
        if (got == inv_dim) break;  // certified at this prime
      }
      cert.lines.push_back({d, inv_dim, got, exact, used_prime});
      if (got != inv_dim) all_ok = false;
    }

    if (all_ok) {
      cert.minimal = true;
      ProfileResult r;
      r.profile.invariants = chosen;
      r.certificate = cert;
      return r;
    }
  }
  cert.minimal = false;
  cert.note =
      "certificate incomplete after retries: greedy selection may be "
      "point-dependent or max_degree too small";
  throw ProbabilisticFailure(cert.note);
}

std::string profile_cache_key(const PermGroup &g, const std::string &group_name,
                              int max_degree, uint64_t seed) {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&](uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(2);  // cache format version
  for (const Perm &p : g.generators())
    for (int v : p.images()) mix((uint64_t)v + 1);
  mix((uint64_t)g.degree());
  mix((uint64_t)max_degree);
  mix(seed);
  std::ostringstream os;
  os << group_name << "_d" << max_degree << "_s" << seed << "_" << std::hex << h;
  return os.str();
}

void profile_cache_store(const std::string &dir, const std::string &key,
                         const Invariants::ProfileResult &r) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  std::ofstream f(dir + "/" + key + ".profile");
  f << "nfc-profile-cache v2\n";
  for (auto &inv : r.profile.invariants) {
    f << "inv deg=" << inv.degree << " size=" << inv.orbit_size << " rep=";
    for (size_t i = 0; i < inv.rep.e.size(); ++i)
      f << (i ? "," : "") << (int)inv.rep.e[i];
    f << "\n";
  }
  for (auto &l : r.certificate.lines)
    f << "cert d=" << l.d << " dim=" << l.inv_dim << " subalg=" << l.subalg_dim
      << " exact=" << (l.exact_expansion ? 1 : 0) << " prime=" << l.prime << "\n";
  f << "minimal " << (r.certificate.minimal ? 1 : 0) << " attempts "
    << r.certificate.attempts << "\n";
}

std::optional<Invariants::ProfileResult> profile_cache_load(const std::string &dir,
                                                            const std::string &key,
                                                            int nvars) {
  if (dir.empty()) return std::nullopt;
  std::ifstream f(dir + "/" + key + ".profile");
  if (!f) return std::nullopt;
  std::string line;
  if (!std::getline(f, line) || line != "nfc-profile-cache v2") return std::nullopt;
  Invariants::ProfileResult r;
  while (std::getline(f, line)) {
    std::istringstream ls(line);
    std::string w;
    ls >> w;
    if (w == "inv") {
      OrbitSum inv;
      std::string tok;
      while (ls >> tok) {
        if (tok.rfind("deg=", 0) == 0) inv.degree = std::stoi(tok.substr(4));
        if (tok.rfind("size=", 0) == 0) inv.orbit_size = std::stol(tok.substr(5));
        if (tok.rfind("rep=", 0) == 0) {
          std::vector<uint8_t> e;
          std::istringstream rs(tok.substr(4));
          std::string num;
          while (std::getline(rs, num, ',')) e.push_back((uint8_t)std::stoi(num));
          inv.rep = Mono(std::move(e));
        }
      }
      if (inv.rep.vars() != nvars) return std::nullopt;
      r.profile.invariants.push_back(inv);
    } else if (w == "cert") {
      MinimalityCertificate::Line l{};
      std::string tok;
      while (ls >> tok) {
        if (tok.rfind("d=", 0) == 0) l.d = std::stoi(tok.substr(2));
        if (tok.rfind("dim=", 0) == 0) l.inv_dim = std::stol(tok.substr(4));
        if (tok.rfind("subalg=", 0) == 0) l.subalg_dim = std::stol(tok.substr(7));
        if (tok.rfind("exact=", 0) == 0) l.exact_expansion = tok.substr(6) == "1";
        if (tok.rfind("prime=", 0) == 0) l.prime = std::stoul(tok.substr(6));
      }
      r.certificate.lines.push_back(l);
    } else if (w == "minimal") {
      int m = 0;
      ls >> m;
      r.certificate.minimal = m == 1;
      std::string aw;
      ls >> aw >> r.certificate.attempts;
    }
  }
  return r;
}

}  // namespace nfc
