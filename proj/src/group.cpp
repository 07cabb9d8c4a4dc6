#include "nfc/group.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace nfc {

namespace {

Perm compose(const Perm &a, const Perm &b) { return a * b; }

// first point moved, or -1
int first_moved(const Perm &g) { return g.first_moved(); }

}  // namespace

Int StabChain::order() const {
  Int o = 1;
  for (auto &orb : orbit) o *= (long)orb.size();
  return o;
}

Perm StabChain::sift(const Perm &g, int level) const {
  Perm h = g;
  for (int l = level; l < (int)base.size(); ++l) {
    int p = h[base[l]];
    if (p == base[l]) continue;
    const Perm &u = transversal[l][p];
    if (u.degree() == 0) return h;  // stuck
    h = u.inverse() * h;
  }
  return h;
}

std::vector<Perm> StabChain::level_generators(int k) const {
  std::vector<Perm> out;
  for (int l = k; l < (int)gens.size(); ++l)
    for (const Perm &g : gens[l]) {
      bool dup = false;
      for (const Perm &h : out)
        if (h == g) {
          dup = true;
          break;
        }
      if (!dup) out.push_back(g);
    }
  return out;
}

Perm StabChain::random_element(std::mt19937_64 &rng) const {
  Perm r(degree);
  for (int l = 0; l < (int)base.size(); ++l) {
    const auto &orb = orbit[l];
    int p = orb[rng() % orb.size()];
    if (p != base[l]) r = r * transversal[l][p];
  }
  return r;
}

StabChain StabChain::build(int degree, const std::vector<Perm> &generators,
                           const std::vector<int> &seed_base) {
  StabChain C;
  C.degree = degree;

  auto new_level = [&](int pt) {
    C.base.push_back(pt);
    C.gens.push_back({});
    C.orbit.push_back({pt});
    std::vector<Perm> tv(degree);
    tv[pt] = Perm(degree);
    C.transversal.push_back(std::move(tv));
  };

  for (int p : seed_base) new_level(p);

  std::vector<Perm> start;
  for (const Perm &g : generators) {
    if ((int)g.images().size() != degree)
      throw std::invalid_argument("generator degree mismatch");
    if (!g.is_identity()) start.push_back(g);
  }
  if (start.empty()) return C;

  // ensure at least one level exists so start generators have a home
  auto ensure_level_for = [&](const Perm &g, int l) {
    while (l >= (int)C.base.size()) {
      int pt = -1;
      for (int i = 0; i < degree; ++i) {
        bool in_base = false;
        for (int b : C.base)
          if (b == i) {
            in_base = true;
            break;
          }
        if (!in_base && g[i] != i) {
          pt = i;
          break;
        }
      }
      if (pt < 0) throw std::logic_error("no base point available");
      new_level(pt);
    }
  };

  // The generating set for level l is the union of gens stored at levels
  // >= l (every such generator fixes base[0..l-1]); the sets are nested by
  // construction, which is what the completeness argument needs.
  auto recompute_orbit = [&](int l, const std::vector<Perm> &lgens) {
    std::vector<int> orb{C.base[l]};
    std::vector<Perm> tv(degree);
    tv[C.base[l]] = Perm(degree);
    for (size_t qi = 0; qi < orb.size(); ++qi) {
      int p = orb[qi];
      for (const Perm &s : lgens) {
        int q = s[p];
        if (tv[q].degree() == 0) {
          tv[q] = s * tv[p];
          orb.push_back(q);
        }
      }
    }
    C.orbit[l] = std::move(orb);
    C.transversal[l] = std::move(tv);
  };

  std::set<int> dirty;
  auto adjoin = [&](int from_level, const Perm &h0) {
    // h0 is a non-identity residue fixing base[0..from_level-1]; sift until
    // stuck, store the residue at the stuck level, dirty everything above.
    Perm h = h0;
    int l = from_level;
    for (;; ++l) {
      if (l == (int)C.base.size()) {
        ensure_level_for(h, l);
        break;
      }
      int p = h[C.base[l]];
      if (p == C.base[l]) continue;
      if (C.transversal[l][p].degree() == 0) break;
      h = C.transversal[l][p].inverse() * h;
      if (h.is_identity()) return;
    }
    C.gens[l].push_back(h);
    for (int k = 0; k <= l; ++k) dirty.insert(k);
  };

  for (const Perm &g : start) {
    ensure_level_for(g, 0);
    C.gens[0].push_back(g);
  }
  for (int l = 0; l < (int)C.base.size(); ++l) dirty.insert(l);

  while (!dirty.empty()) {
    int l = *dirty.rbegin();  // deepest first
    dirty.erase(std::prev(dirty.end()));
    std::vector<Perm> lgens = C.level_generators(l);
    recompute_orbit(l, lgens);
    std::vector<int> orb = C.orbit[l];  // copy: adjoin may reallocate C
    for (int p : orb) {
      for (const Perm &s : lgens) {
        Perm sg = C.transversal[l][s[p]].inverse() * (s * C.transversal[l][p]);
        if (!sg.is_identity()) adjoin(l + 1, sg);
      }
    }
  }
  return C;
}

PermGroup::PermGroup(int degree, std::vector<Perm> generators,
                     const std::vector<int> &seed_base)
    : degree_(degree) {
  std::vector<Perm> uniq;
  for (auto &g : generators) {
    if (g.is_identity()) continue;
    bool dup = false;
    for (auto &h : uniq)
      if (h == g) {
        dup = true;
        break;
      }
    if (!dup) uniq.push_back(g);
  }
  gens_ = uniq;
  chain_ = StabChain::build(degree, gens_, seed_base);
  order_ = chain_.order();
}

std::vector<std::vector<int>> PermGroup::orbits() const {
  std::vector<int> owner(degree_, -1);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < degree_; ++i) {
    if (owner[i] >= 0) continue;
    int id = (int)out.size();
    out.push_back({i});
    owner[i] = id;
    auto &orb = out.back();
    for (size_t qi = 0; qi < orb.size(); ++qi)
      for (const Perm &g : gens_) {
        int q = g[orb[qi]];
        if (owner[q] < 0) {
          owner[q] = id;
          orb.push_back(q);
        }
      }
  }
  return out;
}

bool PermGroup::transitive() const {
  return degree_ > 0 && (int)orbits()[0].size() == degree_;
}

bool PermGroup::primitive() const {
  if (!transitive()) throw std::invalid_argument("primitivity requires a transitive group");
  if (degree_ <= 2) return true;
  // minimal block containing {0, beta} for each beta
  for (int beta = 1; beta < degree_; ++beta) {
    std::vector<int> parent(degree_);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::deque<std::pair<int, int>> q;
    parent[find(beta)] = find(0);
    q.push_back({0, beta});
    int classes = degree_ - 1;
    while (!q.empty()) {
      auto [c, d] = q.front();
      q.pop_front();
      for (const Perm &g : gens_) {
        int a = find(g[c]), b = find(g[d]);
        if (a != b) {
          parent[b] = a;
          --classes;
          q.push_back({g[c], g[d]});
        }
      }
    }
    // block size = size of class of 0; nontrivial iff 1 < size < degree
    int root = find(0), size = 0;
    for (int i = 0; i < degree_; ++i)
      if (find(i) == root) ++size;
    if (size < degree_) return false;  // size >= 2 always (contains 0, beta)
  }
  return true;
}

void PermGroup::sweep_elements(const std::function<bool(const Perm &)> &cb) const {
  const auto &C = chain_;
  int L = C.length();
  if (L == 0) {
    cb(Perm(degree_));
    return;
  }
  // partial[l] = product of transversal picks for levels 0..l-1
  std::vector<std::vector<int>> partial(L + 1, std::vector<int>(degree_));
  std::iota(partial[0].begin(), partial[0].end(), 0);
  std::vector<size_t> pos(L, 0);
  bool stop = false;
  std::function<void(int)> rec = [&](int l) {
    if (stop) return;
    if (l == L) {
      Perm p{std::vector<int>(partial[L])};
      if (!cb(p)) stop = true;
      return;
    }
    for (int pt : C.orbit[l]) {
      const Perm &u = C.transversal[l][pt];
      const auto &pre = partial[l];
      auto &nxt = partial[l + 1];
      for (int i = 0; i < degree_; ++i) nxt[i] = pre[u[i]];
      rec(l + 1);
      if (stop) return;
    }
  };
  rec(0);
}

int PermGroup::group_index(Int sweep_budget) const {
  if (order_ <= 1) throw std::domain_error("group_index of the trivial group");
  if (order_ > sweep_budget)
    throw std::runtime_error("group order exceeds element sweep budget");
  const auto &C = chain_;
  int L = C.length();
  int n = degree_;
  int best = n;  // index < n always
  // iterative DFS with reusable buffers and inline cycle counting
  std::vector<std::vector<int>> partial(L + 1, std::vector<int>(n));
  std::iota(partial[0].begin(), partial[0].end(), 0);
  std::vector<char> seen(n);
  std::function<void(int)> rec = [&](int l) {
    if (l == L) {
      const auto &img = partial[L];
      std::fill(seen.begin(), seen.end(), 0);
      int cycles = 0, fixed = 0;
      for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        ++cycles;
        if (img[i] == i) ++fixed;
        for (int j = i; !seen[j]; j = img[j]) seen[j] = 1;
      }
      if (fixed == n) return;  // identity
      best = std::min(best, n - cycles);
      return;
    }
    for (int pt : C.orbit[l]) {
      const Perm &u = C.transversal[l][pt];
      const auto &pre = partial[l];
      auto &nxt = partial[l + 1];
      for (int i = 0; i < n; ++i) nxt[i] = pre[u[i]];
      rec(l + 1);
    }
  };
  rec(0);
  return best;
}

PermGroup PermGroup::point_stabilizer(const std::vector<int> &points) const {
  StabChain C = StabChain::build(degree_, gens_, points);
  auto sub = C.level_generators((int)points.size());
  PermGroup H(degree_, sub);
  // order sanity: |G| = |H| * prod of prefix orbit sizes
  Int t = H.order();
  for (size_t l = 0; l < points.size(); ++l) t *= (long)C.orbit[l].size();
  if (t != order_) throw std::logic_error("stabilizer chain inconsistency");
  return H;
}

Int PermGroup::pointwise_stabilizer_order(const std::vector<int> &points) const {
  StabChain C = StabChain::build(degree_, gens_, points);
  Int o = order_;
  for (size_t l = 0; l < points.size(); ++l) o /= (long)C.orbit[l].size();
  return o;
}

namespace {

// Backtrack search for the setwise stabilizer.  Sound prunes only:
// base-image membership, per-orbit counting, and K-orbit minimality at the
// root with an incrementally grown known subgroup K.
struct SetStabSearch {
  int n;
  std::vector<char> in_set;
  StabChain C;
  std::vector<std::vector<int>> level_orbit_id;  // per level: point -> orbit id
  std::vector<std::vector<int>> level_orbit_count;  // per level: orbit id -> |orbit ∩ set|
  std::vector<Perm> kgens;
  std::unique_ptr<PermGroup> K;
  std::vector<int> kmin;
  long nodes = 0, node_budget;

  void rebuild_k() {
    K = std::make_unique<PermGroup>(n, kgens);
    kmin.assign(n, -1);
    for (int i = 0; i < n; ++i) {
      if (kmin[i] >= 0) continue;
      std::vector<int> orb{i};
      kmin[i] = i;
      for (size_t qi = 0; qi < orb.size(); ++qi)
        for (const Perm &g : kgens) {
          int q = g[orb[qi]];
          if (kmin[q] < 0) {
            kmin[q] = i;
            orb.push_back(q);
          }
        }
    }
  }

  bool counts_ok(int l, const std::vector<int> &img) {
    if (l >= (int)level_orbit_id.size()) return true;
    const auto &oid = level_orbit_id[l];
    const auto &want = level_orbit_count[l];
    std::vector<int> have(want.size(), 0);
    for (int x = 0; x < n; ++x)
      if (in_set[img[x]]) ++have[oid[x]];
    return have == want;
  }

  std::vector<std::vector<int>> partial;

  void rec(int l) {
    if (++nodes > node_budget)
      throw std::runtime_error("set stabilizer search budget exceeded");
    if (l == C.length()) {
      const auto &img = partial[l];
      for (int x = 0; x < n; ++x)
        if (in_set[x] != in_set[img[x]]) return;
      Perm g{std::vector<int>(img)};
      if (g.is_identity() || K->contains(g)) return;
      kgens.push_back(g);
      rebuild_k();
      return;
    }
    int b = C.base[l];
    for (int pt : C.orbit[l]) {
      const auto &pre = partial[l];
      int image_of_b = pre[pt];
      if (in_set[b] != in_set[image_of_b]) continue;
      if (l == 0 && kmin[image_of_b] != image_of_b) continue;
      const Perm &u = C.transversal[l][pt];
      auto &nxt = partial[l + 1];
      for (int i = 0; i < n; ++i) nxt[i] = pre[u[i]];
      if (!counts_ok(l + 1, nxt)) continue;
      rec(l + 1);
    }
  }
};

}  // namespace

PermGroup PermGroup::set_stabilizer(const std::vector<int> &set) const {
  for (int p : set)
    if (p < 0 || p >= degree_) throw std::invalid_argument("set point out of range");
  std::vector<char> flag(degree_, 0);
  for (int p : set) flag[p] = 1;
  int size = 0;
  for (char c : flag) size += c;
  if (size == 0 || size == degree_) return *this;
  if (size == 1) {
    for (int p = 0; p < degree_; ++p)
      if (flag[p]) return point_stabilizer({p});
  }

  SetStabSearch S;
  S.n = degree_;
  S.in_set = flag;
  S.node_budget = 50000000;
  std::vector<int> seed;
  for (int p = 0; p < degree_; ++p)
    if (flag[p]) seed.push_back(p);
  S.C = StabChain::build(degree_, gens_, seed);

  int L = S.C.length();
  S.level_orbit_id.resize(L + 1);
  S.level_orbit_count.resize(L + 1);
  for (int l = 0; l <= L; ++l) {
    auto lg = S.C.level_generators(l);
    auto &oid = S.level_orbit_id[l];
    oid.assign(degree_, -1);
    int next = 0;
    for (int i = 0; i < degree_; ++i) {
      if (oid[i] >= 0) continue;
      int id = next++;
      std::vector<int> orb{i};
      oid[i] = id;
      for (size_t qi = 0; qi < orb.size(); ++qi)
        for (const Perm &g : lg) {
          int q = g[orb[qi]];
          if (oid[q] < 0) {
            oid[q] = id;
            orb.push_back(q);
          }
        }
    }
    auto &cnt = S.level_orbit_count[l];
    cnt.assign(next, 0);
    for (int i = 0; i < degree_; ++i)
      if (flag[i]) ++cnt[oid[i]];
  }

  // seed K with the pointwise stabilizer of the set
  S.kgens = StabChain::build(degree_, gens_, seed).level_generators((int)seed.size());
  S.rebuild_k();

  S.partial.assign(L + 1, std::vector<int>(degree_));
  std::iota(S.partial[0].begin(), S.partial[0].end(), 0);
  S.rec(0);
  return PermGroup(degree_, S.kgens);
}

bool PermGroup::stabilizer_intersection_trivial(
    const std::vector<std::vector<int>> &sets) const {
  std::vector<char> seen(degree_, 0);
  for (auto &s : sets)
    for (int p : s) {
      if (p < 0 || p >= degree_) throw std::invalid_argument("set point out of range");
      if (seen[p]) throw std::invalid_argument("sigma sets overlap");
      seen[p] = 1;
    }
  // singletons first (chain prefix is cheap), then by increasing size
  std::vector<std::vector<int>> order = sets;
  std::stable_sort(order.begin(), order.end(),
                   [](const auto &a, const auto &b) { return a.size() < b.size(); });
  PermGroup H = *this;
  for (auto &s : order) {
    if (H.trivial()) return true;
    if (s.size() == 1)
      H = H.point_stabilizer(s);
    else
      H = H.set_stabilizer(s);
  }
  return H.trivial();
}

std::vector<int> PermGroup::greedy_base() const {
  std::vector<int> b;
  for (int l = 0; l < chain_.length(); ++l)
    if (chain_.orbit[l].size() > 1) b.push_back(chain_.base[l]);
  if (b.empty() && order_ > 1) b.push_back(chain_.base[0]);
  return b;
}

namespace {
// least k with n^k >= o
int log_ceil(const Int &o, int n) {
  Int p = 1;
  int k = 0;
  while (p < o) {
    p *= n;
    ++k;
  }
  return k;
}
}  // namespace

std::vector<int> PermGroup::minimal_base_exact(Int budget) const {
  if (order_ == 1) return {};
  std::vector<int> best = greedy_base();
  Int nodes = 0;
  std::vector<int> prefix;
  std::function<void(const PermGroup &, int)> rec = [&](const PermGroup &H, int from) {
    if (++nodes > budget) throw std::runtime_error("minimal base search budget exceeded");
    if (H.trivial()) {
      if (prefix.size() < best.size()) best = prefix;
      return;
    }
    int lower = log_ceil(H.order(), degree_);
    if ((int)prefix.size() + lower >= (int)best.size()) return;
    for (int p = from; p < degree_; ++p) {
      bool moved = false;
      for (const Perm &g : H.generators())
        if (g[p] != p) {
          moved = true;
          break;
        }
      if (!moved) continue;
      prefix.push_back(p);
      rec(H.point_stabilizer({p}), p + 1);
      prefix.pop_back();
    }
  };
  rec(*this, 0);
  return best;
}

std::pair<PermGroup, bool> PermGroup::coset_action(const PermGroup &sub,
                                                   long index_budget) const {
  auto [images, m] = coset_images(sub, index_budget);
  PermGroup A(m, images);
  bool faithful = (A.order() == order_);
  return {A, faithful};
}

std::pair<std::vector<Perm>, int> PermGroup::coset_images(const PermGroup &sub,
                                                          long index_budget) const {
  if (sub.degree() != degree_) throw std::invalid_argument("subgroup degree mismatch");
  for (const Perm &g : sub.generators())
    if (!contains(g)) throw std::invalid_argument("not a subgroup: generator outside group");

  const StabChain &HC = sub.chain();
  auto canon = [&](Perm x) {
    for (int l = 0; l < HC.length(); ++l) {
      int bestpt = -1, bestimg = degree_;
      for (int p : HC.orbit[l])
        if (x[p] < bestimg) {
          bestimg = x[p];
          bestpt = p;
        }
      if (HC.orbit[l].size() > 1) x = x * HC.transversal[l][bestpt];
    }
    return x;
  };

  std::unordered_map<Perm, int, PermHash> index;
  std::vector<Perm> reps;
  Perm id = canon(Perm(degree_));
  index[id] = 0;
  reps.push_back(id);
  for (size_t qi = 0; qi < reps.size(); ++qi) {
    if ((long)reps.size() > index_budget)
      throw std::runtime_error("coset enumeration budget exceeded");
    for (const Perm &g : gens_) {
      Perm c = canon(g * reps[qi]);
      if (!index.count(c)) {
        index[c] = (int)reps.size();
        reps.push_back(c);
      }
    }
  }
  int m = (int)reps.size();
  std::vector<Perm> images;
  for (const Perm &g : gens_) {
    std::vector<int> img(m);
    for (int i = 0; i < m; ++i) img[i] = index.at(canon(g * reps[i]));
    images.push_back(Perm(std::move(img)));
  }
  return {images, m};
}

namespace {
struct PackedPerm {
  std::array<uint8_t, 32> v{};
  bool operator==(const PackedPerm &o) const { return v == o.v; }
};
struct PackedHash {
  size_t operator()(const PackedPerm &p) const {
    size_t h = 1469598103934665603ull;
    for (uint8_t b : p.v) {
      h ^= b;
      h *= 1099511628211ull;
    }
    return h;
  }
};
PackedPerm pack(const Perm &g) {
  PackedPerm p;
  for (int i = 0; i < g.degree(); ++i) p.v[i] = (uint8_t)g[i];
  return p;
}
}  // namespace

ConjClasses PermGroup::conjugacy_classes(Int budget, uint64_t seed) const {
  if (degree_ > 32)
    throw std::runtime_error("conjugacy classes supported up to degree 32");
  if (order_ > budget)
    throw std::runtime_error("group order exceeds conjugacy class budget");

  std::unordered_map<PackedPerm, int, PackedHash> cls;
  ConjClasses out;
  std::vector<Perm> inv_gens;
  for (auto &g : gens_) inv_gens.push_back(g.inverse());

  auto add_class = [&](const Perm &g0) {
    int id = (int)out.reps.size();
    out.reps.push_back(g0);
    std::vector<Perm> orb{g0};
    cls[pack(g0)] = id;
    for (size_t qi = 0; qi < orb.size(); ++qi) {
      for (size_t k = 0; k < gens_.size(); ++k) {
        Perm c = gens_[k] * orb[qi] * inv_gens[k];
        auto key = pack(c);
        if (!cls.count(key)) {
          cls[key] = id;
          orb.push_back(c);
        }
      }
    }
    out.sizes.push_back((long)orb.size());
  };

  add_class(Perm(degree_));
  Int classified = 1;
  std::mt19937_64 rng(seed);
  long misses = 0;
  while (classified < order_) {
    Perm g = chain_.random_element(rng);
    if (cls.count(pack(g))) {
      if (++misses > 50000) {
        // deterministic fallback: sweep for an unclassified element
        Perm found;
        sweep_elements([&](const Perm &h) {
          if (!cls.count(pack(h))) {
            found = h;
            return false;
          }
          return true;
        });
        if (found.degree() == 0) break;
        add_class(found);
        classified += out.sizes.back();
        misses = 0;
      }
      continue;
    }
    add_class(g);
    classified += out.sizes.back();
    misses = 0;
  }
  return out;
}

namespace {
int element_order(const Perm &g) {
  int n = g.degree();
  std::vector<char> seen(n, 0);
  long ord = 1;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    do {
      seen[j] = 1;
      j = g[j];
      ++len;
    } while (j != i);
    ord = std::lcm(ord, (long)len);
  }
  return (int)ord;
}
}  // namespace

CyclicClassProfile PermGroup::cyclic_class_profile(Int budget, uint64_t seed) const {
  if (order_ <= 1) throw std::domain_error("cyclic class profile of the trivial group");
  ConjClasses cc = conjugacy_classes(budget, seed);

  // class id of an arbitrary element, via conjugation-orbit recomputation:
  // rebuild the element -> class map (cheap relative to the class BFS).
  std::unordered_map<PackedPerm, int, PackedHash> cls;
  std::vector<Perm> inv_gens;
  for (auto &g : gens_) inv_gens.push_back(g.inverse());
  for (size_t id = 0; id < cc.reps.size(); ++id) {
    std::vector<Perm> orb{cc.reps[id]};
    cls[pack(cc.reps[id])] = (int)id;
    for (size_t qi = 0; qi < orb.size(); ++qi)
      for (size_t k = 0; k < gens_.size(); ++k) {
        Perm c = gens_[k] * orb[qi] * inv_gens[k];
        auto key = pack(c);
        if (!cls.count(key)) {
          cls[key] = (int)id;
          orb.push_back(c);
        }
      }
  }

  // merge element classes generating conjugate cyclic subgroups
  int m = (int)cc.reps.size();
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int id = 1; id < m; ++id) {
    const Perm &g = cc.reps[id];
    int ord = element_order(g);
    Perm p = g;
    for (int j = 2; j < ord; ++j) {
      p = p * g;
      if (std::gcd(j, ord) == 1) {
        int other = cls.at(pack(p));
        int a = find(id), b = find(other);
        if (a != b) parent[b] = a;
      }
    }
  }

  CyclicClassProfile out;
  std::set<int> roots;
  for (int id = 1; id < m; ++id) roots.insert(find(id));
  for (int r : roots) {
    if (r == 0) continue;
    const Perm &g = cc.reps[r];
    int v = g.degree() - g.num_cycles();
    out.table[v] += 1;
  }
  out.ind = out.table.begin()->first;
  out.b_at_ind = out.table.begin()->second;
  return out;
}

PairedAction::PairedAction(int deg1, std::vector<Perm> gens1, int deg2,
                           std::vector<Perm> gens2)
    : deg1_(deg1), deg2_(deg2) {
  if (gens1.size() != gens2.size())
    throw std::invalid_argument("paired action: generator lists differ in length");
  std::vector<Perm> combined;
  for (size_t i = 0; i < gens1.size(); ++i) {
    if (gens1[i].degree() != deg1 || gens2[i].degree() != deg2)
      throw std::invalid_argument("paired action: generator degree mismatch");
    std::vector<int> img(deg1 + deg2);
    for (int x = 0; x < deg1; ++x) img[x] = gens1[i][x];
    for (int x = 0; x < deg2; ++x) img[deg1 + x] = deg1 + gens2[i][x];
    combined.push_back(Perm(std::move(img)));
  }
  combined_ = PermGroup(deg1 + deg2, combined);
  // pi1 must be faithful on the combined group: the pointwise stabilizer of
  // the first block is then trivial, and pi2 factors through pi1.
  std::vector<int> block1(deg1);
  std::iota(block1.begin(), block1.end(), 0);
  if (combined_.pointwise_stabilizer_order(block1) != 1)
    throw std::invalid_argument(
        "paired action: first action is not faithful on the combined group "
        "(the generator map does not define a homomorphism through pi1)");
}

Rat PairedAction::swap_ratio(Int sweep_budget) const {
  if (combined_.order() > sweep_budget)
    throw std::runtime_error("swap ratio sweep exceeds element budget");
  long bn = 0, bd = 1;  // best = bn/bd
  int n1 = deg1_, n2 = deg2_;
  combined_.sweep_elements([&](const Perm &g) {
    int c1 = 0, c2 = 0;
    {
      std::vector<char> seen(n1 + n2, 0);
      for (int i = 0; i < n1; ++i) {
        if (seen[i]) continue;
        ++c1;
        for (int j = i; !seen[j]; j = g[j]) seen[j] = 1;
      }
      for (int i = n1; i < n1 + n2; ++i) {
        if (seen[i]) continue;
        ++c2;
        for (int j = i; !seen[j]; j = g[j]) seen[j] = 1;
      }
    }
    long d1 = n1 - c1, d2 = n2 - c2;
    if (d1 == 0) return true;  // identity (pi1 faithful)
    if (d2 * bd > bn * d1) {
      bn = d2;
      bd = d1;
    }
    return true;
  });
  return Rat(bn, bd);
}

}  // namespace nfc
