#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "nfc/perm.hpp"
#include "nfc/rat.hpp"

namespace nfc {

// Stabilizer chain with explicit transversals (Schreier-Sims, deterministic).
// Base points are taken from `seed_base` first, then by the first-moved-point
// heuristic, so orders and transversals are reproducible.
struct StabChain {
  int degree = 0;
  std::vector<int> base;
  // per level: generators of the level stabilizer
  std::vector<std::vector<Perm>> gens;
  // per level: orbit of base[l], and transversal[p] with u(base[l]) = p
  std::vector<std::vector<int>> orbit;
  std::vector<std::vector<Perm>> transversal;  // indexed by point; empty degree() == absent

  Int order() const;
  int length() const { return (int)base.size(); }

  // Returns the residue of sifting g from `level` down; identity iff g is in
  // the level stabilizer (for level 0: in the group).
  Perm sift(const Perm &g, int level = 0) const;
  bool contains(const Perm &g) const { return sift(g).is_identity(); }

  // Strong generators of the subgroup fixing base[0..k-1] pointwise.
  std::vector<Perm> level_generators(int k) const;

  Perm random_element(std::mt19937_64 &rng) const;

  static StabChain build(int degree, const std::vector<Perm> &generators,
                         const std::vector<int> &seed_base = {});
};

struct CyclicClassProfile {
  std::map<int, long> table;  // orbit-deficiency v -> #classes of cyclic subgroups
  int ind = 0;                // min key
  long b_at_ind = 0;          // table[ind]
};

struct ConjClasses {
  std::vector<Perm> reps;
  std::vector<Int> sizes;
  // class id lookup is kept internal to the computation
};

class PermGroup {
 public:
  PermGroup() {}
  PermGroup(int degree, std::vector<Perm> generators,
            const std::vector<int> &seed_base = {});

  int degree() const { return degree_; }
  const std::vector<Perm> &generators() const { return gens_; }
  const StabChain &chain() const { return chain_; }
  const Int &order() const { return order_; }
  bool trivial() const { return order_ == 1; }
  bool contains(const Perm &g) const { return chain_.contains(g); }

  std::vector<std::vector<int>> orbits() const;
  bool transitive() const;
  // Throws std::invalid_argument if not transitive.
  bool primitive() const;

  // min over non-identity elements of (degree - #cycles).  Uses conjugacy
  // classes when available within `class_budget` elements, otherwise a full
  // element sweep; throws std::runtime_error if order() exceeds sweep_budget.
  int group_index(Int sweep_budget = Int(1000000000)) const;

  // Pointwise stabilizer of the given points (exact, via chain rebuild).
  PermGroup point_stabilizer(const std::vector<int> &points) const;
  Int pointwise_stabilizer_order(const std::vector<int> &points) const;

  // Setwise stabilizer by ordered-partition backtrack with orbit-count
  // pruning; exact.
  PermGroup set_stabilizer(const std::vector<int> &set) const;

  // True iff the intersection of the setwise stabilizers is trivial.
  // Throws std::invalid_argument if the sets overlap.
  bool stabilizer_intersection_trivial(
      const std::vector<std::vector<int>> &sets) const;

  // Greedy base: the chain's base points (first-moved heuristic).
  std::vector<int> greedy_base() const;
  // Minimum-cardinality base by pruned subset search.
  std::vector<int> minimal_base_exact(Int budget = Int(200000)) const;

  // Coset action on subgroup H (left cosets, g: xH -> gxH).  Returns the
  // action image and whether it is faithful.  Throws std::invalid_argument
  // if H is not a subgroup.
  std::pair<PermGroup, bool> coset_action(const PermGroup &sub,
                                          long index_budget = 2000000) const;
  // Images of generators() on the cosets, parallel to generators().
  std::pair<std::vector<Perm>, int> coset_images(const PermGroup &sub,
                                                 long index_budget = 2000000) const;

  // Conjugacy classes of elements, exact (conjugation-orbit BFS seeded by
  // random elements; terminates when sizes sum to order()).  Requires
  // order() <= budget.
  ConjClasses conjugacy_classes(Int budget = Int(2000000),
                                uint64_t seed = 0) const;

  CyclicClassProfile cyclic_class_profile(Int budget = Int(2000000),
                                          uint64_t seed = 0) const;

  // Enumerate all elements through the chain; cb may return false to stop.
  void sweep_elements(const std::function<bool(const Perm &)> &cb) const;

  Perm random_element(std::mt19937_64 &rng) const {
    return chain_.random_element(rng);
  }

 private:
  int degree_ = 0;
  std::vector<Perm> gens_;
  StabChain chain_;
  Int order_;
};

// Two parallel permutation actions of one abstract group, given by parallel
// generator lists.  Construction verifies that g -> (pi1(g), pi2(g)) is
// consistent, i.e. that pi2 factors through pi1 (pi1 faithful on the combined
// group), via the combined degree-(n1+n2) chain.
class PairedAction {
 public:
  PairedAction(int deg1, std::vector<Perm> gens1, int deg2,
               std::vector<Perm> gens2);

  int degree1() const { return deg1_; }
  int degree2() const { return deg2_; }
  const PermGroup &combined() const { return combined_; }

  // Exact supremum (attained maximum) of the index ratio over non-identity
  // elements: sup (n2 - #Orb(pi2 g)) / (n1 - #Orb(pi1 g)).
  Rat swap_ratio(Int sweep_budget = Int(1000000000)) const;

 private:
  int deg1_, deg2_;
  PermGroup combined_;
};

}  // namespace nfc
