#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nfc/ffield.hpp"
#include "nfc/group.hpp"
#include "nfc/invariants.hpp"

namespace nfc {

// A classical group built as a permutation action, with its point index.
struct BuiltAction {
  std::string family;  // linear | gl-vectors | symplectic | unitary-even | ...
  std::string flavor;  // pgl | psl | pgammal | (empty)
  int m = 0, q = 0;
  int dim = 0;                 // dimension of the underlying module
  int field_q = 0;             // q or q^2 for unitary
  PermGroup group;
  std::vector<std::vector<int>> points;  // representative vectors (or RREF pairs)
  Int expected_order;          // closed-form order of the built image
  std::string order_formula;
};

// Projective actions of (P)GL/(P)SL/(P)GammaL_m(F_q) on 1-spaces.
BuiltAction build_projective_action(int m, int q, const std::string &flavor);
// GL_m(F_q) on nonzero vectors.
BuiltAction build_gl_vector_action(int m, int q);
// Isometry-group actions on totally singular 1-spaces (2-spaces for
// unitary-4).  Families: symplectic, unitary-even, unitary-odd, unitary-4,
// orth-plus, orth-minus (q even for orth +-), orth-odd (q odd).
BuiltAction build_singular_action(const std::string &family, int m, int q);

// Builder specification strings, e.g. "linear:m=3,q=2,flavor=pgl".
BuiltAction build_from_spec(const std::string &spec);

struct SigmaSets {
  std::vector<std::vector<int>> sets;  // point indices into the action
  int s = 0, t = 0;
  long w = 0, w_prime = 0;
  long w_cap = 0;       // the degree cap the construction is meant to meet
  bool base_mode = false;  // family handled through a base of singletons
  bool verified_trivial = false;
  std::string alpha_note;
};

// The explicit stabilizer-set family for a built action; verifies the
// trivial-intersection hypothesis when verify is set.
SigmaSets sigma_sets(const BuiltAction &act, bool verify = true);

// w values assigned to the natural representations, per socle family.
// Families: linear, symplectic, unitary-even, orth-plus, unitary-4,
// unitary-odd, orth-odd, orth-minus, unitary-3, sporadic, exceptional.
long natural_w(const std::string &family, int m);

struct LargeQSearch {
  bool feasible = false;       // the lemma's inequality holds
  std::string inequality;      // rendered check
  std::vector<int> witness;    // v0 coordinates, when found
  bool stabilizer_checked = false;
  int bulk_degree = 0;         // m + 4
  bool contradiction = false;  // precondition held but no witness exists
};
LargeQSearch large_q_vector_search(int m, int q);

struct AffineReport {
  int p = 0, m = 0;
  Int g_order;
  int g_degree = 0;        // p^m
  Int g0_order;
  long index_g_h = 0;      // [G : H]
  long index_h0t_h = 0;    // [H0~ : H], must equal p
  Int h0t_coset_image_order;  // image of H0~ on H, divides p(p-1)
  bool image_in_agl1 = false;
  bool faithful = false;   // coset action of G on H
  long codim1_orbit = 0;   // [G0 : H0]
};
// G0 in {"gl", "sl"}; G = G0 x| F_p^m acting on p^m vectors.
AffineReport affine_recipe(const std::string &g0, int m, int p);

struct DiagonalReport {
  Int t_order;
  long pi1_degree = 0;   // |T|
  long pi2_degree = 0;   // 2 [T:H]
  long index_t_h = 0;    // [T:H]
  bool pi2_faithful = false;
  Rat swap;              // exact swap(pi1, pi2)
  int ind_pi1 = 0;
  bool swap_bound_ok = false;  // swap < pi2_degree / ind(pi1)
};
// First diagonal case: G0 = T x T on T; pi2 = cosets of (H x T) + (T x H)
// with H the largest proper subgroup found within budget.
DiagonalReport diagonal_recipe(const PermGroup &t, Int order_budget = Int(20000),
                               uint64_t seed = 0);

}  // namespace nfc
