#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "nfc/geom.hpp"
#include "nfc/invariants.hpp"

using namespace nfc;

TEST_CASE("finite field axioms, frobenius, primitivity") {
  for (auto [p, e] : {std::pair{2, 2}, {3, 2}, {5, 1}, {2, 3}}) {
    FiniteField F(p, e);
    CHECK(F.q() == (int)std::pow(p, e));
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
      int a = rng() % F.q(), b = rng() % F.q(), c = rng() % F.q();
      CHECK(F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.add(a, F.neg(a)) == 0);
      if (a) CHECK(F.mul(a, F.inv(a)) == 1);
    }
    // frobenius has order e and fixes exactly the prime field
    for (int a = 0; a < F.q(); ++a) {
      int x = a;
      for (int k = 0; k < e; ++k) x = F.frobenius(x);
      CHECK(x == a);
      bool fixed = F.frobenius(a) == a;
      CHECK(fixed == (a < p));  // prime-field elements are digit-encoded 0..p-1
    }
    CHECK(F.is_primitive(F.primitive_element()));
  }
}

TEST_CASE("projective action degrees and orders") {
  auto a1 = build_projective_action(2, 5, "pgl");
  CHECK(a1.group.degree() == 6);
  CHECK(a1.group.order() == 120);

  auto a2 = build_projective_action(3, 2, "pgl");
  CHECK(a2.group.degree() == 7);
  CHECK(a2.group.order() == 168);

  auto a3 = build_projective_action(2, 4, "pgammal");
  CHECK(a3.group.degree() == 5);
  CHECK(a3.group.order() == 120);

  auto a4 = build_projective_action(2, 4, "psl");
  CHECK(a4.group.order() == 60);

  CHECK_THROWS_AS(build_projective_action(2, 6, "pgl"), std::invalid_argument);
}

TEST_CASE("gl vector action") {
  auto a = build_gl_vector_action(2, 3);
  CHECK(a.group.degree() == 8);
  CHECK(a.group.order() == 48);
}

TEST_CASE("singular actions: symplectic and unitary") {
  auto sp2 = build_singular_action("symplectic", 2, 2);
  CHECK(sp2.group.degree() == 15);
  CHECK(sp2.group.order() == 720);

  auto u12 = build_singular_action("unitary-odd", 1, 2);
  CHECK(u12.group.degree() == 9);   // q^3 + 1
  CHECK(u12.group.order() == 216);  // PGU_3(2)

  auto sp3 = build_singular_action("symplectic", 2, 3);
  CHECK(sp3.group.degree() == 40);
  CHECK(sp3.group.order() == 25920);
  CHECK(sp3.group.primitive());
}

TEST_CASE("builder spec strings") {
  auto a = build_from_spec("linear:m=3,q=2,flavor=pgl");
  CHECK(a.group.degree() == 7);
  auto b = build_from_spec("unitary:m=1,q=2,parity=odd");
  CHECK(b.group.degree() == 9);
  CHECK_THROWS_AS(build_from_spec("nonsense"), std::invalid_argument);
}

TEST_CASE("sigma sets: linear family") {
  auto a32 = build_projective_action(3, 2, "pgl");
  auto s = sigma_sets(a32);
  CHECK(s.t == 5);
  CHECK(s.w == 15);  // 5m for PGL
  CHECK(s.w_cap == 15);
  CHECK(s.verified_trivial);

  auto a25 = build_projective_action(2, 5, "pgl");
  auto s2 = sigma_sets(a25);
  CHECK(s2.t == 3);
  CHECK(s2.w == 10);
  CHECK(s2.verified_trivial);

  auto a24 = build_projective_action(2, 4, "pgammal");
  auto s3 = sigma_sets(a24);
  CHECK(s3.t == 4);
  CHECK(s3.w == 15);  // 5m + 5 for PGammaL
  CHECK(s3.verified_trivial);
}

TEST_CASE("sigma sets: symplectic w cap 7m+5") {
  auto sp3 = build_singular_action("symplectic", 2, 3);
  auto s = sigma_sets(sp3);
  CHECK(s.w == 19);
  CHECK(s.w_cap == 19);
  CHECK(s.verified_trivial);
}

TEST_CASE("sigma sets: unitary-odd m=1 base mode, w=21") {
  auto u = build_singular_action("unitary-odd", 1, 2);
  auto s = sigma_sets(u);
  CHECK(s.base_mode);
  CHECK(s.t == 5);
  CHECK(s.w == 21);
  CHECK(s.verified_trivial);
}

TEST_CASE("gl-vectors sigma: t = m+1, w = 2m+4") {
  auto a = build_gl_vector_action(2, 3);
  auto s = sigma_sets(a);
  CHECK(s.t == 3);
  CHECK(s.w == 8);
  CHECK(s.verified_trivial);
  Invariants inv(a.group);
  auto res = inv.construct_from_sigmas(s.sets);
  CHECK(res.verified_independent);
  CHECK(res.t == 3);
  CHECK(res.w == 8);
}

TEST_CASE("natural w table") {
  CHECK(natural_w("symplectic", 2) == 19);
  CHECK(natural_w("unitary-4", 2) == 25);
  CHECK(natural_w("sporadic", 0) == 28);
  CHECK(natural_w("linear", 3) == 20);
  CHECK(natural_w("unitary-3", 1) == 21);
  CHECK_THROWS_AS(natural_w("bogus", 1), std::invalid_argument);
}

TEST_CASE("large q vector search") {
  auto bad = large_q_vector_search(2, 7);
  CHECK_FALSE(bad.feasible);

  auto good = large_q_vector_search(2, 23);
  CHECK(good.feasible);
  CHECK(good.witness.size() == 2);
  CHECK(good.stabilizer_checked);
  CHECK_FALSE(good.contradiction);
  CHECK(good.bulk_degree == 6);
}

TEST_CASE("affine recipe for GL2(3)") {
  auto rep = affine_recipe("gl", 2, 3);
  CHECK(rep.g_order == 432);
  CHECK(rep.g_degree == 9);
  CHECK(rep.index_g_h == 12);
  CHECK(rep.faithful);
  CHECK(rep.index_h0t_h == 3);
  CHECK(rep.image_in_agl1);
  CHECK(rep.codim1_orbit == 4);
}

TEST_CASE("diagonal recipe for A5") {
  PermGroup a5(5, {Perm::parse_cycles("(1,2,3)", 5), Perm::parse_cycles("(3,4,5)", 5)});
  auto rep = diagonal_recipe(a5);
  CHECK(rep.pi1_degree == 60);
  CHECK(rep.pi2_degree == 10);
  CHECK(rep.index_t_h == 5);
  CHECK(rep.pi2_faithful);
  CHECK(rep.swap_bound_ok);
  CHECK(rep.swap > 0);
  // [T:H] <= sqrt(|T|)
  CHECK(Int(rep.index_t_h) * Int(rep.index_t_h) <= rep.t_order);
}

TEST_CASE("form preservation spot check") {
  auto sp3 = build_singular_action("symplectic", 2, 3);
  // generators permute singular points (already implied by construction);
  // verify the action preserves orthogonality relations on points
  FiniteField F(3, 1);
  auto dot = [&](const std::vector<int> &u, const std::vector<int> &v) {
    int m = 2, dim = 4;
    int s = 0;
    for (int i = 0; i < m; ++i) {
      s = F.add(s, F.mul(u[i], v[m + i]));
      s = F.add(s, F.neg(F.mul(u[m + i], v[i])));
    }
    (void)dim;
    return s;
  };
  std::mt19937_64 rng(3);
  const auto &pts = sp3.points;
  for (const Perm &g : sp3.group.generators())
    for (int t = 0; t < 10; ++t) {
      int i = rng() % pts.size(), j = rng() % pts.size();
      bool before = dot(pts[i], pts[j]) == 0;
      bool after = dot(pts[g[i]], pts[g[j]]) == 0;
      CHECK(before == after);
    }
}
