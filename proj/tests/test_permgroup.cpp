#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "nfc/catalog.hpp"
#include "nfc/group.hpp"

using namespace nfc;

namespace {

PermGroup symmetric(int n) {
  std::vector<int> t(n), c(n);
  for (int i = 0; i < n; ++i) t[i] = c[i] = i;
  std::swap(t[0], t[1]);
  for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
  return PermGroup(n, {Perm(t), Perm(c)});
}

PermGroup cyclic_regular(int n) {
  std::vector<int> c(n);
  for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
  return PermGroup(n, {Perm(c)});
}

}  // namespace

TEST_CASE("cycle notation round trip and errors") {
  Perm p = Perm::parse_cycles("(1,2,3)(4,5)", 5);
  CHECK(p.images() == std::vector<int>{1, 2, 0, 4, 3});
  CHECK(p.cycle_str() == "(1,2,3)(4,5)");
  CHECK_THROWS_AS(Perm::parse_cycles("(1,2", 5), std::invalid_argument);
  CHECK_THROWS_AS(Perm::parse_cycles("(1,6)", 5), std::invalid_argument);
  CHECK_THROWS_AS(Perm::parse_cycles("(1,2,1)", 5), std::invalid_argument);
  CHECK(Perm::parse_cycles("()", 5).is_identity());
}

TEST_CASE("orders of standard groups") {
  CHECK(symmetric(5).order() == 120);
  CHECK(symmetric(4).order() == 24);
  CHECK(cyclic_regular(7).order() == 7);
  PermGroup triv(4, {Perm(4)});
  CHECK(triv.order() == 1);
}

TEST_CASE("membership is exact") {
  PermGroup a5(5, {Perm::parse_cycles("(1,2,3)", 5), Perm::parse_cycles("(3,4,5)", 5)});
  CHECK(a5.order() == 60);
  CHECK(a5.contains(Perm::parse_cycles("(1,2)(3,4)", 5)));
  CHECK_FALSE(a5.contains(Perm::parse_cycles("(1,2)", 5)));
}

TEST_CASE("element index basics") {
  CHECK(Perm::parse_cycles("(1,2)", 5).index() == 1);
  CHECK(Perm::parse_cycles("(1,2,3,4,5)", 5).index() == 4);
  CHECK(Perm(5).index() == 0);
}

TEST_CASE("element index is a class function (random conjugates)") {
  PermGroup s6 = symmetric(6);
  std::mt19937_64 rng(12345);
  for (int t = 0; t < 50; ++t) {
    Perm g = s6.random_element(rng), h = s6.random_element(rng);
    Perm c = h * g * h.inverse();
    CHECK(c.index() == g.index());
  }
}

TEST_CASE("group index by sweep") {
  CHECK(symmetric(5).group_index() == 1);
  CHECK(cyclic_regular(5).group_index() == 4);
  CHECK_THROWS_AS(PermGroup(3, {Perm(3)}).group_index(), std::domain_error);
}

TEST_CASE("orbits, transitivity, primitivity") {
  CHECK(symmetric(4).primitive());
  CHECK_FALSE(cyclic_regular(4).primitive());
  CHECK(cyclic_regular(5).primitive());  // prime degree
  PermGroup intrans(4, {Perm::parse_cycles("(1,2)", 4)});
  CHECK_THROWS_AS(intrans.primitive(), std::invalid_argument);
}

TEST_CASE("point and set stabilizers") {
  PermGroup s4 = symmetric(4);
  CHECK(s4.point_stabilizer({0}).order() == 6);
  CHECK(s4.set_stabilizer({0, 1}).order() == 4);
  CHECK(s4.set_stabilizer({0, 1, 2, 3}).order() == 24);
  CHECK(cyclic_regular(4).point_stabilizer({0}).order() == 1);
}

TEST_CASE("set stabilizer matches brute force on random subsets of S6") {
  PermGroup s6 = symmetric(6);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 8; ++t) {
    std::vector<int> set;
    for (int i = 0; i < 6; ++i)
      if (rng() % 2) set.push_back(i);
    if (set.empty() || set.size() == 6) continue;
    PermGroup st = s6.set_stabilizer(set);
    long brute = 0;
    std::vector<char> flag(6, 0);
    for (int p : set) flag[p] = 1;
    s6.sweep_elements([&](const Perm &g) {
      bool ok = true;
      for (int p : set)
        if (!flag[g[p]]) ok = false;
      if (ok) ++brute;
      return true;
    });
    CHECK(st.order() == brute);
    for (const Perm &g : st.generators())
      for (int p : set) CHECK(flag[g[p]]);
  }
}

TEST_CASE("stabilizer intersection trivial") {
  PermGroup s4 = symmetric(4);
  CHECK_FALSE(s4.stabilizer_intersection_trivial({{0}}));
  CHECK(s4.stabilizer_intersection_trivial({{0}, {1}, {2}}));
  CHECK_THROWS_AS(s4.stabilizer_intersection_trivial({{0, 1}, {1, 2}}),
                  std::invalid_argument);
  PermGroup c4 = cyclic_regular(4);
  CHECK(c4.stabilizer_intersection_trivial({{0}}));
}

TEST_CASE("greedy and exact base") {
  PermGroup s4 = symmetric(4);
  auto b = s4.minimal_base_exact();
  CHECK(b.size() == 3);
  CHECK(cyclic_regular(5).minimal_base_exact().size() == 1);
  CHECK(s4.pointwise_stabilizer_order(s4.greedy_base()) == 1);
}

TEST_CASE("coset actions") {
  PermGroup s4 = symmetric(4);
  PermGroup d8(4, {Perm::parse_cycles("(1,2,3,4)", 4), Perm::parse_cycles("(1,3)", 4)});
  CHECK(d8.order() == 8);
  auto [act, faithful] = s4.coset_action(d8);
  CHECK(act.degree() == 3);
  CHECK_FALSE(faithful);

  PermGroup triv(4, std::vector<Perm>{});
  auto [reg, f2] = cyclic_regular(4).coset_action(triv);
  CHECK(reg.degree() == 4);
  CHECK(f2);

  PermGroup not_sub(4, {Perm::parse_cycles("(1,2)", 4)});
  CHECK_THROWS_AS(symmetric(3).coset_action(not_sub), std::invalid_argument);
}

TEST_CASE("conjugacy classes and cyclic profile of S3") {
  PermGroup s3 = symmetric(3);
  auto cc = s3.conjugacy_classes();
  CHECK(cc.reps.size() == 3);
  auto prof = s3.cyclic_class_profile();
  CHECK(prof.table == std::map<int, long>{{1, 1}, {2, 1}});
  CHECK(prof.ind == 1);
  CHECK(prof.b_at_ind == 1);

  auto c2 = cyclic_regular(2).cyclic_class_profile();
  CHECK(c2.table == std::map<int, long>{{1, 1}});
}

TEST_CASE("swap ratio of identical actions is 1") {
  PermGroup s5 = symmetric(5);
  PairedAction pa(5, s5.generators(), 5, s5.generators());
  CHECK(pa.swap_ratio() == Rat(1));
}

TEST_CASE("paired action rejects non-homomorphisms") {
  std::vector<Perm> g1 = {Perm::parse_cycles("(1,2)", 3)};
  std::vector<Perm> g2 = {Perm::parse_cycles("(1,2,3)", 3)};
  CHECK_THROWS_AS(PairedAction(3, g1, 3, g2), std::invalid_argument);
}
