#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "nfc/lattice.hpp"

using namespace nfc;

namespace {

Lattice zlattice(int d) {
  std::vector<std::vector<Quad>> rows(d, std::vector<Quad>(d, Quad(Rat(0))));
  for (int i = 0; i < d; ++i) rows[i][i] = Quad(Rat(1));
  return lattice_from_rows("Z^" + std::to_string(d), d, 0, 0, rows);
}

// random full-rank integer lattice, possibly with complex places
Lattice random_lattice(std::mt19937_64 &rng, int d, int r2) {
  int r1 = d - 2 * r2;
  while (true) {
    std::vector<std::vector<Quad>> rows(d, std::vector<Quad>(d, Quad(Rat(0))));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        rows[i][j] = Quad(Rat((long)(rng() % 7) - 3));
    try {
      return lattice_from_rows("rand", r1, r2, 0, rows);
    } catch (const std::invalid_argument &) {
      // singular draw; try again
    }
  }
}

}  // namespace

TEST_CASE("quad arithmetic and signs") {
  Quad a(Rat(1), Rat(1), 7);   // 1 + sqrt7
  Quad b(Rat(3), Rat(-1), 7);  // 3 - sqrt7
  CHECK(((a * b) == Quad(Rat(-4), Rat(2), 7)));
  CHECK(a.sign() == 1);
  CHECK(Quad(Rat(3), Rat(-1), 7).sign() == 1);   // 3 > sqrt7
  CHECK(Quad(Rat(2), Rat(-1), 7).sign() == -1);  // 2 < sqrt7
  CHECK((a / a) == Quad(Rat(1), Rat(0), 7));
  Interval e = Quad(Rat(0), Rat(1), 7).enclosure();
  CHECK(e.lo * e.lo <= 7);
  CHECK(e.hi * e.hi >= 7);
}

TEST_CASE("standard lattice minima") {
  for (int d = 1; d <= 4; ++d) {
    Lattice L = zlattice(d);
    auto rep = successive_minima(L);
    REQUIRE((int)rep.lambda_sq.size() == d);
    for (auto &l : rep.lambda_sq) CHECK(l == Quad(Rat(1)));
  }
}

TEST_CASE("Q(sqrt7): lambda = (1, sqrt 7)") {
  Lattice L = field_lattice("Q(sqrt7)");
  CHECK(L.covol2 == Quad(Rat(28), 7));
  auto rep = successive_minima(L);
  REQUIRE(rep.lambda_sq.size() == 2);
  CHECK(rep.lambda_sq[0] == Quad(Rat(1), 7));
  CHECK(rep.lambda_sq[1] == Quad(Rat(7), 7));
  auto chk = minkowski_second_check(L, rep);
  CHECK(chk.holds);
}

TEST_CASE("biquadratic order: lambda_max^2 <= (D+1)/4") {
  for (long D : {3L, 7L, 11L}) {
    Lattice L = field_lattice("biquad" + std::to_string(D));
    auto rep = successive_minima(L);
    REQUIRE(rep.lambda_sq.size() == 4);
    CHECK(rep.lambda_sq[3] <= Quad(Rat(D + 1, 4), L.M));
  }
  // D = 11: lambda_max <= sqrt(3)
  Lattice L11 = field_lattice("biquad11");
  auto rep = successive_minima(L11);
  CHECK(rep.lambda_sq[3] <= Quad(Rat(3), L11.M));
}

TEST_CASE("point counts in boxes") {
  Lattice z2 = zlattice(2);
  CHECK(count_points_in_box(z2, Rat(2)) == 25);
  // bound check: 25 < 5^2 2^2 / 1
  CHECK(Rat(25) < rat_pow(Rat(5), 2) * rat_pow(Rat(2), 2));

  std::vector<std::vector<Quad>> rows{{Quad(Rat(3))}};
  Lattice z1s = lattice_from_rows("3Z", 1, 0, 0, rows);
  CHECK(count_points_in_box(z1s, Rat(3)) == 3);
}

TEST_CASE("minima invariant under unimodular basis change") {
  std::mt19937_64 rng(42);
  Lattice L = zlattice(3);
  // apply a random unimodular transform: rows' = U rows
  long U[3][3] = {{1, 2, 0}, {0, 1, 3}, {0, 0, 1}};
  std::vector<std::vector<Quad>> rows(3, std::vector<Quad>(3, Quad(Rat(0))));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rows[i][j] = Quad(Rat(U[i][j]));
  Lattice L2 = lattice_from_rows("UZ3", 3, 0, 0, rows);
  auto r1 = successive_minima(L), r2 = successive_minima(L2);
  for (int i = 0; i < 3; ++i) CHECK(r1.lambda_sq[i] == r2.lambda_sq[i]);
}

TEST_CASE("random lattices satisfy minkowski and the point-count bound") {
  std::mt19937_64 rng(7);
  int done = 0;
  while (done < 25) {
    int d = 1 + (int)(rng() % 4);
    int r2 = (d >= 2 && rng() % 3 == 0) ? 1 : 0;
    Lattice L = random_lattice(rng, d, r2);
    MinimaReport rep;
    try {
      rep = successive_minima(L);
    } catch (const std::runtime_error &) {
      continue;  // budget blowup on a skewed draw
    }
    auto chk = minkowski_second_check(L, rep);
    CHECK(chk.holds);
    // Lemma bound with H = lambda_max upper bound
    Interval lam = rep.lambda_sq[d - 1].enclosure();
    Rat H = lam.hi + 1;
    long cnt = 0;
    try {
      cnt = count_points_in_box(L, H, 4000000);
    } catch (const std::runtime_error &) {
      continue;
    }
    // prod lambda_i <= H^d, count < 5^d H^d / prod(lambda)
    Quad prod2(Rat(1), L.M);
    for (auto &l : rep.lambda_sq) prod2 = prod2 * l;
    Interval p2 = prod2.enclosure();
    Rat rhs_sq = rat_pow(Rat(5), 2 * d) * rat_pow(H, 2 * d) / p2.lo;
    CHECK(Rat(cnt) * Rat(cnt) < rhs_sq);
    ++done;
  }
}

TEST_CASE("catalog fields: lambda_max <= |disc|^(1/d) and extension pairs") {
  for (auto &name : field_catalog_names()) {
    Lattice L = field_lattice(name);
    auto rep = successive_minima(L);
    // lambda_max <= |disc|^(1/d): compare lambda_max^(2d) vs disc^2
    Quad lmax = rep.lambda_sq[L.d - 1];
    Quad pow_l(Rat(1), L.M);
    for (int i = 0; i < L.d; ++i) pow_l = pow_l * lmax;
    CHECK(pow_l <= L.covol2 * L.covol2);
  }
  // lambda_max(k) <= n lambda_max(K) on the bundled extension pairs
  for (long D : {3L, 7L, 11L}) {
    Lattice k = field_lattice("Q(sqrt" + std::to_string(D) + ")");
    Lattice K = field_lattice("biquad" + std::to_string(D));
    auto rk = successive_minima(k), rK = successive_minima(K);
    // lambda_max(k)^2 <= 4 lambda_max(K)^2
    Quad lhs = rk.lambda_sq[1];
    Quad rhs = rK.lambda_sq[3] * Quad(Rat(4), K.M);
    Interval li = lhs.enclosure(), ri = rhs.enclosure();
    CHECK(li.lo <= ri.hi);
    CHECK(*(li.certainly_le(ri)));
  }
}

TEST_CASE("zeta5 lattice") {
  Lattice L = field_lattice("Q(zeta5)");
  CHECK(L.covol2 == Quad(Rat(125), 5));
  auto rep = successive_minima(L);
  for (auto &l : rep.lambda_sq) CHECK(l == Quad(Rat(1), 5));  // roots of unity
  auto chk = minkowski_second_check(L, rep);
  CHECK(chk.holds);
}

TEST_CASE("hypersurface avoidance counts") {
  std::vector<long> box5{-2, -1, 0, 1, 2};
  auto r1 = hypersurface_avoidance_count(IntPoly::parse("x1", 1), {box5});
  CHECK(r1.nonzero == 4);
  CHECK(r1.lower_bound == Rat(5, 2));
  CHECK(r1.ok);

  auto r2 = hypersurface_avoidance_count(IntPoly::parse("x1*x2-1", 2), {box5, box5});
  CHECK(r2.nonzero == 23);
  CHECK(r2.lower_bound == Rat(25, 4));
  CHECK(r2.ok);

  std::vector<long> box3{-1, 0, 1};
  auto r3 = hypersurface_avoidance_count(IntPoly::parse("x2-x1", 2), {box3, box3});
  CHECK(r3.nonzero == 6);
  CHECK(r3.ok);

  CHECK_THROWS_AS(
      hypersurface_avoidance_count(IntPoly::parse("x1^2", 1), {box3}),
      std::invalid_argument);
  CHECK_THROWS_AS(IntPoly::parse("x1++", 1), std::invalid_argument);
}

TEST_CASE("random hypersurface instances satisfy the bound") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    int n = 1 + (int)(rng() % 3);
    IntPoly f;
    f.nvars = n;
    int deg = 1 + (int)(rng() % 2);
    for (int k = 0; k < 4; ++k) {
      std::array<int, 4> e{};
      int rem = deg;
      for (int i = 0; i < n; ++i) {
        e[i] = (int)(rng() % (rem + 1));
        rem -= e[i];
      }
      f.terms[e] += (long)(rng() % 9) - 4;
    }
    if (f.degree() == 0) continue;
    std::vector<std::vector<long>> boxes;
    for (int i = 0; i < n; ++i) {
      std::vector<long> b;
      long len = 2 * f.degree() + (long)(rng() % 3);
      long start = (long)(rng() % 5) - 2;
      for (long v = 0; v < len; ++v) b.push_back(start + v);
      boxes.push_back(b);
    }
    bool zero_poly = true;
    for (auto &[e, c] : f.terms) zero_poly = zero_poly && c == 0;
    if (zero_poly) continue;
    auto r = hypersurface_avoidance_count(f, boxes);
    CHECK(r.ok);
  }
}
