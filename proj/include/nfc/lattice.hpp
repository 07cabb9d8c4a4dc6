#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "nfc/interval.hpp"
#include "nfc/rat.hpp"

namespace nfc {

// Exact value a + b*sqrt(M) in a fixed real quadratic extension.
struct Quad {
  Rat a, b;
  long M = 0;  // shared per lattice; M in {0,1} means rational values

  Quad() : a(0), b(0) {}
  Quad(const Rat &x, long m = 0) : a(x), b(0), M(m) {}
  Quad(const Rat &x, const Rat &y, long m) : a(x), b(y), M(m) { reduce(); }

  void reduce() {
    if (M == 0) b = 0;
    if (M == 1) {
      a += b;
      b = 0;
    }
  }
  bool rational() const { return b == 0; }

  Quad operator+(const Quad &o) const { return Quad(a + o.a, b + o.b, pick(o)); }
  Quad operator-(const Quad &o) const { return Quad(a - o.a, b - o.b, pick(o)); }
  Quad operator-() const { return Quad(-a, -b, M); }
  Quad operator*(const Quad &o) const {
    long m = pick(o);
    return Quad(a * o.a + b * o.b * m, a * o.b + b * o.a, m);
  }
  Quad operator/(const Quad &o) const;

  int sign() const;
  bool operator<(const Quad &o) const { return (*this - o).sign() < 0; }
  bool operator<=(const Quad &o) const { return (*this - o).sign() <= 0; }
  bool operator==(const Quad &o) const { return a == o.a && b == o.b; }

  Interval enclosure(const Rat &width = Rat(1, Int(1) << 48)) const;
  std::string str() const;

 private:
  long pick(const Quad &o) const { return M ? M : o.M; }
};

// Full-rank lattice in R^{r1} x C^{r2}; per-place Gram matrices carry the
// gauge exactly: gauge(c)^2 = max_v Q_v(c).  Covolume is stored squared, in
// the Minkowski measure (the 2^{r2} factor applied).
struct Lattice {
  std::string name;
  int d = 0, r1 = 0, r2 = 0;
  long M = 0;
  std::vector<std::vector<std::vector<Quad>>> gram;  // [place][i][j]
  Quad covol2;

  int places() const { return r1 + r2; }
  Quad place_q(int v, const std::vector<long> &c) const;
  Quad gauge_sq(const std::vector<long> &c) const;
};

// Build from embedding rows: row i lists the r1 real coordinates of basis
// vector i followed by (re, im) pairs for the r2 complex places.
Lattice lattice_from_rows(const std::string &name, int r1, int r2, long M,
                          const std::vector<std::vector<Quad>> &rows);

struct MinimaReport {
  std::vector<Quad> lambda_sq;                 // exact squared minima
  std::vector<std::vector<long>> vectors;      // attaining coefficient vectors
  Rat exhaustion_radius_sq;                    // enumeration certificate
};

// Exact successive minima by exhaustive enumeration; throws
// std::runtime_error when the candidate budget is exceeded.
MinimaReport successive_minima(const Lattice &L, long budget = 4000000);

// Number of lattice points with gauge <= H (the origin included).
long count_points_in_box(const Lattice &L, const Rat &H, long budget = 4000000);

struct MinkowskiCheck {
  bool holds = false;
  // slack factors as intervals: lambda-product / lower bound, upper / product
  std::string lower_margin, upper_margin;
};
MinkowskiCheck minkowski_second_check(const Lattice &L, const MinimaReport &mins);

// Bundled field lattices (integral bases realizing the small catalog).
Lattice field_lattice(const std::string &name);
std::vector<std::string> field_catalog_names();
// Parse the text catalog format (see data/fields.txt).
std::vector<Lattice> parse_field_catalog(const std::string &path);

// Integer polynomials in up to 4 variables for the hypersurface count.
struct IntPoly {
  int nvars = 0;
  std::map<std::array<int, 4>, Int> terms;

  int degree() const;
  Int eval(const std::vector<long> &x) const;
  static IntPoly parse(const std::string &s, int nvars);
};

struct HyperCount {
  Int nonzero;
  Rat lower_bound;  // prod |B_i| / 2^N
  bool ok = false;
};
// Exact count of box tuples with F != 0; throws std::invalid_argument if
// some |B_i| < 2 deg F.
HyperCount hypersurface_avoidance_count(const IntPoly &f,
                                        const std::vector<std::vector<long>> &boxes);

}  // namespace nfc
