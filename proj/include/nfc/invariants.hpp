#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nfc/group.hpp"
#include "nfc/monomial.hpp"

namespace nfc {

// Monic orbit sum of a monomial under a permutation group: the sum of the
// distinct monomials in the orbit, all with coefficient 1.  |f|(1) equals
// the orbit size.
struct OrbitSum {
  Mono rep;         // lexicographically minimal exponent vector in the orbit
  long orbit_size = 0;
  int degree = 0;
};

// Sparse integer polynomial, enough for invariants and their products.
struct SparsePoly {
  int nvars = 0;
  std::vector<std::pair<Mono, long>> terms;

  int degree() const {
    int d = 0;
    for (auto &[m, c] : terms) d = std::max(d, m.degree());
    return d;
  }
  static SparsePoly product(const SparsePoly &a, const SparsePoly &b);
};

struct InvariantProfile {
  std::vector<OrbitSum> invariants;

  std::vector<int> degrees() const;
  long deg_sum() const;
  Int i1() const;  // product of |f_i|(1) = product of orbit sizes
  // largest m such that the power sums of all degrees 1..m are present
  int power_sum_prefix(int nvars) const;
};

struct MinimalityCertificate {
  struct Line {
    int d;
    long inv_dim;       // dimension of the degree-d invariant space
    long subalg_dim;    // graded dimension generated by chosen invariants
    bool exact_expansion;  // exact monomial vectors vs evaluation rank
    unsigned long prime;
  };
  std::vector<Line> lines;
  bool minimal = false;
  int attempts = 0;
  std::string note;
};

struct IndependenceVerdict {
  bool independent = false;   // a true verdict is an exact certificate
  unsigned long witness_prime = 0;
  int witness_point = -1;
  std::vector<std::string> trial_log;
};

// Thrown when an operation would exceed its configured budget.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Probabilistic step failed after all retries (dependence suspected etc.).
struct ProbabilisticFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Invariants {
 public:
  explicit Invariants(const PermGroup &g) : G_(&g) {}

  const PermGroup &group() const { return *G_; }

  // Orbit of a monomial, enumerated exactly; throws ResourceError past budget.
  OrbitSum orbit_sum(const Mono &m, long budget = 4000000) const;
  // The orbit's monomials as a flat (orbit_size x n) exponent buffer.
  std::vector<uint8_t> orbit_monomials(const Mono &rep, long budget = 4000000) const;

  // Exact big-integer evaluation, plus gradient if grad != nullptr.
  Int evaluate(const OrbitSum &f, const std::vector<Int> &point,
               std::vector<Int> *grad = nullptr) const;
  // Evaluation mod a prime; throws std::invalid_argument if p is not prime.
  unsigned long evaluate_mod(const OrbitSum &f, const std::vector<long> &point,
                             unsigned long p,
                             std::vector<unsigned long> *grad = nullptr) const;

  // Number of monomial orbits of degree exactly d (= the dimension of the
  // degree-d invariant space), or cumulative over 1..d.
  long invariant_dimension(int d, bool cumulative = false,
                           Int space_budget = Int(25000000)) const;

  // All degree-d orbits with per-orbit gradients at `points` mod `primes`,
  // accumulated on the fly (memory stays at one bitmap + one orbit queue).
  struct DegreeScan {
    std::vector<OrbitSum> orbits;
    // gradient[orbit][ctx][var], ctx = point*#primes + prime
    std::vector<std::vector<std::vector<unsigned long>>> gradients;
  };
  DegreeScan scan_degree(int d, const std::vector<std::vector<long>> &points,
                         const std::vector<unsigned long> &primes,
                         Int space_budget = Int(25000000)) const;

  // One-sided exact independence test: a nonzero Jacobian determinant at a
  // random point mod a prime certifies independence; all-zero over all
  // trials yields a (probabilistic) dependence verdict.
  IndependenceVerdict jacobian_independent(const std::vector<OrbitSum> &inv,
                                           int trials = 3,
                                           std::vector<unsigned long> primes = {},
                                           uint64_t seed = 0) const;
  // Same test for arbitrary sparse polynomials.
  IndependenceVerdict jacobian_independent_poly(const std::vector<SparsePoly> &polys,
                                                int trials = 3,
                                                std::vector<unsigned long> primes = {},
                                                uint64_t seed = 0) const;
  SparsePoly expand(const OrbitSum &f) const;

  // Invariants from a family of disjoint stabilizer sets (the P0 product
  // construction, or the P1 variant with empirically detected exceptional
  // slots).  Checks the hypotheses; throws std::invalid_argument when they
  // fail, naming the offending subset.
  enum class SigmaVariant { none, a, b };
  struct SigmaResult {
    InvariantProfile profile;
    int t = 0, s = 0;
    long w = 0, w_prime = 0;
    long e_allowance = 0;   // only for variants a/b
    long exceptional = 0;   // slots that fell back to the P0 form
    bool verified_independent = false;
  };
  SigmaResult construct_from_sigmas(const std::vector<std::vector<int>> &sigmas,
                                    SigmaVariant variant = SigmaVariant::none,
                                    uint64_t seed = 0) const;

  // Swap power sums of degrees 1..m into the profile, never worsening the
  // degree multiset; throws ProbabilisticFailure if no replaceable member
  // is found.
  InvariantProfile power_sum_upgrade(const InvariantProfile &profile, int m,
                                     uint64_t seed = 0) const;

  struct ProfileResult {
    InvariantProfile profile;
    MinimalityCertificate certificate;
  };
  // Greedy degree-minimal profile with a per-degree generation certificate;
  // see the README for what the certificate proves.
  ProfileResult minimal_degree_profile(int max_degree, uint64_t seed = 0,
                                       Int space_budget = Int(25000000),
                                       long expansion_threshold = 2000000) const;

 private:
  const PermGroup *G_;
};

// Power sum of degree k as an orbit sum (requires a transitive group).
OrbitSum power_sum(const PermGroup &g, int k);
bool is_power_sum(const OrbitSum &f);

// Versioned text cache for minimal-profile runs.
std::string profile_cache_key(const PermGroup &g, const std::string &group_name,
                              int max_degree, uint64_t seed);
void profile_cache_store(const std::string &dir, const std::string &key,
                         const Invariants::ProfileResult &r);
std::optional<Invariants::ProfileResult> profile_cache_load(
    const std::string &dir, const std::string &key, int nvars);

}  // namespace nfc
