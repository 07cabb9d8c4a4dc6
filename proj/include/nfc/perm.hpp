#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nfc {

// Permutation of {0,..,degree-1}, stored as the image array.
// Composition convention: (a*b)(x) = a(b(x)).
class Perm {
 public:
  Perm() {}
  explicit Perm(int degree) : img_(degree) {
    for (int i = 0; i < degree; ++i) img_[i] = i;
  }
  explicit Perm(std::vector<int> images);

  int degree() const { return (int)img_.size(); }
  int operator[](int x) const { return img_[x]; }
  const std::vector<int> &images() const { return img_; }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  Perm operator*(const Perm &o) const {
    Perm r;
    r.img_.resize(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) r.img_[i] = img_[o.img_[i]];
    return r;
  }

  Perm inverse() const {
    Perm r;
    r.img_.resize(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = (int)i;
    return r;
  }

  bool operator==(const Perm &o) const { return img_ == o.img_; }
  bool operator!=(const Perm &o) const { return img_ != o.img_; }
  bool operator<(const Perm &o) const { return img_ < o.img_; }

  int num_cycles() const;  // fixed points count
  int first_moved() const;  // -1 if identity

  // n - #cycles; 0 for the identity.
  int index() const { return degree() - num_cycles(); }

  // Cycle notation, 1-indexed, e.g. "(1,2,3)(4,5)"; "()" for the identity.
  std::string cycle_str() const;
  // Parse cycle notation at the given degree; throws std::invalid_argument
  // with a descriptive message on malformed input.
  static Perm parse_cycles(const std::string &s, int degree);

  size_t hash() const {
    size_t h = 1469598103934665603ull;
    for (int v : img_) {
      h ^= (size_t)v;
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  std::vector<int> img_;
};

struct PermHash {
  size_t operator()(const Perm &p) const { return p.hash(); }
};

}  // namespace nfc
