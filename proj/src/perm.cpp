#include "nfc/perm.hpp"

#include <sstream>
#include <stdexcept>

namespace nfc {

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (int v : img_) {
    if (v < 0 || v >= (int)img_.size() || seen[v])
      throw std::invalid_argument("permutation images are not a bijection");
    seen[v] = 1;
  }
}

int Perm::num_cycles() const {
  int n = degree(), count = 0;
  std::vector<char> seen(n, 0);
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++count;
    for (int j = i; !seen[j]; j = img_[j]) seen[j] = 1;
  }
  return count;
}

int Perm::first_moved() const {
  for (int i = 0; i < degree(); ++i)
    if (img_[i] != i) return i;
  return -1;
}

std::string Perm::cycle_str() const {
  std::ostringstream os;
  int n = degree();
  std::vector<char> seen(n, 0);
  bool any = false;
  for (int i = 0; i < n; ++i) {
    if (seen[i] || img_[i] == i) {
      seen[i] = 1;
      continue;
    }
    any = true;
    os << "(";
    int j = i;
    bool first = true;
    do {
      if (!first) os << ",";
      os << j + 1;
      seen[j] = 1;
      j = img_[j];
      first = false;
    } while (j != i);
    os << ")";
  }
  return any ? os.str() : "()";
}

Perm Perm::parse_cycles(const std::string &s, int degree) {
  std::vector<int> img(degree);
  std::vector<char> used(degree, 0);
  for (int i = 0; i < degree; ++i) img[i] = i;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  };
  skip_ws();
  if (i < s.size() && s.compare(i, 2, "()") == 0) i += 2;
  while (i < s.size()) {
    skip_ws();
    if (i >= s.size()) break;
    if (s[i] != '(') throw std::invalid_argument("expected '(' in cycle notation");
    ++i;
    std::vector<int> cyc;
    while (true) {
      skip_ws();
      size_t start = i;
      while (i < s.size() && isdigit((unsigned char)s[i])) ++i;
      if (start == i) throw std::invalid_argument("expected point in cycle");
      int pt = std::stoi(s.substr(start, i - start));
      if (pt < 1 || pt > degree)
        throw std::invalid_argument("point " + std::to_string(pt) +
                                    " out of range 1.." + std::to_string(degree));
      for (int q : cyc)
        if (q == pt - 1)
          throw std::invalid_argument("duplicate point " + std::to_string(pt) +
                                      " within a cycle");
      cyc.push_back(pt - 1);
      skip_ws();
      if (i >= s.size()) throw std::invalid_argument("unclosed cycle");
      if (s[i] == ',') {
        ++i;
        continue;
      }
      if (s[i] == ')') {
        ++i;
        break;
      }
      throw std::invalid_argument("unexpected character in cycle");
    }
    for (size_t k = 0; k < cyc.size(); ++k) {
      int from = cyc[k], to = cyc[(k + 1) % cyc.size()];
      if (used[from])
        throw std::invalid_argument("point " + std::to_string(from + 1) +
                                    " appears in two cycles");
      used[from] = 1;
      img[from] = to;
    }
    skip_ws();
  }
  return Perm(std::move(img));
}

}  // namespace nfc
