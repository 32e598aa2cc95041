#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "invgen/common.hpp"

namespace invgen {

// A permutation of {0..degree-1} stored as an image table.  Points act on
// the right: (x)(ab) = ((x)a)b, so compose(a,b) applies a first.  Printed
// cycle notation is 1-based.
class Perm {
 public:
  Perm() = default;
  explicit Perm(int degree) : images_(static_cast<std::size_t>(degree)) {
    if (degree < 1) throw InputError("Perm: degree must be >= 1");
    std::iota(images_.begin(), images_.end(), 0);
  }
  explicit Perm(std::vector<int> images) : images_(std::move(images)) {
    if (images_.empty()) throw InputError("Perm: degree must be >= 1");
    std::vector<char> seen(images_.size(), 0);
    for (int v : images_) {
      if (v < 0 || v >= static_cast<int>(images_.size()) || seen[static_cast<std::size_t>(v)])
        throw InputError("Perm: image table is not a bijection");
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }

  int degree() const { return static_cast<int>(images_.size()); }
  int operator[](int point) const { return images_[static_cast<std::size_t>(point)]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (images_[static_cast<std::size_t>(i)] != i) return false;
    return true;
  }

  bool operator==(const Perm& o) const { return images_ == o.images_; }
  bool operator!=(const Perm& o) const { return images_ != o.images_; }
  bool operator<(const Perm& o) const { return images_ < o.images_; }

  long order() const {
    // lcm of cycle lengths
    std::vector<char> seen(images_.size(), 0);
    long ord = 1;
    for (int i = 0; i < degree(); ++i) {
      if (seen[static_cast<std::size_t>(i)]) continue;
      long len = 0;
      int p = i;
      while (!seen[static_cast<std::size_t>(p)]) {
        seen[static_cast<std::size_t>(p)] = 1;
        p = images_[static_cast<std::size_t>(p)];
        ++len;
      }
      ord = std::lcm(ord, len);
    }
    return ord;
  }

  bool is_even() const {
    std::vector<char> seen(images_.size(), 0);
    int transpositions = 0;
    for (int i = 0; i < degree(); ++i) {
      if (seen[static_cast<std::size_t>(i)]) continue;
      int len = 0, p = i;
      while (!seen[static_cast<std::size_t>(p)]) {
        seen[static_cast<std::size_t>(p)] = 1;
        p = images_[static_cast<std::size_t>(p)];
        ++len;
      }
      transpositions += len - 1;
    }
    return transpositions % 2 == 0;
  }

 private:
  std::vector<int> images_;
};

inline Perm perm_compose(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw InputError("perm_compose: degree mismatch");
  std::vector<int> im(static_cast<std::size_t>(a.degree()));
  for (int i = 0; i < a.degree(); ++i) im[static_cast<std::size_t>(i)] = b[a[i]];
  return Perm(std::move(im));
}

inline Perm perm_inverse(const Perm& a) {
  std::vector<int> im(static_cast<std::size_t>(a.degree()));
  for (int i = 0; i < a.degree(); ++i) im[static_cast<std::size_t>(a[i])] = i;
  return Perm(std::move(im));
}

// g^-1 * x * g
inline Perm perm_conjugate(const Perm& x, const Perm& g) {
  if (x.degree() != g.degree()) throw InputError("perm_conjugate: degree mismatch");
  std::vector<int> im(static_cast<std::size_t>(x.degree()));
  for (int i = 0; i < x.degree(); ++i) im[static_cast<std::size_t>(g[i])] = g[x[i]];
  return Perm(std::move(im));
}

inline Perm perm_power(const Perm& a, long e) {
  Perm r(a.degree());
  Perm base = a;
  long ord = a.order();
  e %= ord;
  if (e < 0) e += ord;
  while (e > 0) {
    if (e & 1) r = perm_compose(r, base);
    base = perm_compose(base, base);
    e >>= 1;
  }
  return r;
}

// Parses cycle notation with 1-based points, e.g. "(1,2)(3,4)".  Whitespace
// is ignored and cycles need not be disjoint: the rightmost cycle is applied
// first.  The empty string denotes the identity.
inline Perm perm_parse(const std::string& text, int degree) {
  if (degree < 1) throw InputError("perm_parse: degree must be >= 1");
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw InputError("perm_parse: expected '(' at position " + std::to_string(i));
    ++i;
    std::vector<int> cycle;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw InputError("perm_parse: expected point at position " + std::to_string(i));
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        ++i;
      }
      if (v < 1 || v > degree)
        throw InputError("perm_parse: point " + std::to_string(v) + " out of range 1.." + std::to_string(degree));
      cycle.push_back(v - 1);
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        skip_ws();
      }
    }
    if (i >= text.size()) throw InputError("perm_parse: unterminated cycle");
    ++i;  // ')'
    for (std::size_t a = 0; a < cycle.size(); ++a)
      for (std::size_t b = a + 1; b < cycle.size(); ++b)
        if (cycle[a] == cycle[b]) throw InputError("perm_parse: repeated point inside a cycle");
    if (cycle.size() >= 2) cycles.push_back(std::move(cycle));
    skip_ws();
  }
  std::vector<int> im(static_cast<std::size_t>(degree));
  std::iota(im.begin(), im.end(), 0);
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    const auto& c = *it;
    // apply this cycle after what is already accumulated
    for (auto& v : im) {
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (v == c[k]) {
          v = c[(k + 1) % c.size()];
          break;
        }
      }
    }
  }
  // im now maps x through cycles right-to-left; points act on the right, so
  // the table above already is the product in application order.
  return Perm(std::move(im));
}

inline std::string perm_print(const Perm& a) {
  std::vector<char> seen(static_cast<std::size_t>(a.degree()), 0);
  std::ostringstream out;
  bool wrote = false;
  for (int i = 0; i < a.degree(); ++i) {
    if (seen[static_cast<std::size_t>(i)] || a[i] == i) {
      seen[static_cast<std::size_t>(i)] = 1;
      continue;
    }
    out << '(';
    int p = i;
    bool first = true;
    while (!seen[static_cast<std::size_t>(p)]) {
      seen[static_cast<std::size_t>(p)] = 1;
      if (!first) out << ',';
      out << (p + 1);
      first = false;
      p = a[p];
    }
    out << ')';
    wrote = true;
  }
  if (!wrote) return "()";
  return out.str();
}

}  // namespace invgen
