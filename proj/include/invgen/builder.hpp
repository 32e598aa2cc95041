#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "invgen/bsgs.hpp"
#include "invgen/common.hpp"
#include "invgen/fp.hpp"
#include "invgen/perm.hpp"

namespace invgen {

// Construction metadata for affine semidirect products V x| K acting on the
// p^dim affine points by (x)(v,k) = x*k + v.  V is the translation subgroup.
struct AffineTag {
  int p = 0;
  int dim = 0;
  std::vector<FpMatrix> k_gens;
  std::vector<std::string> k_labels;
  std::vector<FpMatrix> k_elements;  // full matrix group, identity first
  long k_order = 0;

  long vec_to_point(const std::vector<int>& v) const {
    long x = 0;
    for (int i = dim - 1; i >= 0; --i) x = x * p + v[static_cast<std::size_t>(i)];
    return x;
  }
  std::vector<int> point_to_vec(long x) const {
    std::vector<int> v(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
      v[static_cast<std::size_t>(i)] = static_cast<int>(x % p);
      x /= p;
    }
    return v;
  }
  long num_points() const {
    long n = 1;
    for (int i = 0; i < dim; ++i) n *= p;
    return n;
  }

  Perm translation_perm(const std::vector<int>& v) const {
    long n = num_points();
    std::vector<int> im(static_cast<std::size_t>(n));
    for (long x = 0; x < n; ++x) {
      auto w = point_to_vec(x);
      for (int i = 0; i < dim; ++i) w[static_cast<std::size_t>(i)] = (w[static_cast<std::size_t>(i)] + v[static_cast<std::size_t>(i)]) % p;
      im[static_cast<std::size_t>(x)] = static_cast<int>(vec_to_point(w));
    }
    return Perm(std::move(im));
  }

  Perm matrix_perm(const FpMatrix& k) const {
    long n = num_points();
    std::vector<int> im(static_cast<std::size_t>(n));
    for (long x = 0; x < n; ++x)
      im[static_cast<std::size_t>(x)] = static_cast<int>(vec_to_point(apply_row(point_to_vec(x), k)));
    return Perm(std::move(im));
  }

  Perm affine_perm(const std::vector<int>& v, const FpMatrix& k) const {
    return perm_compose(matrix_perm(k), translation_perm(v));
  }

  std::vector<Perm> translation_gens() const {
    std::vector<Perm> out;
    for (int i = 0; i < dim; ++i) {
      std::vector<int> e(static_cast<std::size_t>(dim), 0);
      e[static_cast<std::size_t>(i)] = 1;
      out.push_back(translation_perm(e));
    }
    return out;
  }

  // the acting group K as the permutations fixing the origin
  PermGroup k_group() const {
    std::vector<Perm> gens;
    for (const auto& m : k_gens) gens.push_back(matrix_perm(m));
    return PermGroup(static_cast<int>(num_points()), gens);
  }

  // the translation subgroup V
  PermGroup v_group() const { return PermGroup(static_cast<int>(num_points()), translation_gens()); }
};

inline PermGroup make_sym(int n) {
  if (n < 1) throw InputError("make_sym: n must be >= 1");
  std::vector<Perm> gens;
  if (n >= 2) {
    std::vector<int> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = i;
    std::swap(t[0], t[1]);
    gens.push_back(Perm(t));
  }
  if (n >= 3) {
    std::vector<int> c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = (i + 1) % n;
    gens.push_back(Perm(c));
  }
  return PermGroup(n, gens);
}

inline PermGroup make_alt(int n) {
  if (n < 1) throw InputError("make_alt: n must be >= 1");
  std::vector<Perm> gens;
  if (n >= 3) gens.push_back(perm_parse("(1,2,3)", n));
  if (n >= 4) {
    std::ostringstream cyc;
    if (n % 2 == 1) {
      cyc << '(';
      for (int i = 1; i <= n; ++i) cyc << i << (i == n ? ")" : ",");
    } else {
      cyc << '(';
      for (int i = 2; i <= n; ++i) cyc << i << (i == n ? ")" : ",");
    }
    gens.push_back(perm_parse(cyc.str(), n));
  }
  return PermGroup(n, gens);
}

inline PermGroup make_cyclic(int n) {
  if (n < 1) throw InputError("make_cyclic: n must be >= 1");
  if (n == 1) return PermGroup::trivial(1);
  std::vector<int> c(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = (i + 1) % n;
  return PermGroup(n, {Perm(c)});
}

// order is the group order 2n
inline PermGroup make_dihedral(int order) {
  if (order < 2 || order % 2 != 0) throw InputError("make_dihedral: order must be even and >= 2");
  int n = order / 2;
  if (n == 1) return make_cyclic(2);
  if (n == 2) {
    // V4, regular representation
    return PermGroup(4, {perm_parse("(1,2)(3,4)", 4), perm_parse("(1,3)(2,4)", 4)});
  }
  std::vector<int> rot(static_cast<std::size_t>(n)), refl(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rot[static_cast<std::size_t>(i)] = (i + 1) % n;
    refl[static_cast<std::size_t>(i)] = (n - i) % n;
  }
  return PermGroup(n, {Perm(rot), Perm(refl)});
}

// Dicyclic group of the given order 4m from the presentation
// x^(2m) = 1, y^2 = x^m, y^-1 x y = x^-1, realized by the right regular
// action on the 4m elements x^i y^j.
inline PermGroup make_dicyclic(int order) {
  if (order < 8 || order % 4 != 0) throw InputError("make_dicyclic: order must be a multiple of 4, >= 8");
  int m = order / 4;
  int two_m = 2 * m;
  auto idx = [&](int i, int j) { return i + two_m * j; };
  std::vector<int> mx(static_cast<std::size_t>(order)), my(static_cast<std::size_t>(order));
  for (int i = 0; i < two_m; ++i) {
    mx[static_cast<std::size_t>(idx(i, 0))] = idx((i + 1) % two_m, 0);
    mx[static_cast<std::size_t>(idx(i, 1))] = idx((i + two_m - 1) % two_m, 1);
    my[static_cast<std::size_t>(idx(i, 0))] = idx(i, 1);
    my[static_cast<std::size_t>(idx(i, 1))] = idx((i + m) % two_m, 0);
  }
  return PermGroup(order, {Perm(mx), Perm(my)});
}

inline PermGroup make_elem_abelian(int p, int k) {
  if (!is_prime(p)) throw InputError("make_elem_abelian: p must be prime");
  if (k < 1) throw InputError("make_elem_abelian: k must be >= 1");
  int degree = p * k;
  std::vector<Perm> gens;
  for (int b = 0; b < k; ++b) {
    std::vector<int> im(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) im[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < p; ++i) im[static_cast<std::size_t>(b * p + i)] = b * p + (i + 1) % p;
    gens.push_back(Perm(std::move(im)));
  }
  return PermGroup(degree, gens);
}

inline PermGroup make_direct_product(const PermGroup& g, const PermGroup& h) {
  int dg = g.degree(), dh = h.degree();
  int degree = dg + dh;
  std::vector<Perm> gens;
  for (const Perm& a : g.generators()) {
    std::vector<int> im(static_cast<std::size_t>(degree));
    for (int i = 0; i < dg; ++i) im[static_cast<std::size_t>(i)] = a[i];
    for (int i = 0; i < dh; ++i) im[static_cast<std::size_t>(dg + i)] = dg + i;
    gens.push_back(Perm(std::move(im)));
  }
  for (const Perm& b : h.generators()) {
    std::vector<int> im(static_cast<std::size_t>(degree));
    for (int i = 0; i < dg; ++i) im[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < dh; ++i) im[static_cast<std::size_t>(dg + i)] = dg + b[i];
    gens.push_back(Perm(std::move(im)));
  }
  return PermGroup(degree, gens);
}

inline PermGroup make_affine_semidirect(int p, int d,
                                        std::vector<std::pair<FpMatrix, std::string>> action_gens,
                                        long k_closure_cap = 100000) {
  if (!is_prime(p)) throw InputError("make_affine_semidirect: p must be prime");
  if (d < 1) throw InputError("make_affine_semidirect: dimension must be >= 1");
  auto tag = std::make_shared<AffineTag>();
  tag->p = p;
  tag->dim = d;
  for (auto& [m, label] : action_gens) {
    if (m.p != p || m.rows != d || m.cols != d)
      throw InputError("make_affine_semidirect: matrix shape/field mismatch");
    if (!matrix_invertible(m)) throw InputError("make_affine_semidirect: singular acting matrix");
    tag->k_gens.push_back(m);
    tag->k_labels.push_back(label);
  }
  tag->k_elements = matrix_group_elements(tag->k_gens, p, d, k_closure_cap);
  tag->k_order = static_cast<long>(tag->k_elements.size());

  std::vector<Perm> gens = tag->translation_gens();
  for (const auto& m : tag->k_gens) gens.push_back(tag->matrix_perm(m));
  PermGroup g(static_cast<int>(tag->num_points()), gens);
  u128 expected = 1;
  for (int i = 0; i < d; ++i) expected *= (u128)p;
  expected *= (u128)tag->k_order;
  if (g.order() != expected)
    throw InputError("make_affine_semidirect: order sanity check failed");
  g.affine_tag = tag;
  return g;
}

inline PermGroup make_psl2(long p) {
  if (!is_prime(p) || p < 5) throw InputError("make_psl2: p must be a prime >= 5");
  int n = static_cast<int>(p) + 1;  // points 0..p-1 and infinity = p
  int inf = static_cast<int>(p);
  std::vector<int> t(static_cast<std::size_t>(n)), s(static_cast<std::size_t>(n));
  for (int x = 0; x < static_cast<int>(p); ++x) t[static_cast<std::size_t>(x)] = (x + 1) % static_cast<int>(p);
  t[static_cast<std::size_t>(inf)] = inf;
  s[0] = inf;
  s[static_cast<std::size_t>(inf)] = 0;
  for (int x = 1; x < static_cast<int>(p); ++x)
    s[static_cast<std::size_t>(x)] = (static_cast<int>(p) - RowSpace::inverse_mod(x, static_cast<int>(p))) % static_cast<int>(p);
  PermGroup g(n, {Perm(t), Perm(s)});
  u128 expected = (u128)p * (u128)(p - 1) * (u128)(p + 1) / 2;
  if (g.order() != expected) throw InputError("make_psl2: order sanity check failed");
  return g;
}

// PSL(2,8) on the 9 points of the projective line over F8, with
// F8 = F2[t]/(t^3 = t + 1).  Shipped as a named construction; make_psl2 only
// takes prime parameters.
inline PermGroup make_l2_8() {
  auto gf_mul = [](int x, int y) {
    int r = 0;
    for (int i = 0; i < 3; ++i)
      if (y & (1 << i)) r ^= x << i;
    for (int b = 5; b >= 3; --b)
      if (r & (1 << b)) r ^= (0b1011 << (b - 3));
    return r;
  };
  auto gf_inv = [&](int x) {
    for (int y = 1; y < 8; ++y)
      if (gf_mul(x, y) == 1) return y;
    throw InputError("gf_inv(0)");
  };
  int inf = 8;
  std::vector<int> add1(9), mult(9), inv(9);
  for (int x = 0; x < 8; ++x) {
    add1[static_cast<std::size_t>(x)] = x ^ 1;
    mult[static_cast<std::size_t>(x)] = gf_mul(x, 2);
    inv[static_cast<std::size_t>(x)] = x == 0 ? inf : gf_inv(x);
  }
  add1[static_cast<std::size_t>(inf)] = inf;
  mult[static_cast<std::size_t>(inf)] = inf;
  inv[static_cast<std::size_t>(inf)] = 0;
  PermGroup g(9, {Perm(add1), Perm(mult), Perm(inv)});
  if (g.order() != (u128)504) throw InputError("make_l2_8: order sanity check failed");
  return g;
}

// The unique faithful irreducible F_p-representation of Q8 in dimension 2:
// phi(i) = [[a,b],[b,-a]], phi(j) = [[0,-1],[1,0]] with a^2 + b^2 = -1,
// (a,b) lexicographically least.  Valid for odd p.
inline std::pair<FpMatrix, FpMatrix> q8_matrices(int p) {
  if (!is_prime(p) || p == 2) throw InputError("q8_matrices: p must be an odd prime");
  int a = -1, b = -1;
  for (int x = 0; x < p && a < 0; ++x)
    for (int y = 0; y < p; ++y)
      if ((x * x + y * y) % p == (p - 1)) {
        a = x;
        b = y;
        break;
      }
  FpMatrix mi(p, 2, 2), mj(p, 2, 2);
  mi.at(0, 0) = a;
  mi.at(0, 1) = b;
  mi.at(1, 0) = b;
  mi.at(1, 1) = (p - a) % p;
  mj.at(0, 1) = p - 1;
  mj.at(1, 0) = 1;
  return {mi, mj};
}

inline PermGroup make_f_q8(int p) {
  auto [mi, mj] = q8_matrices(p);
  return make_affine_semidirect(p, 2, {{mi, "i"}, {mj, "j"}});
}

// F13^2 x| Dic12: x = diag(4, 10) of order 6, y = [[0,-1],[1,0]];
// y^2 = x^3 = -1 and x^y = x^-1, so <x,y> is dicyclic of order 12 acting
// irreducibly and fixed-point-freely.
inline PermGroup make_f13_dic12() {
  FpMatrix x(13, 2, 2), y(13, 2, 2);
  x.at(0, 0) = 4;
  x.at(1, 1) = 10;
  y.at(0, 1) = 12;
  y.at(1, 0) = 1;
  return make_affine_semidirect(13, 2, {{x, "x"}, {y, "y"}});
}

// scalar -1 on F3^2; the order-18 counterexample group C3^2 x| C2
inline PermGroup make_c3c3_c2() {
  FpMatrix m(3, 2, 2);
  m.at(0, 0) = 2;
  m.at(1, 1) = 2;
  return make_affine_semidirect(3, 2, {{m, "s"}});
}

namespace detail {
// F4 = F2[w]/(w^2+w+1) embedded in 2x2 F2 blocks, row-vector convention
inline FpMatrix f4_embed(int alpha) {
  // alpha in {0,1,2,3} coded as a0 + a1*w
  FpMatrix m(2, 2, 2);
  int a0 = alpha & 1, a1 = (alpha >> 1) & 1;
  // 1 -> identity, w -> [[0,1],[1,1]]
  m.at(0, 0) = a0;
  m.at(0, 1) = a1;
  m.at(1, 0) = a1;
  m.at(1, 1) = (a0 + a1) % 2;
  return m;
}

inline FpMatrix f4_block_matrix(int a, int b, int c, int d) {
  FpMatrix m(2, 4, 4);
  FpMatrix A = f4_embed(a), B = f4_embed(b), C = f4_embed(c), D = f4_embed(d);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      m.at(i, j) = A.at(i, j);
      m.at(i, j + 2) = B.at(i, j);
      m.at(i + 2, j) = C.at(i, j);
      m.at(i + 2, j + 2) = D.at(i, j);
    }
  return m;
}
}  // namespace detail

// ASL(2,4) = F4^2 x| SL(2,4), realized over F2 in dimension 4 with the
// F4-structure carried by 2x2 blocks.  Order 16 * 60 = 960.
inline PermGroup make_asl24() {
  // SL(2,4) = < [[1,1],[0,1]], [[w,0],[0,w^2]], [[0,1],[1,0]] >, w = 2
  auto u = detail::f4_block_matrix(1, 1, 0, 1);
  auto h = detail::f4_block_matrix(2, 0, 0, 3);
  auto s = detail::f4_block_matrix(0, 1, 1, 0);
  auto g = make_affine_semidirect(2, 4, {{u, "u"}, {h, "h"}, {s, "s"}});
  if (g.order() != (u128)960) throw InputError("make_asl24: order sanity check failed");
  return g;
}

// the three Alt(29) elements of the minimality lemma
inline std::vector<Perm> alt29_lemma_elements() {
  const int n = 29;
  Perm a = perm_parse("(2,3,4)(5,6,7)(8,9,10,11,12,13,14,15,16,17,18)(19,20,21,22,23,24,25,26,27,28,29)", n);
  Perm b = perm_parse("(1,2)(3,4)(5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25,26,27,28,29)", n);
  Perm c = perm_parse("(1,2)(3,4,5,6,7,8)(9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25,26,27,28,29)", n);
  return {a, b, c};
}

// ---------------------------------------------------------------------------
// group file format:
//   line 1:              degree N
//   subsequent lines:    name = (c1,c2,...)(...)
//   '#' starts a comment; blank lines ignored.
struct GroupFile {
  int degree = 0;
  std::vector<std::pair<std::string, Perm>> gens;
};

inline GroupFile parse_group_file_text(const std::string& text) {
  GroupFile out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_degree = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    auto end = line.find_last_not_of(" \t\r");
    line = line.substr(begin, end - begin + 1);
    if (!have_degree) {
      std::istringstream ls(line);
      std::string kw;
      long n = 0;
      ls >> kw >> n;
      if (kw != "degree" || n < 1 || !ls.eof())
        throw InputError("group file line " + std::to_string(lineno) + ": expected 'degree N'");
      out.degree = static_cast<int>(n);
      have_degree = true;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("group file line " + std::to_string(lineno) + ": expected 'name = cycles'");
    std::string name = line.substr(0, eq);
    auto nend = name.find_last_not_of(" \t");
    name = name.substr(0, nend == std::string::npos ? 0 : nend + 1);
    if (name.empty())
      throw InputError("group file line " + std::to_string(lineno) + ": empty generator name");
    std::string cycles = line.substr(eq + 1);
    try {
      Perm p = cycles.find('(') == std::string::npos && cycles.find_first_not_of(" \t") == std::string::npos
                   ? Perm(out.degree)
                   : perm_parse(cycles, out.degree);
      out.gens.emplace_back(name, std::move(p));
    } catch (const InputError& e) {
      throw InputError("group file line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_degree) throw InputError("group file: missing 'degree N' line");
  return out;
}

inline PermGroup parse_group_file(const std::string& text) {
  GroupFile f = parse_group_file_text(text);
  std::vector<Perm> gens;
  for (auto& [name, p] : f.gens) gens.push_back(p);
  return PermGroup(f.degree, gens);
}

inline std::string print_group_file(const GroupFile& f) {
  std::ostringstream out;
  out << "degree " << f.degree << "\n";
  for (const auto& [name, p] : f.gens) out << name << " = " << perm_print(p) << "\n";
  return out.str();
}

inline std::string print_group_file(const PermGroup& g) {
  GroupFile f;
  f.degree = g.degree();
  int i = 0;
  for (const Perm& p : g.generators()) f.gens.emplace_back("g" + std::to_string(i++), p);
  return print_group_file(f);
}

// affine file format:
//   line 1:  affine p d
//   then for each acting generator:  'gen NAME' followed by d rows of d entries
inline PermGroup parse_affine_file(const std::string& text) {
  std::istringstream in(text);
  std::string kw;
  int p = 0, d = 0;
  in >> kw >> p >> d;
  if (kw != "affine" || p < 2 || d < 1) throw InputError("affine file: expected header 'affine p d'");
  std::vector<std::pair<FpMatrix, std::string>> gens;
  while (in >> kw) {
    if (kw == "#") {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (kw != "gen") throw InputError("affine file: expected 'gen NAME'");
    std::string name;
    in >> name;
    FpMatrix m(p, d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        long v;
        if (!(in >> v)) throw InputError("affine file: matrix entries missing for " + name);
        m.at(i, j) = static_cast<int>(((v % p) + p) % p);
      }
    gens.emplace_back(std::move(m), name);
  }
  if (gens.empty()) throw InputError("affine file: no acting generators");
  return make_affine_semidirect(p, d, std::move(gens));
}

// named constructions used by tests and the CLI
inline PermGroup make_builtin(const std::string& name) {
  if (name == "q8") return make_dicyclic(8);
  if (name == "c3c3xc2") return make_c3c3_c2();
  if (name == "f3f3_q8") return make_f_q8(3);
  if (name == "f5f5_q8") return make_f_q8(5);
  if (name == "f13f13_dic12") return make_f13_dic12();
  if (name == "asl2_4") return make_asl24();
  if (name == "l2_8") return make_l2_8();
  if (name == "alt29_lemma") return PermGroup(29, alt29_lemma_elements());
  throw InputError("unknown builtin group: " + name);
}

}  // namespace invgen
