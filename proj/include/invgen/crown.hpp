#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "invgen/builder.hpp"
#include "invgen/common.hpp"
#include "invgen/fp.hpp"
#include "invgen/igen.hpp"
#include "invgen/semidirect.hpp"

namespace invgen {

// The centralizer algebra End_K(A) of an irreducible matrix group, with its
// field structure verified explicitly.
struct EndField {
  int p = 0;
  int n = 0;
  int e = 0;                      // dimension over F_p
  std::vector<FpMatrix> basis;    // e matrices, first is the identity
  std::vector<FpMatrix> elements; // all p^e members, 0 first

  // apply a basis element to a row vector
  std::vector<int> apply(int basis_idx, const std::vector<int>& v) const {
    return apply_row(v, basis[static_cast<std::size_t>(basis_idx)]);
  }
};

inline EndField end_algebra(const std::vector<FpMatrix>& k_gens, int p, int n) {
  if (!is_irreducible(k_gens, p, n))
    throw InputError("end_algebra: the action is reducible");
  // solve X M = M X for all generators M: n^2 unknowns, one constraint per
  // (generator, i, j): (XM - MX)_{ij} = sum_k X_ik M_kj - M_ik X_kj = 0
  int vars = n * n;
  int n_constraints = static_cast<int>(k_gens.size()) * vars;
  FpMatrix big(p, vars, n_constraints);
  int col = 0;
  for (const FpMatrix& m : k_gens) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          big.at(i * n + k, col) = (big.at(i * n + k, col) + m.at(k, j)) % p;
          big.at(k * n + j, col) = (big.at(k * n + j, col) + p - m.at(i, k) % p) % p;
        }
        ++col;
      }
  }
  RowSpace kernel = row_kernel(big);
  EndField f;
  f.p = p;
  f.n = n;
  f.e = kernel.dim();
  // canonical basis: identity first, then the echelon rows
  std::vector<FpMatrix> basis;
  FpMatrix id = FpMatrix::identity(p, n);
  basis.push_back(id);
  for (const auto& row : kernel.basis()) {
    FpMatrix x(p, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) x.at(i, j) = row[static_cast<std::size_t>(i * n + j)];
    if (!(x == id)) basis.push_back(x);
  }
  // reduce to an F_p-basis containing the identity
  {
    RowSpace span(p, vars);
    std::vector<FpMatrix> reduced;
    for (const auto& x : basis) {
      std::vector<int> flat(x.a.begin(), x.a.end());
      if (span.insert(flat)) reduced.push_back(x);
    }
    f.basis = reduced;
    f.e = static_cast<int>(reduced.size());
  }
  if (f.e == 0 || n % f.e != 0)
    throw InputError("end_algebra: commutant dimension does not divide n");
  // enumerate all elements and verify the field axioms: commutative, closed,
  // every nonzero element invertible
  std::vector<int> coeff(static_cast<std::size_t>(f.e), 0);
  while (true) {
    FpMatrix x(p, n, n);
    for (int i = 0; i < f.e; ++i)
      if (coeff[static_cast<std::size_t>(i)])
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c)
            x.at(r, c) = (x.at(r, c) + coeff[static_cast<std::size_t>(i)] * f.basis[static_cast<std::size_t>(i)].at(r, c)) % p;
    f.elements.push_back(x);
    int k = f.e;
    while (k > 0 && coeff[static_cast<std::size_t>(k - 1)] == p - 1) coeff[static_cast<std::size_t>(--k)] = 0;
    if (k == 0) break;
    ++coeff[static_cast<std::size_t>(k - 1)];
  }
  RowSpace span(p, vars);
  for (const auto& b : f.basis) span.insert(std::vector<int>(b.a.begin(), b.a.end()));
  for (std::size_t i = 0; i < f.elements.size(); ++i) {
    const FpMatrix& x = f.elements[i];
    bool zero = std::all_of(x.a.begin(), x.a.end(), [](int v) { return v == 0; });
    if (!zero && !matrix_invertible(x))
      throw InputError("end_algebra: commutant has zero divisors (not a field)");
    for (std::size_t j = i; j < f.elements.size(); ++j) {
      const FpMatrix& y = f.elements[j];
      FpMatrix xy = x * y;
      if (!(xy == y * x)) throw InputError("end_algebra: commutant is not commutative");
      if (!span.contains(std::vector<int>(xy.a.begin(), xy.a.end())))
        throw InputError("end_algebra: commutant is not closed under products");
    }
  }
  return f;
}

inline RowSpace commutator_space(const FpMatrix& y) {
  return row_image(y - FpMatrix::identity(y.p, y.rows));
}

inline RowSpace fixed_space(const FpMatrix& y) {
  return row_kernel(y - FpMatrix::identity(y.p, y.rows));
}

// Input of the matrix criterion: K acting irreducibly and faithfully on
// A = F_p^n, column elements y_i with translation parts w_i in A^delta.
struct CrownInstance {
  int p = 0;
  int n = 0;
  int delta = 0;
  std::vector<FpMatrix> k_gens;
  std::vector<FpMatrix> y;                     // t elements of K
  std::vector<std::vector<std::vector<int>>> w;  // w[i] is delta rows of length n

  int t() const { return static_cast<int>(y.size()); }

  void validate(long k_cap = 100000) const {
    if (delta < 0) throw InputError("CrownInstance: delta must be >= 0");
    if (y.size() != w.size()) throw InputError("CrownInstance: y and w lists differ in length");
    auto elems = matrix_group_elements(k_gens, p, n, k_cap);
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i].a] = static_cast<int>(i);
    for (const auto& yi : y)
      if (!index.count(yi.a)) throw InputError("CrownInstance: y element outside <K_gens>");
    for (const auto& wi : w) {
      if (static_cast<int>(wi.size()) != delta) throw InputError("CrownInstance: w block has wrong depth");
      for (const auto& row : wi)
        if (static_cast<int>(row.size()) != n) throw InputError("CrownInstance: w row has wrong width");
    }
    if (!is_irreducible(k_gens, p, n)) throw InputError("CrownInstance: the action is reducible");
    // faithfulness is automatic for matrix groups
  }
};

// the acting group K as a permutation group on the p^n vectors of A
inline PermGroup k_as_perm_group(const std::vector<FpMatrix>& k_gens, int p, int n) {
  AffineTag tag;
  tag.p = p;
  tag.dim = n;
  long npts = tag.num_points();
  std::vector<Perm> gens;
  for (const auto& m : k_gens) gens.push_back(tag.matrix_perm(m));
  if (gens.empty()) return PermGroup::trivial(static_cast<int>(npts));
  return PermGroup(static_cast<int>(npts), gens);
}

// checks <y_1,...,y_t>_I = K with honest group machinery
inline bool y_list_invariably_generates(const CrownInstance& inst) {
  PermGroup kperm = k_as_perm_group(inst.k_gens, inst.p, inst.n);
  if (kperm.is_trivial()) return true;
  AffineTag tag;
  tag.p = inst.p;
  tag.dim = inst.n;
  IGenContext ctx = IGenContext::build(kperm);
  std::vector<Perm> xs;
  for (const auto& yi : inst.y) xs.push_back(tag.matrix_perm(yi));
  return ctx.igen_check(xs);
}

// Prepared data for the matrix criterion: the End field and the echelonized
// block space B = {(u_1..u_t) : u_i in [y_i, A]}.
struct CrownCheckData {
  EndField f;
  RowSpace b;
  int width = 0;

  CrownCheckData(const CrownInstance& inst)
      : f(end_algebra(inst.k_gens, inst.p, inst.n)), b(inst.p, inst.n * inst.t()) {
    int t = inst.t();
    width = inst.n * t;
    for (int i = 0; i < t; ++i) {
      RowSpace ci = commutator_space(inst.y[static_cast<std::size_t>(i)]);
      for (const auto& v : ci.basis()) {
        std::vector<int> block(static_cast<std::size_t>(width), 0);
        for (int j = 0; j < inst.n; ++j) block[static_cast<std::size_t>(i * inst.n + j)] = v[static_cast<std::size_t>(j)];
        b.insert(std::move(block));
      }
    }
    // B must be an F-subspace; broken input would violate the theory
    for (const auto& base : b.basis())
      for (int k = 0; k < f.e; ++k)
        if (!b.contains(apply_f(base, inst.n, k)))
          throw InputError("igen_matrix_check: B is not F-closed (internal)");
  }

  std::vector<int> apply_f(const std::vector<int>& row, int n, int k) const {
    std::vector<int> img(static_cast<std::size_t>(width));
    for (int i = 0; i * n < width; ++i) {
      std::vector<int> seg(row.begin() + i * n, row.begin() + (i + 1) * n);
      auto mapped = f.apply(k, seg);
      for (int c = 0; c < n; ++c) img[static_cast<std::size_t>(i * n + c)] = mapped[static_cast<std::size_t>(c)];
    }
    return img;
  }

  // F-linear independence of the delta rows of W modulo B, with F_p ranks:
  // e*delta + dim B = dim(F-span of rows + B)
  bool check(const CrownInstance& inst) const {
    if (inst.delta == 0) return true;
    int t = inst.t();
    RowSpace total = b;
    for (int j = 0; j < inst.delta; ++j) {
      std::vector<int> row(static_cast<std::size_t>(width));
      for (int i = 0; i < t; ++i)
        for (int c = 0; c < inst.n; ++c)
          row[static_cast<std::size_t>(i * inst.n + c)] = inst.w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
      for (int k = 0; k < f.e; ++k) total.insert(apply_f(row, inst.n, k));
    }
    return total.dim() == f.e * inst.delta + b.dim();
  }
};

inline bool igen_matrix_check(const CrownInstance& inst, bool assume_y_igen = false) {
  inst.validate();
  if (!assume_y_igen && !y_list_invariably_generates(inst))
    throw InputError("igen_matrix_check: the y-list does not invariably generate K");
  if (inst.delta == 0) return true;
  return CrownCheckData(inst).check(inst);
}

// existence of w-parts: delta <= sum_i dim_F C_A(y_i)
inline bool exists_w_check(const CrownInstance& inst, bool assume_y_igen = false) {
  inst.validate();
  if (!assume_y_igen && !y_list_invariably_generates(inst))
    throw InputError("exists_w_check: the y-list does not invariably generate K");
  EndField f = end_algebra(inst.k_gens, inst.p, inst.n);
  long total = 0;
  for (const auto& yi : inst.y) {
    int d = fixed_space(yi).dim();
    if (d % f.e != 0) throw InputError("exists_w_check: fixed space is not F-linear (internal)");
    total += d / f.e;
  }
  return inst.delta <= total;
}

// ------- the group oracle -------

// builds A^delta x| K as a tagged permutation group (block-diagonal action)
inline PermGroup crown_instance_group(const CrownInstance& inst, long order_cap) {
  int d = inst.n * std::max(inst.delta, 1);
  std::vector<std::pair<FpMatrix, std::string>> gens;
  int blocks = std::max(inst.delta, 1);
  for (std::size_t gi = 0; gi < inst.k_gens.size(); ++gi) {
    FpMatrix m(inst.p, d, d);
    for (int b = 0; b < blocks; ++b)
      for (int r = 0; r < inst.n; ++r)
        for (int c = 0; c < inst.n; ++c)
          m.at(b * inst.n + r, b * inst.n + c) = inst.k_gens[gi].at(r, c);
    gens.emplace_back(std::move(m), "k" + std::to_string(gi));
  }
  long pts = 1;
  for (int i = 0; i < d; ++i) pts *= inst.p;
  auto kelems = matrix_group_elements(inst.k_gens, inst.p, inst.n, order_cap);
  if (pts > order_cap / std::max<long>(1, static_cast<long>(kelems.size())))
    throw BudgetError("crown oracle: group order exceeds the oracle cap");
  return make_affine_semidirect(inst.p, d, std::move(gens));
}

struct OracleResult {
  bool matrix_verdict = false;
  bool group_verdict = false;
  bool agree = false;
};

// independent validation: build the permutation group, form the elements
// y_i * w_i, and ask the generic invariable-generation machinery
inline OracleResult oracle_crosscheck(const CrownInstance& inst, long order_cap = 20000) {
  inst.validate();
  if (!y_list_invariably_generates(inst))
    throw InputError("oracle_crosscheck: the y-list does not invariably generate K");
  OracleResult out;
  out.matrix_verdict = igen_matrix_check(inst, true);
  if (inst.delta == 0) {
    // the group is K itself; the y-list invariably generates by precondition
    out.group_verdict = true;
    out.agree = out.matrix_verdict == out.group_verdict;
    return out;
  }
  PermGroup g = crown_instance_group(inst, order_cap);
  const AffineTag& tag = *g.affine_tag;
  IGenContext ctx = IGenContext::build(g);
  std::vector<Perm> xs;
  int d = inst.n * inst.delta;
  for (int i = 0; i < inst.t(); ++i) {
    FpMatrix m(inst.p, d, d);
    for (int b = 0; b < inst.delta; ++b)
      for (int r = 0; r < inst.n; ++r)
        for (int c = 0; c < inst.n; ++c)
          m.at(b * inst.n + r, b * inst.n + c) = inst.y[static_cast<std::size_t>(i)].at(r, c);
    std::vector<int> v(static_cast<std::size_t>(d));
    for (int b = 0; b < inst.delta; ++b)
      for (int c = 0; c < inst.n; ++c)
        v[static_cast<std::size_t>(b * inst.n + c)] = inst.w[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)][static_cast<std::size_t>(c)];
    xs.push_back(tag.affine_perm(v, m));
  }
  out.group_verdict = ctx.igen_check(xs);
  out.agree = out.matrix_verdict == out.group_verdict;
  return out;
}

// exhaustive w-enumeration companion of exists_w_check
inline bool exists_w_exhaustive(const CrownInstance& inst) {
  CrownCheckData data(inst);
  long wcodes = 1;
  for (int i = 0; i < inst.n * inst.delta; ++i) wcodes *= inst.p;
  long space = 1;
  for (int i = 0; i < inst.t(); ++i) space *= wcodes;
  CrownInstance probe = inst;
  for (long cand = 0; cand < space; ++cand) {
    long c = cand;
    for (int i = 0; i < inst.t(); ++i) {
      long code = c % wcodes;
      c /= wcodes;
      for (int b = 0; b < inst.delta; ++b)
        for (int col = 0; col < inst.n; ++col) {
          probe.w[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)][static_cast<std::size_t>(col)] =
              static_cast<int>(code % inst.p);
          code /= inst.p;
        }
    }
    if (data.check(probe)) return true;
  }
  return false;
}

// ------- text format -------
// header: crown p n delta t
// then:   kgen NAME     (n rows of n entries each)
//         y             (t blocks, n rows each)
//         w             (t blocks, delta rows of n entries each)

inline CrownInstance parse_crown_file(const std::string& text) {
  std::istringstream in(text);
  std::string kw;
  CrownInstance inst;
  int t = 0;
  in >> kw >> inst.p >> inst.n >> inst.delta >> t;
  if (kw != "crown" || inst.p < 2 || inst.n < 1 || inst.delta < 0 || t < 1)
    throw InputError("crown file: expected header 'crown p n delta t'");
  auto read_matrix = [&](int rows, int cols) {
    FpMatrix m(inst.p, rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        long v;
        if (!(in >> v)) throw InputError("crown file: missing matrix entries");
        m.at(i, j) = static_cast<int>(((v % inst.p) + inst.p) % inst.p);
      }
    return m;
  };
  while (in >> kw) {
    if (kw == "kgen") {
      std::string name;
      in >> name;
      inst.k_gens.push_back(read_matrix(inst.n, inst.n));
    } else if (kw == "y") {
      inst.y.push_back(read_matrix(inst.n, inst.n));
    } else if (kw == "w") {
      std::vector<std::vector<int>> block;
      FpMatrix m = read_matrix(inst.delta, inst.n);
      for (int r = 0; r < inst.delta; ++r) {
        std::vector<int> row(static_cast<std::size_t>(inst.n));
        for (int c = 0; c < inst.n; ++c) row[static_cast<std::size_t>(c)] = m.at(r, c);
        block.push_back(std::move(row));
      }
      inst.w.push_back(std::move(block));
    } else {
      throw InputError("crown file: unknown block '" + kw + "'");
    }
  }
  if (static_cast<int>(inst.y.size()) != t || static_cast<int>(inst.w.size()) != t)
    throw InputError("crown file: expected " + std::to_string(t) + " y blocks and w blocks");
  inst.validate();
  return inst;
}

inline std::string print_crown_file(const CrownInstance& inst) {
  std::ostringstream out;
  out << "crown " << inst.p << " " << inst.n << " " << inst.delta << " " << inst.t() << "\n";
  auto put_matrix = [&](const FpMatrix& m) {
    for (int i = 0; i < m.rows; ++i) {
      for (int j = 0; j < m.cols; ++j) out << m.at(i, j) << (j + 1 == m.cols ? "" : " ");
      out << "\n";
    }
  };
  for (std::size_t i = 0; i < inst.k_gens.size(); ++i) {
    out << "kgen k" << i << "\n";
    put_matrix(inst.k_gens[i]);
  }
  for (const auto& yi : inst.y) {
    out << "y\n";
    put_matrix(yi);
  }
  for (const auto& wi : inst.w) {
    out << "w\n";
    for (int r = 0; r < inst.delta; ++r) {
      for (int c = 0; c < inst.n; ++c) out << wi[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] << (c + 1 == inst.n ? "" : " ");
      out << "\n";
    }
  }
  return out.str();
}

// ------- seeded random instances -------

// catalog of irreducible acting groups with small order per (p, n)
inline std::vector<std::vector<FpMatrix>> crown_catalog(int p, int n) {
  std::vector<std::vector<FpMatrix>> out;
  if (n == 1) {
    // subgroups of F_p^*: one generator per element order
    for (int g = 2; g < p; ++g) {
      FpMatrix m(p, 1, 1);
      m.at(0, 0) = g;
      out.push_back({m});
    }
    if (out.empty()) out.push_back({});  // p = 2: trivial K on F_2
    return out;
  }
  // n == 2: powers of a Singer generator that stay irreducible, plus Q8 for
  // odd p and the full GL(2,2) for p = 2
  FpMatrix singer(p, 2, 2);
  bool have_singer = false;
  for (int b = 0; b < p && !have_singer; ++b)
    for (int a = 0; a < p && !have_singer; ++a) {
      // companion matrix of x^2 - a x - b
      FpMatrix m(p, 2, 2);
      m.at(0, 1) = 1;
      m.at(1, 0) = b % p;
      m.at(1, 1) = a % p;
      if (!matrix_invertible(m)) continue;
      // order p^2 - 1 means primitive
      long ord = 1;
      FpMatrix x = m;
      while (!x.is_identity() && ord <= p * p) {
        x = x * m;
        ++ord;
      }
      if (ord == static_cast<long>(p) * p - 1) {
        singer = m;
        have_singer = true;
      }
    }
  if (have_singer) {
    long full = static_cast<long>(p) * p - 1;
    for (long d = 2; d <= full; ++d) {
      if (full % d != 0) continue;
      // power of order d
      FpMatrix x = FpMatrix::identity(p, 2);
      for (long i = 0; i < full / d; ++i) x = x * singer;
      if (d <= 24 && is_irreducible({x}, p, 2)) out.push_back({x});
    }
  }
  if (p % 2 == 1) {
    auto [mi, mj] = q8_matrices(p);
    out.push_back({mi, mj});
  }
  if (p == 2) {
    // GL(2,2) = S3
    FpMatrix a(2, 2, 2), b(2, 2, 2);
    a.at(0, 1) = 1;
    a.at(1, 0) = 1;
    a.at(1, 1) = 1;  // order 3
    b.at(0, 1) = 1;
    b.at(1, 0) = 1;  // swap
    out.push_back({a, b});
  }
  if (p == 3) {
    // SL(2,3) = Q8 : C3
    auto [mi, mj] = q8_matrices(3);
    FpMatrix c(3, 2, 2);
    c.at(0, 0) = 1;
    c.at(0, 1) = 1;
    c.at(1, 1) = 1;
    out.push_back({mi, mj, c});
  }
  return out;
}

inline CrownInstance random_crown_instance(Rng& rng, long order_cap = 20000) {
  static const int primes[3] = {2, 3, 5};
  while (true) {
    int p = primes[rng.below(3)];
    int n = 1 + static_cast<int>(rng.below(2));
    int delta = 1 + static_cast<int>(rng.below(3));
    auto catalog = crown_catalog(p, n);
    auto gens = catalog[rng.below(catalog.size())];
    auto kelems = matrix_group_elements(gens, p, n, 1000);
    if (static_cast<long>(kelems.size()) > 24) continue;
    long pts = 1;
    for (int i = 0; i < n * delta; ++i) pts *= p;
    if (pts * static_cast<long>(kelems.size()) > order_cap) continue;
    int t = 1 + static_cast<int>(rng.below(3));
    CrownInstance inst;
    inst.p = p;
    inst.n = n;
    inst.delta = delta;
    inst.k_gens = gens;
    for (int i = 0; i < t; ++i)
      inst.y.push_back(kelems[rng.below(kelems.size())]);
    if (!y_list_invariably_generates(inst)) continue;
    for (int i = 0; i < t; ++i) {
      std::vector<std::vector<int>> block;
      for (int b = 0; b < delta; ++b) {
        std::vector<int> row(static_cast<std::size_t>(n));
        for (int c = 0; c < n; ++c) row[static_cast<std::size_t>(c)] = static_cast<int>(rng.below(static_cast<std::uint64_t>(p)));
        block.push_back(std::move(row));
      }
      inst.w.push_back(std::move(block));
    }
    return inst;
  }
}

}  // namespace invgen
