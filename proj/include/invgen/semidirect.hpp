#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "invgen/builder.hpp"
#include "invgen/common.hpp"
#include "invgen/fp.hpp"
#include "invgen/lattice.hpp"

namespace invgen {

// All K-invariant subspaces of F_p^d, enumerated by spinning seed vectors
// over existing submodules.  Returned in increasing dimension order with the
// zero space first and the full space last.
inline std::vector<RowSpace> all_submodules(const std::vector<FpMatrix>& k_gens, int p, int d) {
  std::vector<RowSpace> out;
  std::map<std::vector<std::vector<int>>, int> seen;
  RowSpace zero(p, d);
  seen[zero.basis()] = 0;
  out.push_back(zero);
  long total = 1;
  for (int i = 0; i < d; ++i) total *= p;
  for (std::size_t qi = 0; qi < out.size(); ++qi) {
    RowSpace cur = out[qi];
    for (long code = 1; code < total; ++code) {
      std::vector<int> v(static_cast<std::size_t>(d));
      long c = code;
      for (int i = 0; i < d; ++i) {
        v[static_cast<std::size_t>(i)] = static_cast<int>(c % p);
        c /= p;
      }
      if (cur.contains(v)) continue;
      std::vector<std::vector<int>> seeds = cur.basis();
      seeds.push_back(v);
      RowSpace next = spin(seeds, k_gens, p, d);
      if (seen.emplace(next.basis(), static_cast<int>(out.size())).second) out.push_back(std::move(next));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const RowSpace& a, const RowSpace& b) { return a.dim() != b.dim() ? a.dim() < b.dim() : a.basis() < b.basis(); });
  return out;
}

inline bool submodule_contains(const RowSpace& big, const RowSpace& small) {
  for (const auto& v : small.basis())
    if (!big.contains(v)) return false;
  return true;
}

inline std::vector<RowSpace> maximal_submodules(const std::vector<RowSpace>& all, int d) {
  std::vector<RowSpace> out;
  for (const auto& w : all) {
    if (w.dim() == d) continue;
    bool maximal = true;
    for (const auto& x : all) {
      if (x.dim() <= w.dim() || x.dim() == d) continue;
      if (submodule_contains(x, w)) { maximal = false; break; }
    }
    if (maximal) out.push_back(w);
  }
  return out;
}

// quotient module V/W presented on the free (non-pivot) coordinates of W's
// echelon basis
struct QuotientModule {
  int p = 0;
  int dim = 0;                  // dim V/W
  std::vector<int> free_cols;   // coordinates carrying the quotient
  RowSpace w;                   // the submodule being factored out
  std::vector<FpMatrix> action; // induced matrices of the K generators

  explicit QuotientModule(const RowSpace& w_, const std::vector<FpMatrix>& k_gens, int d)
      : p(w_.p()), w(w_) {
    std::vector<char> pivot(static_cast<std::size_t>(d), 0);
    for (const auto& row : w.basis())
      for (int j = 0; j < d; ++j)
        if (row[static_cast<std::size_t>(j)] != 0) { pivot[static_cast<std::size_t>(j)] = 1; break; }
    for (int j = 0; j < d; ++j)
      if (!pivot[static_cast<std::size_t>(j)]) free_cols.push_back(j);
    dim = static_cast<int>(free_cols.size());
    for (const auto& m : k_gens) {
      FpMatrix q(p, dim, dim);
      for (int i = 0; i < dim; ++i) {
        std::vector<int> e(static_cast<std::size_t>(d), 0);
        e[static_cast<std::size_t>(free_cols[static_cast<std::size_t>(i)])] = 1;
        auto img = project(apply_row(e, m));
        for (int j = 0; j < dim; ++j) q.at(i, j) = img[static_cast<std::size_t>(j)];
      }
      action.push_back(std::move(q));
    }
  }

  // coordinates of v + W
  std::vector<int> project(const std::vector<int>& v) const {
    auto r = w.reduce(v);
    std::vector<int> out(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j) out[static_cast<std::size_t>(j)] = r[static_cast<std::size_t>(free_cols[static_cast<std::size_t>(j)])];
    return out;
  }

  // canonical section A' -> V (zero on pivot coordinates)
  std::vector<int> lift(const std::vector<int>& bar, int d) const {
    std::vector<int> out(static_cast<std::size_t>(d), 0);
    for (int j = 0; j < dim; ++j) out[static_cast<std::size_t>(free_cols[static_cast<std::size_t>(j)])] = bar[static_cast<std::size_t>(j)];
    return out;
  }
};

namespace detail {

// index-level multiplication table for the matrix group K
struct KTable {
  int size = 0;
  std::vector<int> mul;
  std::vector<int> inv;

  explicit KTable(const std::vector<FpMatrix>& elems) {
    size = static_cast<int>(elems.size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < size; ++i) index[elems[static_cast<std::size_t>(i)].a] = i;
    mul.assign(static_cast<std::size_t>(size) * size, -1);
    inv.assign(static_cast<std::size_t>(size), -1);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) {
        int k = index.at((elems[static_cast<std::size_t>(i)] * elems[static_cast<std::size_t>(j)]).a);
        mul[static_cast<std::size_t>(i) * size + j] = k;
        if (k == 0) inv[static_cast<std::size_t>(i)] = j;
      }
  }

  int times(int a, int b) const { return mul[static_cast<std::size_t>(a) * size + b]; }
};

// smallest generating tuple of K by index order: try pairs, then triples,
// then give up and use everything
inline std::vector<int> reduced_generators(const KTable& kt) {
  int n = kt.size;
  if (n == 1) return {};
  auto closure_size = [&](const std::vector<int>& gens) {
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    std::vector<int> work{0};
    in[0] = 1;
    for (std::size_t qi = 0; qi < work.size(); ++qi)
      for (int g : gens) {
        int t = kt.times(work[qi], g);
        if (!in[static_cast<std::size_t>(t)]) {
          in[static_cast<std::size_t>(t)] = 1;
          work.push_back(t);
        }
      }
    return static_cast<int>(work.size());
  };
  for (int a = 1; a < n; ++a)
    if (closure_size({a}) == n) return {a};
  for (int a = 1; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (closure_size({a, b}) == n) return {a, b};
  for (int a = 1; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        if (closure_size({a, b, c}) == n) return {a, b, c};
  std::vector<int> all;
  for (int a = 1; a < n; ++a) all.push_back(a);
  return all;
}

// element of the quotient affine group (V/W) x| K
struct AffElt {
  int vec;  // base-p code over the quotient coordinates
  int k;
  bool operator<(const AffElt& o) const { return vec != o.vec ? vec < o.vec : k < o.k; }
  bool operator==(const AffElt& o) const { return vec == o.vec && k == o.k; }
};

struct AffArith {
  int p, dim;
  long codes;
  const KTable& kt;
  std::vector<std::vector<int>> act;  // act[k][code] = code of vector * M_k

  AffArith(int p_, int dim_, const KTable& kt_, const std::vector<FpMatrix>& k_mats)
      : p(p_), dim(dim_), kt(kt_) {
    codes = 1;
    for (int i = 0; i < dim; ++i) codes *= p;
    act.resize(k_mats.size());
    for (std::size_t k = 0; k < k_mats.size(); ++k) {
      act[k].resize(static_cast<std::size_t>(codes));
      for (long c = 0; c < codes; ++c) act[k][static_cast<std::size_t>(c)] = encode(apply_row(decode(c), k_mats[k]));
    }
  }

  std::vector<int> decode(long code) const {
    std::vector<int> v(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
      v[static_cast<std::size_t>(i)] = static_cast<int>(code % p);
      code /= p;
    }
    return v;
  }
  int encode(const std::vector<int>& v) const {
    long c = 0;
    for (int i = dim - 1; i >= 0; --i) c = c * p + v[static_cast<std::size_t>(i)];
    return static_cast<int>(c);
  }
  int add(int a, int b) const {
    auto va = decode(a), vb = decode(b);
    for (int i = 0; i < dim; ++i) va[static_cast<std::size_t>(i)] = (va[static_cast<std::size_t>(i)] + vb[static_cast<std::size_t>(i)]) % p;
    return encode(va);
  }
  // (v1,k1)(v2,k2) = (v1*M(k2) + v2, k1 k2)
  AffElt times(const AffElt& x, const AffElt& y) const {
    return AffElt{add(act[static_cast<std::size_t>(y.k)][static_cast<std::size_t>(x.vec)], y.vec), kt.times(x.k, y.k)};
  }
};

// closure of the candidate lifted generators, capped at |K|; empty result
// means the candidate is not a complement
inline std::vector<AffElt> complement_closure(const AffArith& ar, const std::vector<AffElt>& gens, int ksize) {
  std::set<AffElt> seen;
  std::vector<AffElt> work;
  AffElt id{0, 0};
  seen.insert(id);
  work.push_back(id);
  for (std::size_t qi = 0; qi < work.size(); ++qi) {
    for (const AffElt& g : gens) {
      AffElt t = ar.times(work[qi], g);
      if (seen.insert(t).second) {
        if (static_cast<int>(seen.size()) > ksize) return {};
        work.push_back(t);
      }
    }
  }
  if (static_cast<int>(seen.size()) != ksize) return {};
  return std::vector<AffElt>(seen.begin(), seen.end());
}

}  // namespace detail

// One conjugacy class of complements of A' = V/W in (V/W) x| K, given by the
// correction vectors attached to the reduced generators.
struct ComplementClass {
  std::vector<int> corrections;  // codes, one per reduced generator
  long conjugates = 1;
};

// Exhaustive correction-vector search for the complements of the module in
// module x| K, up to conjugacy.
inline std::vector<ComplementClass> find_complements(const detail::AffArith& ar,
                                                     const detail::KTable& kt,
                                                     const std::vector<int>& red_gens) {
  std::vector<ComplementClass> out;
  int r = static_cast<int>(red_gens.size());
  long space = 1;
  for (int i = 0; i < r; ++i) space *= ar.codes;
  std::set<std::vector<detail::AffElt>> seen_sets;
  for (long cand = 0; cand < space; ++cand) {
    long c = cand;
    std::vector<detail::AffElt> gens;
    std::vector<int> corr(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
      corr[static_cast<std::size_t>(i)] = static_cast<int>(c % ar.codes);
      c /= ar.codes;
      gens.push_back(detail::AffElt{corr[static_cast<std::size_t>(i)], red_gens[static_cast<std::size_t>(i)]});
    }
    auto closure = detail::complement_closure(ar, gens, kt.size);
    if (closure.empty() && kt.size > 1) continue;
    if (seen_sets.count(closure)) continue;
    // orbit under conjugation by the translations and the reduced generators
    std::vector<std::vector<detail::AffElt>> orbit{closure};
    seen_sets.insert(closure);
    std::vector<detail::AffElt> conj_gens;
    for (int i = 0; i < ar.dim; ++i) {
      std::vector<int> e(static_cast<std::size_t>(ar.dim), 0);
      e[static_cast<std::size_t>(i)] = 1;
      conj_gens.push_back(detail::AffElt{ar.encode(e), 0});
    }
    for (int g : red_gens) conj_gens.push_back(detail::AffElt{0, g});
    for (std::size_t qi = 0; qi < orbit.size(); ++qi) {
      for (const detail::AffElt& g : conj_gens) {
        // g^-1 h g for every h
        int kinv = kt.inv[static_cast<std::size_t>(g.k)];
        int vinv_part = ar.act[static_cast<std::size_t>(kinv)][static_cast<std::size_t>(g.vec)];
        // inverse of (v,k) is (-v*M(k^-1), k^-1)
        std::vector<int> neg = ar.decode(vinv_part);
        for (auto& x : neg) x = (ar.p - x) % ar.p;
        detail::AffElt ginv{ar.encode(neg), kinv};
        std::vector<detail::AffElt> img;
        for (const detail::AffElt& h : orbit[qi]) img.push_back(ar.times(ar.times(ginv, h), g));
        std::sort(img.begin(), img.end());
        if (seen_sets.insert(img).second) orbit.push_back(std::move(img));
      }
    }
    ComplementClass cc;
    cc.corrections = corr;
    cc.conjugates = static_cast<long>(orbit.size());
    out.push_back(std::move(cc));
  }
  return out;
}

// Maximal subgroups of an affine-tagged G = V x| K, up to conjugacy: the
// preimages of the maximal subgroups of K, plus, for every maximal
// K-submodule W < V, the preimages of the complements of V/W in G/W.
inline std::vector<SubgroupRecord> maximal_subgroups_semidirect(const PermGroup& g) {
  if (!g.affine_tag) throw InputError("maximal_subgroups_semidirect: group has no affine tag");
  const AffineTag& tag = *g.affine_tag;
  std::vector<SubgroupRecord> out;

  detail::KTable kt(tag.k_elements);
  // (i) preimages of the maximal subgroups of K
  if (tag.k_order > 1) {
    PermGroup kperm = tag.k_group();
    Lattice klat(kperm, default_config().lattice_budget);
    for (const SubgroupRecord& mk : klat.maximal_subgroups()) {
      SubgroupRecord r;
      r.gens = tag.translation_gens();
      for (const Perm& x : mk.gens) r.gens.push_back(x);
      r.order = mk.order * tag.num_points();
      r.conjugates = mk.conjugates;
      r.normal = mk.conjugates == 1;
      r.maximal = true;
      out.push_back(std::move(r));
    }
  }

  // (ii) complements over each maximal submodule
  auto submods = all_submodules(tag.k_gens, tag.p, tag.dim);
  auto maxw = maximal_submodules(submods, tag.dim);
  auto red = detail::reduced_generators(kt);
  for (const RowSpace& w : maxw) {
    QuotientModule qm(w, tag.k_elements, tag.dim);
    // induced matrices for every K element (reduced generators index into them)
    detail::AffArith ar(tag.p, qm.dim, kt, qm.action);
    for (const ComplementClass& cc : find_complements(ar, kt, red)) {
      SubgroupRecord r;
      for (const auto& row : w.basis()) r.gens.push_back(tag.translation_perm(row));
      for (std::size_t i = 0; i < red.size(); ++i) {
        auto bar = ar.decode(cc.corrections[i]);
        auto v = qm.lift(bar, tag.dim);
        r.gens.push_back(tag.affine_perm(v, tag.k_elements[static_cast<std::size_t>(red[i])]));
      }
      if (r.gens.empty()) r.gens.push_back(g.identity());
      long worder = 1;
      for (int i = 0; i < w.dim(); ++i) worder *= tag.p;
      r.order = worder * tag.k_order;
      r.conjugates = cc.conjugates;
      r.normal = cc.conjugates == 1 && maxw.size() == 1;
      r.maximal = true;
      out.push_back(std::move(r));
    }
  }
  return out;
}

// Route dispatch: semidirect-tag route when available, generic lattice
// otherwise.  The two routes agree; tests cross-check them on groups small
// enough for both.
inline std::vector<SubgroupRecord> maximal_subgroups(const PermGroup& g, long lattice_budget) {
  if (g.affine_tag) return maximal_subgroups_semidirect(g);
  Lattice lat(g, lattice_budget);
  return lat.maximal_subgroups();
}

}  // namespace invgen
