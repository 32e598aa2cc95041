#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "invgen/builder.hpp"
#include "invgen/lattice.hpp"
#include "invgen/semidirect.hpp"

namespace invgen {

// Descending chief series G = N_0 > N_1 > ... > N_k = 1 with per-factor
// order and Frattini flag (factor N_i/N_{i+1} inside Frat(G/N_{i+1})).
struct ChiefSeries {
  std::vector<std::vector<Perm>> subgroup_gens;  // N_0 .. N_k
  std::vector<u128> factor_orders;               // |N_i / N_{i+1}|
  std::vector<bool> factor_frattini;
};

namespace detail {

// lexicographically least minimal normal subgroup record
inline SubgroupRecord least_minimal_normal(Lattice& lat) {
  auto mins = lat.minimal_normal_subgroups();
  if (mins.empty()) throw InputError("least_minimal_normal: no minimal normal subgroup");
  std::sort(mins.begin(), mins.end(), [](const SubgroupRecord& a, const SubgroupRecord& b) {
    return a.order != b.order ? a.order < b.order : a.element_ids < b.element_ids;
  });
  return mins[0];
}

}  // namespace detail

// Chief series by repeatedly factoring out the lexicographically least
// minimal normal subgroup of the current quotient.  Requires every quotient
// to fit in the lattice budget.
inline ChiefSeries chief_series(const PermGroup& g, long lattice_budget = -1) {
  if (lattice_budget < 0) lattice_budget = default_config().lattice_budget;
  std::vector<Quotient> chain;
  std::vector<std::vector<Perm>> step_gens;  // minimal normal of step i, in Q_i's terms
  std::vector<u128> orders;
  std::vector<bool> frat;
  PermGroup cur = g;
  while (cur.order() > 1) {
    Lattice lat(cur, lattice_budget);
    SubgroupRecord m = detail::least_minimal_normal(lat);
    Bitset fratset(static_cast<std::size_t>(lat.group_size()));
    for (int id : lat.frattini_ids()) fratset.set(static_cast<std::size_t>(id));
    bool inside = true;
    for (int id : m.element_ids)
      if (!fratset.test(static_cast<std::size_t>(id))) { inside = false; break; }
    orders.push_back((u128)m.order);
    frat.push_back(inside);
    step_gens.push_back(m.gens);
    chain.push_back(quotient(cur, PermGroup(cur.degree(), m.gens)));
    cur = chain.back().quotient;
  }
  // ascending series 1 < P_1 < ... < P_k = G with P_i = preimage in G of the
  // minimal normal factored at step i-1
  std::size_t k = orders.size();
  std::vector<std::vector<Perm>> ascending;
  ascending.push_back({});  // trivial
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Perm> gens = step_gens[i];
    for (std::size_t b = i; b-- > 0;) gens = chain[b].lift_gens(gens);
    ascending.push_back(std::move(gens));
  }
  ascending.back() = g.generators();  // P_k = G
  ChiefSeries out;
  out.subgroup_gens.assign(ascending.rbegin(), ascending.rend());
  out.factor_orders.assign(orders.rbegin(), orders.rend());
  out.factor_frattini.assign(frat.rbegin(), frat.rend());
  return out;
}

// Number of non-Frattini factors in a chief series; for soluble G this is
// m(G).  The affine-tagged route factors the translation module structurally
// so it also covers tagged groups beyond the lattice budget.
inline int m_formula(const PermGroup& g, long lattice_budget = -1) {
  if (lattice_budget < 0) lattice_budget = default_config().lattice_budget;
  if (!is_soluble(g)) throw InputError("m_formula: only supported for soluble groups");
  std::function<int(const PermGroup&)> rec = [&](const PermGroup& cur) -> int {
    if (cur.order() == 1) return 0;
    if (cur.affine_tag) {
      const AffineTag& tag = *cur.affine_tag;
      auto submods = all_submodules(tag.k_gens, tag.p, tag.dim);
      // lexicographically least minimal nontrivial submodule
      RowSpace least = submods.back();
      bool found = false;
      for (const auto& s : submods) {
        if (s.dim() == 0) continue;
        bool minimal = true;
        for (const auto& t : submods)
          if (t.dim() > 0 && t.dim() < s.dim() && submodule_contains(s, t)) { minimal = false; break; }
        if (minimal) { least = s; found = true; break; }  // submods sorted by (dim, basis)
      }
      if (!found) throw InputError("m_formula: no minimal submodule");
      // factor is Frattini iff it lies inside every maximal submodule
      // (every maximal submodule is complemented: the image of K complements
      // V/W in G/W)
      bool frattini = true;
      for (const auto& w : maximal_submodules(submods, tag.dim))
        if (!submodule_contains(w, least)) { frattini = false; break; }
      if (least.dim() == tag.dim) return rec(tag.k_group()) + (frattini ? 0 : 1);
      QuotientModule qm(least, tag.k_gens, tag.dim);
      // the structural quotient (V/W) x| K-image is G/W only when K acts
      // faithfully on V/W; otherwise fall back to the coset action
      if (static_cast<long>(matrix_group_elements(qm.action, tag.p, qm.dim, tag.k_order + 1).size()) == tag.k_order) {
        std::vector<std::pair<FpMatrix, std::string>> gens;
        for (std::size_t i = 0; i < qm.action.size(); ++i)
          gens.emplace_back(qm.action[i], tag.k_labels[i]);
        return rec(make_affine_semidirect(tag.p, qm.dim, std::move(gens))) + (frattini ? 0 : 1);
      }
      std::vector<Perm> wgens;
      for (const auto& row : least.basis()) wgens.push_back(tag.translation_perm(row));
      Quotient q = quotient(cur, PermGroup(cur.degree(), wgens));
      return rec(q.quotient) + (frattini ? 0 : 1);
    }
    Lattice lat(cur, lattice_budget);
    SubgroupRecord m = detail::least_minimal_normal(lat);
    Bitset fratset(static_cast<std::size_t>(lat.group_size()));
    for (int id : lat.frattini_ids()) fratset.set(static_cast<std::size_t>(id));
    bool frattini = true;
    for (int id : m.element_ids)
      if (!fratset.test(static_cast<std::size_t>(id))) { frattini = false; break; }
    PermGroup msub = PermGroup(cur.degree(), m.gens);
    Quotient q = quotient(cur, msub);
    return rec(q.quotient) + (frattini ? 0 : 1);
  };
  return rec(g);
}

inline PermGroup frattini(const PermGroup& g, long lattice_budget = -1) {
  if (lattice_budget < 0) lattice_budget = default_config().lattice_budget;
  Lattice lat(g, lattice_budget);
  return lat.subgroup_from_ids(lat.frattini_ids());
}

}  // namespace invgen
