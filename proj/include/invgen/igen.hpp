#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "invgen/classes.hpp"
#include "invgen/common.hpp"
#include "invgen/lattice.hpp"
#include "invgen/semidirect.hpp"
#include "invgen/structure.hpp"

namespace invgen {

// The family {M^* : M maximal in G} with duplicates merged.  Everything the
// invariable-generation quantities need lives here: a set of distinct
// class-id sets, each remembering which maximal-subgroup classes produced it.
struct MStarFamily {
  std::size_t num_classes = 0;
  std::vector<Bitset> sets;
  std::vector<std::vector<int>> provenance;  // indices into `maximals`
  std::vector<SubgroupRecord> maximals;
  std::vector<Bitset> fusion_by_maximal;  // M* per maximal class, unmerged
};

inline MStarFamily build_mstar_family(const PermGroup& g, const ClassTable& t,
                                      const std::vector<SubgroupRecord>& maximals,
                                      long element_budget = -1) {
  if (element_budget < 0) element_budget = default_config().element_budget;
  MStarFamily fam;
  fam.num_classes = t.num_classes();
  fam.maximals = maximals;
  for (std::size_t i = 0; i < maximals.size(); ++i) {
    PermGroup m = maximals[i].gens.empty() ? PermGroup::trivial(g.degree())
                                           : PermGroup(g.degree(), maximals[i].gens);
    MStar star = class_fusion(g, t, m, element_budget);
    fam.fusion_by_maximal.push_back(star.classes);
    bool merged = false;
    for (std::size_t s = 0; s < fam.sets.size(); ++s)
      if (fam.sets[s] == star.classes) {
        fam.provenance[s].push_back(static_cast<int>(i));
        merged = true;
        break;
      }
    if (!merged) {
      fam.sets.push_back(star.classes);
      fam.provenance.push_back({static_cast<int>(i)});
    }
  }
  return fam;
}

// ------------- the invariable generation predicate -------------

// true iff no member of the family contains every chosen class
inline bool igen_check_classes(const MStarFamily& fam, const std::vector<int>& class_ids) {
  for (const Bitset& s : fam.sets) {
    bool covered = true;
    for (int c : class_ids)
      if (!s.test(static_cast<std::size_t>(c))) { covered = false; break; }
    if (covered) return false;
  }
  return true;
}

inline bool igen_check_elements(const MStarFamily& fam, const ClassTable& t,
                                const std::vector<Perm>& xs) {
  std::vector<int> ids;
  for (const Perm& x : xs) ids.push_back(t.class_of_perm(x));
  return igen_check_classes(fam, ids);
}

// for nilpotent groups invariable generation coincides with generation
inline bool nilpotent_igen_check(const PermGroup& g, const std::vector<Perm>& xs) {
  if (xs.empty()) return g.is_trivial();
  return PermGroup(g.degree(), xs).order() == g.order();
}

// ------------- d_I / m_I / irb_I / iota -------------

namespace igen_detail {

// complements of the family sets over the nontrivial classes; the hitting
// targets of every search below
inline std::vector<Bitset> complement_sets(const MStarFamily& fam) {
  std::vector<Bitset> out;
  for (const Bitset& s : fam.sets) {
    Bitset c(fam.num_classes);
    for (std::size_t i = 1; i < fam.num_classes; ++i)
      if (!s.test(i)) c.set(i);
    out.push_back(std::move(c));
  }
  return out;
}

inline bool hits_all(const std::vector<Bitset>& complements, const Bitset& chosen) {
  for (const Bitset& c : complements)
    if (!(c & chosen).any()) return false;
  return true;
}

// exact minimum hitting set by branch and bound over the member lists
struct HittingSearch {
  const std::vector<Bitset>& complements;
  std::size_t num_classes;
  std::vector<int> best;
  bool found = false;

  void run() {
    std::vector<int> acc;
    Bitset chosen(num_classes);
    rec(acc, chosen);
  }

  void rec(std::vector<int>& acc, Bitset& chosen) {
    if (found && acc.size() + 1 > best.size()) return;
    // first complement not yet hit, preferring the fewest candidates
    int pick = -1;
    std::size_t fewest = num_classes + 1;
    for (std::size_t i = 0; i < complements.size(); ++i) {
      if ((complements[i] & chosen).any()) continue;
      std::size_t cnt = complements[i].count();
      if (cnt < fewest) {
        fewest = cnt;
        pick = static_cast<int>(i);
      }
    }
    if (pick < 0) {
      if (!found || acc.size() < best.size()) {
        best = acc;
        std::sort(best.begin(), best.end());
        found = true;
      }
      return;
    }
    if (found && acc.size() + 1 >= best.size()) return;
    for (int c : complements[static_cast<std::size_t>(pick)].members()) {
      acc.push_back(c);
      chosen.set(static_cast<std::size_t>(c));
      rec(acc, chosen);
      chosen.reset(static_cast<std::size_t>(c));
      acc.pop_back();
    }
  }
};

// DFS over class subsets that are irredundant: every chosen class c keeps a
// witness family member containing the rest but not c.  Subsets of minimal
// invariable generating sets have this shape, so the pruning is lossless.
struct MinimalSetSearch {
  const MStarFamily& fam;
  const std::vector<Bitset>& complements;
  std::vector<std::vector<int>> witnesses_by_size;  // lexicographically least per size
  int max_size = 0;

  explicit MinimalSetSearch(const MStarFamily& f, const std::vector<Bitset>& comp)
      : fam(f), complements(comp) {
    witnesses_by_size.assign(fam.sets.size() + 2, {});
  }

  void run() {
    std::vector<int> acc;
    // per chosen class: bitset over family indices still containing acc \ {c}
    std::vector<Bitset> crit;
    rec(acc, crit);
  }

  void rec(std::vector<int>& acc, std::vector<Bitset>& crit) {
    if (!acc.empty()) {
      Bitset chosen(fam.num_classes);
      for (int c : acc) chosen.set(static_cast<std::size_t>(c));
      if (hits_all(complements, chosen)) {
        int k = static_cast<int>(acc.size());
        max_size = std::max(max_size, k);
        auto& slot = witnesses_by_size[static_cast<std::size_t>(k)];
        if (slot.empty() || acc < slot) slot = acc;
        return;  // any extension would make some member redundant
      }
    }
    if (acc.size() >= fam.sets.size()) return;  // each member needs a distinct witness
    int start = acc.empty() ? 1 : acc.back() + 1;
    for (std::size_t c = static_cast<std::size_t>(start); c < fam.num_classes; ++c) {
      // new witness sets: family members containing everything already chosen
      std::vector<Bitset> new_crit(acc.size() + 1, Bitset(fam.sets.size()));
      bool ok = true;
      for (std::size_t i = 0; i < acc.size() && ok; ++i) {
        for (int f : crit[i].members())
          if (fam.sets[static_cast<std::size_t>(f)].test(c)) new_crit[i].set(static_cast<std::size_t>(f));
        if (!new_crit[i].any()) ok = false;  // acc[i] can never become critical again
      }
      if (!ok) continue;
      // witness candidates for the new class: members containing acc but not c
      for (std::size_t f = 0; f < fam.sets.size(); ++f) {
        if (fam.sets[f].test(c)) continue;
        bool contains_rest = true;
        for (int a : acc)
          if (!fam.sets[f].test(static_cast<std::size_t>(a))) { contains_rest = false; break; }
        if (contains_rest) new_crit[acc.size()].set(f);
      }
      if (!new_crit[acc.size()].any()) continue;
      acc.push_back(static_cast<int>(c));
      std::vector<Bitset> saved = std::move(crit);
      crit = std::move(new_crit);
      rec(acc, crit);
      crit = std::move(saved);
      acc.pop_back();
    }
  }
};

}  // namespace igen_detail

struct IGenNumbers {
  int d_i = 0;
  int m_i = 0;
  std::vector<int> irb;  // all achievable minimal sizes
  std::vector<int> d_witness;
  std::vector<int> m_witness;
};

inline IGenNumbers igen_numbers(const MStarFamily& fam) {
  IGenNumbers out;
  if (fam.sets.empty()) {
    // trivial group: the empty set invariably generates
    return out;
  }
  auto complements = igen_detail::complement_sets(fam);
  for (const Bitset& c : complements)
    if (!c.any()) throw InputError("igen: some maximal subgroup meets every class (no invariable generation)");
  igen_detail::HittingSearch hs{complements, fam.num_classes, {}, false};
  hs.run();
  if (!hs.found) throw InputError("igen: no hitting set found");
  out.d_i = static_cast<int>(hs.best.size());
  out.d_witness = hs.best;
  igen_detail::MinimalSetSearch ms(fam, complements);
  ms.run();
  out.m_i = ms.max_size;
  out.m_witness = ms.witnesses_by_size[static_cast<std::size_t>(ms.max_size)];
  for (std::size_t k = 1; k < ms.witnesses_by_size.size(); ++k)
    if (!ms.witnesses_by_size[k].empty()) out.irb.push_back(static_cast<int>(k));
  return out;
}

// independence per the corrected reading: removing any member strictly
// enlarges the intersection
inline bool is_independent(const MStarFamily& fam, const std::vector<int>& subset) {
  std::size_t n = fam.num_classes;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    Bitset with_all(n), without(n);
    for (std::size_t c = 0; c < n; ++c) { with_all.set(c); without.set(c); }
    for (std::size_t j = 0; j < subset.size(); ++j) {
      with_all &= fam.sets[static_cast<std::size_t>(subset[j])];
      if (j != i) without &= fam.sets[static_cast<std::size_t>(subset[j])];
    }
    if (without == with_all) return false;
  }
  return true;
}

inline bool is_independent_sets(const std::vector<Bitset>& sets, std::size_t universe,
                                const std::vector<int>& subset) {
  for (std::size_t i = 0; i < subset.size(); ++i) {
    Bitset with_all(universe), without(universe);
    for (std::size_t c = 0; c < universe; ++c) { with_all.set(c); without.set(c); }
    for (std::size_t j = 0; j < subset.size(); ++j) {
      with_all &= sets[static_cast<std::size_t>(subset[j])];
      if (j != i) without &= sets[static_cast<std::size_t>(subset[j])];
    }
    if (without == with_all) return false;
  }
  return true;
}

// largest independent subfamily, exact branch and bound (independence is
// hereditary, so prefix pruning is lossless)
inline int iota_of_sets(const std::vector<Bitset>& fam_sets, std::size_t universe,
                        std::vector<int>* witness = nullptr) {
  int best = 0;
  std::vector<int> best_acc, acc;
  std::size_t n = universe;
  // running data: intersection of chosen, and per-member removal intersections
  std::function<void(std::size_t, Bitset&, std::vector<Bitset>&)> rec =
      [&](std::size_t start, Bitset& inter, std::vector<Bitset>& removals) {
        if (static_cast<int>(acc.size()) > best) {
          best = static_cast<int>(acc.size());
          best_acc = acc;
        }
        if (acc.size() + (fam_sets.size() - start) <= static_cast<std::size_t>(best)) return;
        for (std::size_t f = start; f < fam_sets.size(); ++f) {
          // adding f must strictly cut the intersection, and keep all removal
          // intersections strictly larger than the new intersection
          Bitset new_inter = inter & fam_sets[f];
          if (new_inter == inter) continue;  // f itself would be redundant
          std::vector<Bitset> new_removals;
          bool ok = true;
          for (std::size_t i = 0; i < acc.size() && ok; ++i) {
            Bitset r = removals[i] & fam_sets[f];
            if (r == new_inter) ok = false;
            new_removals.push_back(std::move(r));
          }
          if (!ok) continue;
          new_removals.push_back(inter);  // removal of f leaves the previous intersection
          acc.push_back(static_cast<int>(f));
          rec(f + 1, new_inter, new_removals);
          acc.pop_back();
        }
      };
  Bitset all(n);
  for (std::size_t c = 0; c < n; ++c) all.set(c);
  std::vector<Bitset> removals;
  rec(0, all, removals);
  if (witness) *witness = best_acc;
  return best;
}

inline int iota_of_family(const MStarFamily& fam, std::vector<int>* witness = nullptr) {
  return iota_of_sets(fam.sets, fam.num_classes, witness);
}

// ------------- Frat_I -------------

struct FratIResult {
  std::vector<int> primary_classes;   // intersection of maximal members of the family
  std::vector<int> variant_classes;   // intersection of all members
  long primary_elements = 0;
  long variant_elements = 0;
  std::vector<int> maximal_member_indices;  // which family sets are maximal under inclusion
};

inline FratIResult frat_i(const MStarFamily& fam, const ClassTable& t) {
  FratIResult out;
  std::size_t n = fam.num_classes;
  Bitset primary(n), variant(n);
  for (std::size_t c = 0; c < n; ++c) { primary.set(c); variant.set(c); }
  for (std::size_t i = 0; i < fam.sets.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < fam.sets.size(); ++j)
      if (j != i && fam.sets[i].subset_of(fam.sets[j]) && !(fam.sets[j] == fam.sets[i])) {
        maximal = false;
        break;
      }
    variant &= fam.sets[i];
    if (maximal) {
      primary &= fam.sets[i];
      out.maximal_member_indices.push_back(static_cast<int>(i));
    }
  }
  out.primary_classes = primary.members();
  out.variant_classes = variant.members();
  for (int c : out.primary_classes) out.primary_elements += t.size(c);
  for (int c : out.variant_classes) out.variant_elements += t.size(c);
  return out;
}

// ------------- flags and context -------------

struct IGenContext {
  PermGroup g;
  ClassTable table;
  MStarFamily family;

  static IGenContext build(const PermGroup& g, long lattice_budget = -1, long class_budget = -1) {
    if (lattice_budget < 0) lattice_budget = default_config().lattice_budget;
    if (class_budget < 0) class_budget = default_config().class_budget;
    ClassTable t = conjugacy_classes(g, class_budget);
    std::vector<SubgroupRecord> maximals =
        g.is_trivial() ? std::vector<SubgroupRecord>{} : maximal_subgroups(g, lattice_budget);
    MStarFamily fam = build_mstar_family(g, t, maximals);
    return IGenContext{g, std::move(t), std::move(fam)};
  }

  bool igen_check(const std::vector<Perm>& xs) const {
    for (const Perm& x : xs)
      if (!g.contains(x)) throw InputError("igen_check: element not in group");
    if (xs.empty()) return g.is_trivial();
    return igen_check_elements(family, table, xs);
  }

  bool is_cp() const {
    for (std::size_t c = 0; c < table.num_classes(); ++c) {
      long o = table.order_of_class(static_cast<int>(c));
      if (o == 1) continue;
      auto fac = prime_factors((u128)o);
      if (fac.size() != 1) return false;
    }
    return true;
  }
};

// every prime dividing |G| has a p-power class outside Frat_I (soluble lemma)
inline bool pote_check(const IGenContext& ctx) {
  if (!is_soluble(ctx.g)) throw InputError("pote_check: only supported for soluble groups");
  FratIResult f = frat_i(ctx.family, ctx.table);
  Bitset inside(ctx.table.num_classes());
  for (int c : f.primary_classes) inside.set(static_cast<std::size_t>(c));
  for (long p : prime_factors(ctx.g.order())) {
    bool found = false;
    for (std::size_t c = 0; c < ctx.table.num_classes() && !found; ++c) {
      if (inside.test(c)) continue;
      long o = ctx.table.order_of_class(static_cast<int>(c));
      bool ppower = o > 1;
      long oo = o;
      while (oo > 1) {
        if (oo % p != 0) { ppower = false; break; }
        oo /= p;
      }
      if (ppower) found = true;
    }
    if (!found) return false;
  }
  return true;
}

struct AdditivityResult {
  int mi_a = 0, mi_b = 0, mi_product = 0;
  bool equal = false;
};

inline AdditivityResult mi_additivity_check(const PermGroup& a, const PermGroup& b) {
  AdditivityResult r;
  r.mi_a = igen_numbers(IGenContext::build(a).family).m_i;
  r.mi_b = igen_numbers(IGenContext::build(b).family).m_i;
  PermGroup prod = make_direct_product(a, b);
  r.mi_product = igen_numbers(IGenContext::build(prod).family).m_i;
  if (r.mi_a + r.mi_b > r.mi_product)
    throw InputError("mi_additivity_check: subadditivity violated (bug)");
  r.equal = r.mi_a + r.mi_b == r.mi_product;
  return r;
}

// ------------- B / B_I / IBP -------------

struct IBPResult {
  bool has_ibp = false;
  bool cp_shortcut_failed = false;
  // witness when has_ibp is false: a subgroup with d_I < m_I
  long witness_order = 0;
  int witness_d_i = 0;
  int witness_m_i = 0;
  std::vector<Perm> witness_gens;
};

inline IBPResult has_ibp(const PermGroup& g, long lattice_budget = -1) {
  if (lattice_budget < 0) lattice_budget = default_config().lattice_budget;
  IBPResult out;
  IGenContext top = IGenContext::build(g, lattice_budget);
  if (!top.is_cp()) {
    // a cyclic subgroup of non-prime-power order already fails d_I = m_I
    out.cp_shortcut_failed = true;
    for (std::size_t c = 0; c < top.table.num_classes(); ++c) {
      long o = top.table.order_of_class(static_cast<int>(c));
      if (o > 1 && prime_factors((u128)o).size() > 1) {
        out.witness_order = o;
        out.witness_gens = {top.table.rep(static_cast<int>(c))};
        IGenContext sub = IGenContext::build(PermGroup(g.degree(), out.witness_gens), lattice_budget);
        auto nums = igen_numbers(sub.family);
        out.witness_d_i = nums.d_i;
        out.witness_m_i = nums.m_i;
        break;
      }
    }
    return out;
  }
  Lattice lat(g, lattice_budget);
  for (const SubgroupRecord& rec : lat.all_subgroups()) {
    if (rec.order == 1) continue;
    PermGroup h = PermGroup(g.degree(), rec.gens);
    IGenContext sub = IGenContext::build(h, lattice_budget);
    auto nums = igen_numbers(sub.family);
    if (nums.d_i != nums.m_i) {
      out.witness_order = rec.order;
      out.witness_d_i = nums.d_i;
      out.witness_m_i = nums.m_i;
      out.witness_gens = rec.gens;
      return out;
    }
  }
  out.has_ibp = true;
  return out;
}

// ------------- the assembled report -------------

struct IGenReport {
  u128 order = 1;
  int d_i = 0, m_i = 0;
  std::vector<int> irb;
  std::vector<int> d_i_witness, m_i_witness;
  int iota = 0;
  std::vector<int> iota_witness;
  std::optional<int> d_classical, m_classical;
  FratIResult frat;
  std::optional<bool> is_b;
  bool is_bi = false, is_cp = false;
  std::optional<bool> ibp;
  std::size_t num_classes = 0;
  std::size_t family_size = 0;
};

inline IGenReport igen_report(const IGenContext& ctx, bool want_classical = true,
                              bool want_ibp = false, long lattice_budget = -1) {
  if (lattice_budget < 0) lattice_budget = default_config().lattice_budget;
  IGenReport rep;
  rep.order = ctx.g.order();
  rep.num_classes = ctx.table.num_classes();
  rep.family_size = ctx.family.sets.size();
  auto nums = igen_numbers(ctx.family);
  rep.d_i = nums.d_i;
  rep.m_i = nums.m_i;
  rep.irb = nums.irb;
  rep.d_i_witness = nums.d_witness;
  rep.m_i_witness = nums.m_witness;
  rep.iota = iota_of_family(ctx.family, &rep.iota_witness);
  rep.frat = frat_i(ctx.family, ctx.table);
  rep.is_cp = ctx.is_cp();
  rep.is_bi = rep.d_i == rep.m_i;
  if (want_classical) {
    try {
      Lattice lat(ctx.g, lattice_budget);
      rep.d_classical = lat.d_classical();
      rep.m_classical = lat.m_classical();
    } catch (const BudgetError&) {
      // d: bounded direct search; m: chief-series count for soluble groups
      if (is_soluble(ctx.g)) rep.m_classical = m_formula(ctx.g, lattice_budget);
      for (int k = 1; k <= 3 && !rep.d_classical; ++k) {
        // try small generating sets built from class representatives and the
        // group generators; exact for k found, lower bounds otherwise
        if (k == 1) {
          for (std::size_t c = 0; c < ctx.table.num_classes(); ++c)
            if ((u128)ctx.table.order_of_class(static_cast<int>(c)) == ctx.g.order()) {
              rep.d_classical = 1;
              break;
            }
        } else if (k == 2) {
          for (std::size_t c = 1; c < ctx.table.num_classes() && !rep.d_classical; ++c)
            for (const Perm& x : ctx.table.elements()) {
              if (x.is_identity()) continue;
              PermGroup h(ctx.g.degree(), {ctx.table.rep(static_cast<int>(c)), x});
              if (h.order() == ctx.g.order()) {
                rep.d_classical = 2;
                break;
              }
            }
        }
      }
    }
    if (rep.d_classical && rep.m_classical) rep.is_b = *rep.d_classical == *rep.m_classical;
  }
  if (want_ibp) rep.ibp = has_ibp(ctx.g, lattice_budget).has_ibp;
  return rep;
}

}  // namespace invgen
