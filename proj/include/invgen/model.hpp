#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "invgen/builder.hpp"
#include "invgen/common.hpp"
#include "invgen/igen.hpp"

namespace invgen {

// Combinatorial model of the maximal-subgroup family of Alt(5)^n over
// Delta = Omega^n, Omega = {C1..C5}.  Product-type members restrict one
// coordinate to Y1 or Y2; diagonal-type members tie two coordinates by
// equality or by the involution inv = (C4 C5) — the class-level action of
// the outer automorphism of Alt(5).
struct DeltaModel {
  int n = 0;
  long size = 0;  // 5^n
  std::vector<Bitset> family;
  std::vector<std::string> names;

  static constexpr int inv_map[5] = {0, 1, 2, 4, 3};

  int digit(long code, int i) const {
    for (int k = 0; k < i; ++k) code /= 5;
    return static_cast<int>(code % 5);
  }
};

inline DeltaModel build_delta_family(int n) {
  if (n < 1 || n > 6) throw InputError("build_delta_family: n must be in 1..6");
  DeltaModel m;
  m.n = n;
  m.size = 1;
  for (int i = 0; i < n; ++i) m.size *= 5;
  auto member = [&](auto&& pred, const std::string& name) {
    Bitset b(static_cast<std::size_t>(m.size));
    for (long code = 0; code < m.size; ++code)
      if (pred(code)) b.set(static_cast<std::size_t>(code));
    m.family.push_back(std::move(b));
    m.names.push_back(name);
  };
  for (int i = 0; i < n; ++i)
    member([&](long code) { int d = m.digit(code, i); return d <= 2; }, "A" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i)
    member([&](long code) { int d = m.digit(code, i); return d != 2; }, "B" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      member([&](long code) { return m.digit(code, i) == m.digit(code, j); },
             "C" + std::to_string(i + 1) + "," + std::to_string(j + 1));
      member([&](long code) { return m.digit(code, i) == DeltaModel::inv_map[m.digit(code, j)]; },
             "D" + std::to_string(i + 1) + "," + std::to_string(j + 1));
    }
  return m;
}

inline int iota_model(int n, std::vector<int>* witness = nullptr) {
  DeltaModel m = build_delta_family(n);
  return iota_of_sets(m.family, static_cast<std::size_t>(m.size), witness);
}

// the model family as a synthetic M-star family: class ids are Delta codes,
// code 0 (all coordinates C1) plays the identity class
inline MStarFamily model_as_family(const DeltaModel& m) {
  MStarFamily fam;
  fam.num_classes = static_cast<std::size_t>(m.size);
  fam.sets = m.family;
  for (std::size_t i = 0; i < m.family.size(); ++i) fam.provenance.push_back({static_cast<int>(i)});
  return fam;
}

struct ModelCrosscheck {
  bool matched = false;
  std::size_t model_family_size = 0;
  std::size_t group_family_size = 0;
  std::size_t num_group_classes = 0;
  bool outer_action_is_inv = false;
  int group_m_i = 0;
  int group_iota = 0;
};

// Builds Alt(5)^n (n <= 2) with its real class table, constructs the maximal
// subgroups from the product/diagonal classification, computes their honest
// fusion sets and verifies the bijection with the model family.
inline ModelCrosscheck crosscheck_group_model(int n) {
  if (n < 1 || n > 2) throw InputError("crosscheck_group_model: n must be 1 or 2");
  DeltaModel model = build_delta_family(n);
  PermGroup a5 = make_alt(5);
  ClassTable t5 = conjugacy_classes(a5);
  // sanity: the expected class order (identity, involutions, 3-cycles, two
  // order-5 classes) is pinned by the canonical sort
  if (t5.num_classes() != 5) throw InputError("crosscheck: alt(5) class table unexpected");

  ModelCrosscheck out;
  out.model_family_size = model.family.size();

  // class action of the outer automorphism (conjugation by a transposition):
  // must equal the model involution
  {
    Perm tau = perm_parse("(1,2)", 5);
    bool ok = true;
    for (int c = 0; c < 5; ++c) {
      int img = t5.class_of_perm(perm_conjugate(t5.rep(c), tau));
      if (img != DeltaModel::inv_map[c]) ok = false;
    }
    out.outer_action_is_inv = ok;
  }

  // maximal subgroups of Alt(5), from its own lattice
  Lattice lat5(a5, default_config().lattice_budget);
  std::vector<SubgroupRecord> max5 = lat5.maximal_subgroups();

  PermGroup g = n == 1 ? a5 : make_direct_product(a5, a5);
  ClassTable tg = conjugacy_classes(g);
  out.num_group_classes = tg.num_classes();

  // map group classes to Delta codes via component classes
  std::vector<int> class_to_code(tg.num_classes());
  for (std::size_t c = 0; c < tg.num_classes(); ++c) {
    const Perm& rep = tg.rep(static_cast<int>(c));
    long code = 0;
    long factor = 1;
    for (int block = 0; block < n; ++block) {
      std::vector<int> im(5);
      for (int i = 0; i < 5; ++i) im[static_cast<std::size_t>(i)] = rep[block * 5 + i] - block * 5;
      code += factor * t5.class_of_perm(Perm(im));
      factor *= 5;
    }
    class_to_code[c] = static_cast<int>(code);
  }
  {
    std::vector<int> sorted = class_to_code;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() != tg.num_classes())
      throw InputError("crosscheck: class-to-code map is not a bijection");
  }

  // explicit maximal subgroups per the classification
  std::vector<PermGroup> maximals;
  if (n == 1) {
    for (const auto& rec : max5) maximals.push_back(PermGroup(5, rec.gens));
  } else {
    for (const auto& rec : max5) {
      // product type in each coordinate
      std::vector<Perm> left, right;
      for (const Perm& x : rec.gens) {
        std::vector<int> im(10);
        for (int i = 0; i < 5; ++i) im[static_cast<std::size_t>(i)] = x[i];
        for (int i = 5; i < 10; ++i) im[static_cast<std::size_t>(i)] = i;
        left.push_back(Perm(im));
        std::vector<int> im2(10);
        for (int i = 0; i < 5; ++i) im2[static_cast<std::size_t>(i)] = i;
        for (int i = 0; i < 5; ++i) im2[static_cast<std::size_t>(5 + i)] = 5 + x[i];
        right.push_back(Perm(im2));
      }
      for (const Perm& y : a5.generators()) {
        std::vector<int> im(10);
        for (int i = 0; i < 5; ++i) im[static_cast<std::size_t>(i)] = i;
        for (int i = 0; i < 5; ++i) im[static_cast<std::size_t>(5 + i)] = 5 + y[i];
        left.push_back(Perm(im));
        std::vector<int> im2(10);
        for (int i = 0; i < 5; ++i) im2[static_cast<std::size_t>(i)] = y[i];
        for (int i = 5; i < 10; ++i) im2[static_cast<std::size_t>(i)] = i;
        right.push_back(Perm(im2));
      }
      maximals.push_back(PermGroup(10, left));
      maximals.push_back(PermGroup(10, right));
    }
    // diagonal type: {(x, x^phi)} for phi inner (identity) and outer
    Perm tau = perm_parse("(1,2)", 5);
    for (int outer = 0; outer < 2; ++outer) {
      std::vector<Perm> gens;
      for (const Perm& x : a5.generators()) {
        Perm xi = outer ? perm_conjugate(x, tau) : x;
        std::vector<int> im(10);
        for (int i = 0; i < 5; ++i) im[static_cast<std::size_t>(i)] = x[i];
        for (int i = 0; i < 5; ++i) im[static_cast<std::size_t>(5 + i)] = 5 + xi[i];
        gens.push_back(Perm(im));
      }
      PermGroup d(10, gens);
      if (d.order() != (u128)60) throw InputError("crosscheck: diagonal subgroup has wrong order");
      maximals.push_back(std::move(d));
    }
  }

  // honest fusion of each constructed maximal, mapped into Delta codes
  std::vector<Bitset> group_sets;
  for (const PermGroup& msub : maximals) {
    MStar star = class_fusion(g, tg, msub);
    Bitset mapped(static_cast<std::size_t>(model.size));
    for (int c : star.classes.members()) mapped.set(static_cast<std::size_t>(class_to_code[static_cast<std::size_t>(c)]));
    bool dup = false;
    for (const auto& s : group_sets)
      if (s == mapped) dup = true;
    if (!dup) group_sets.push_back(std::move(mapped));
  }
  out.group_family_size = group_sets.size();

  // bijection with the model family
  bool all_found = group_sets.size() == model.family.size();
  for (const auto& s : group_sets) {
    bool found = false;
    for (const auto& f : model.family)
      if (f == s) found = true;
    if (!found) all_found = false;
  }
  out.matched = all_found && out.outer_action_is_inv;

  // the group-side numbers through the real family
  MStarFamily fam;
  fam.num_classes = tg.num_classes();
  for (const PermGroup& msub : maximals) {
    MStar star = class_fusion(g, tg, msub);
    bool dup = false;
    for (const auto& s : fam.sets)
      if (s == star.classes) dup = true;
    if (!dup) {
      fam.sets.push_back(star.classes);
      fam.provenance.push_back({static_cast<int>(fam.sets.size()) - 1});
    }
  }
  out.group_m_i = igen_numbers(fam).m_i;
  out.group_iota = iota_of_family(fam);
  return out;
}

}  // namespace invgen
