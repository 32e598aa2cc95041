#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "invgen/bsgs.hpp"
#include "invgen/common.hpp"
#include "invgen/perm.hpp"

namespace invgen {

// Conjugacy class data for a group within the class budget.  Element ids are
// positions in the lexicographically sorted element list, so lookups are
// binary searches and the whole table is deterministic.
//
// Classes are sorted by (element order, class size, lexicographic rep);
// class 0 is always the identity class.
class ClassTable {
 public:
  ClassTable(const PermGroup& g, long budget) : degree_(g.degree()) {
    elements_ = g.elements(budget);
    long n = static_cast<long>(elements_.size());
    class_of_.assign(static_cast<std::size_t>(n), -1);

    std::vector<std::vector<int>> members;
    for (long start = 0; start < n; ++start) {
      if (class_of_[static_cast<std::size_t>(start)] >= 0) continue;
      int cid = static_cast<int>(members.size());
      std::vector<int> orbit{static_cast<int>(start)};
      class_of_[static_cast<std::size_t>(start)] = cid;
      for (std::size_t qi = 0; qi < orbit.size(); ++qi) {
        for (const Perm& gen : g.generators()) {
          Perm c = perm_conjugate(elements_[static_cast<std::size_t>(orbit[qi])], gen);
          int id = index_of(c);
          if (class_of_[static_cast<std::size_t>(id)] < 0) {
            class_of_[static_cast<std::size_t>(id)] = cid;
            orbit.push_back(id);
          }
        }
      }
      members.push_back(std::move(orbit));
    }

    // canonical class order
    std::vector<int> perm_order(members.size());
    std::vector<int> idx(members.size());
    for (std::size_t c = 0; c < members.size(); ++c) {
      perm_order[c] = static_cast<int>(elements_[static_cast<std::size_t>(members[c][0])].order());
      idx[c] = static_cast<int>(c);
    }
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      auto ka = std::make_tuple(perm_order[static_cast<std::size_t>(a)], members[static_cast<std::size_t>(a)].size(),
                                members[static_cast<std::size_t>(a)][0]);
      auto kb = std::make_tuple(perm_order[static_cast<std::size_t>(b)], members[static_cast<std::size_t>(b)].size(),
                                members[static_cast<std::size_t>(b)][0]);
      return ka < kb;
    });
    std::vector<int> new_id(members.size());
    for (std::size_t pos = 0; pos < idx.size(); ++pos) new_id[static_cast<std::size_t>(idx[pos])] = static_cast<int>(pos);
    for (auto& c : class_of_) c = new_id[static_cast<std::size_t>(c)];

    reps_.resize(members.size());
    sizes_.resize(members.size());
    order_of_class_.resize(members.size());
    for (std::size_t c = 0; c < members.size(); ++c) {
      std::size_t to = static_cast<std::size_t>(new_id[c]);
      reps_[to] = elements_[static_cast<std::size_t>(members[c][0])];
      sizes_[to] = static_cast<long>(members[c].size());
      order_of_class_[to] = perm_order[c];
    }

    inv_map_.resize(reps_.size());
    for (std::size_t c = 0; c < reps_.size(); ++c)
      inv_map_[c] = class_of_perm(perm_inverse(reps_[c]));
  }

  int degree() const { return degree_; }
  long group_order() const { return static_cast<long>(elements_.size()); }
  std::size_t num_classes() const { return reps_.size(); }
  const std::vector<Perm>& elements() const { return elements_; }
  const Perm& rep(int c) const { return reps_[static_cast<std::size_t>(c)]; }
  long size(int c) const { return sizes_[static_cast<std::size_t>(c)]; }
  int order_of_class(int c) const { return order_of_class_[static_cast<std::size_t>(c)]; }
  int inverse_class(int c) const { return inv_map_[static_cast<std::size_t>(c)]; }
  int class_of_id(long id) const { return class_of_[static_cast<std::size_t>(id)]; }

  std::vector<long> class_sizes() const { return sizes_; }

  long index_of(const Perm& p) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
    if (it == elements_.end() || !(*it == p)) throw InputError("element not in group");
    return static_cast<long>(it - elements_.begin());
  }

  int class_of_perm(const Perm& p) const { return class_of_id(index_of(p)); }

  std::vector<int> members_of(int c) const {
    std::vector<int> out;
    for (long i = 0; i < group_order(); ++i)
      if (class_of_[static_cast<std::size_t>(i)] == c) out.push_back(static_cast<int>(i));
    return out;
  }

 private:
  int degree_;
  std::vector<Perm> elements_;
  std::vector<int> class_of_;
  std::vector<Perm> reps_;
  std::vector<long> sizes_;
  std::vector<int> order_of_class_;
  std::vector<int> inv_map_;
};

inline ClassTable conjugacy_classes(const PermGroup& g, long budget) {
  if (g.order() > (u128)budget)
    throw BudgetError("class budget exceeded: order " + to_string_u128(g.order()));
  return ClassTable(g, budget);
}

inline ClassTable conjugacy_classes(const PermGroup& g) {
  return conjugacy_classes(g, default_config().class_budget);
}

// The set of G-classes meeting a subgroup M: the M^* of the M-star family.
struct MStar {
  long subgroup_order = 0;
  Bitset classes;  // over class ids
};

inline MStar class_fusion(const PermGroup& g, const ClassTable& t, const PermGroup& m, long budget) {
  for (const Perm& gen : m.generators())
    if (!g.contains(gen)) throw InputError("class_fusion: M is not a subgroup of G");
  MStar out;
  out.subgroup_order = m.order_long();
  out.classes = Bitset(t.num_classes());
  for (const Perm& x : m.elements(budget)) out.classes.set(static_cast<std::size_t>(t.class_of_perm(x)));
  return out;
}

inline MStar class_fusion(const PermGroup& g, const ClassTable& t, const PermGroup& m) {
  return class_fusion(g, t, m, default_config().element_budget);
}

}  // namespace invgen
