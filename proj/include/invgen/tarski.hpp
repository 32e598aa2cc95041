#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "invgen/classes.hpp"
#include "invgen/common.hpp"
#include "invgen/igen.hpp"
#include "invgen/lattice.hpp"

namespace invgen {

struct ClosureBudget {
  long max_tuple_evals = 2000000;
  long max_subset_scans = 2000000;
};

// Workbench for the closure operator C(X) = X u intersection over conjugate
// tuples of <x_1^g_1, ..., x_t^g_t>.  Everything is element-id based over a
// lattice-scale group.
//
// The intersection depends only on the set of conjugacy classes of X
// (choices for two members of one class collapse by specialising both to the
// same conjugate), so tuples range over the distinct classes.  All classes
// are enumerated in full: fixing one conjugator computes the possibly larger
// non-normal partial intersection, not C(X) (its normal core is C(X); the
// normality of the full intersection is asserted after every evaluation).
class TarskiContext {
 public:
  TarskiContext(const PermGroup& g, long lattice_budget = -1)
      : lat_(g, lattice_budget < 0 ? default_config().lattice_budget : lattice_budget) {
    n_ = lat_.group_size();
    const ClassTable& t = lat_.table();
    class_members_.resize(t.num_classes());
    for (long i = 0; i < n_; ++i)
      class_members_[static_cast<std::size_t>(t.class_of_id(i))].push_back(static_cast<int>(i));
  }

  const Lattice& lattice() const { return lat_; }
  long group_size() const { return n_; }

  // exact C(X) for X given as element ids
  Bitset closure_C(const std::vector<int>& xs, const ClosureBudget& budget = {}) const {
    Bitset out = intersection_part(class_set_of(xs), budget);
    for (int x : xs) out.set(static_cast<std::size_t>(x));
    return out;
  }

  // C_n(X) = union of C(Y) over Y <= X with |Y| <= n
  Bitset closure_Cn(const std::vector<int>& xs, int nary, const ClosureBudget& budget = {}) const {
    Bitset out(static_cast<std::size_t>(n_));
    out.set(0);  // C of the empty subset
    std::vector<int> subset;
    cn_rec(xs, 0, nary, subset, out, budget);
    for (int x : xs) out.set(static_cast<std::size_t>(x));
    return out;
  }

  // iterate C_n until stable
  Bitset cn_fixpoint(const std::vector<int>& xs, int nary, const ClosureBudget& budget = {}) const {
    Bitset cur(static_cast<std::size_t>(n_));
    for (int x : xs) cur.set(static_cast<std::size_t>(x));
    while (true) {
      Bitset next = closure_Cn(cur.members(), nary, budget);
      if (next == cur) return cur;
      cur = next;
    }
  }

  struct NaryVerdict {
    enum Kind { yes, no, budget_exceeded } kind = yes;
    std::vector<int> witness;  // X with C(X) != fixpoint, when kind == no
  };

  // Exhaustive scan over all subsets of G (|G| <= 24), or over caller
  // candidates.  C(X) is compared against the C_n fixpoint; when the class
  // set of X invariably generates, C(X) = G without enumeration.
  NaryVerdict is_invariable_nary(int nary, long exhaustive_cap = 24,
                                 const std::vector<std::vector<int>>* candidates = nullptr,
                                 const ClosureBudget& budget = {}) const {
    NaryVerdict verdict;
    if (candidates) {
      for (const auto& xs : *candidates)
        if (!nary_subset_ok(xs, nary, verdict, budget)) return verdict;
      return verdict;
    }
    if (n_ > exhaustive_cap) {
      verdict.kind = NaryVerdict::budget_exceeded;
      return verdict;
    }
    // memoized N-parts make the 2^|G| scan affordable
    std::vector<int> xs;
    for (unsigned long long mask = 1; mask < (1ULL << n_); ++mask) {
      xs.clear();
      for (long i = 0; i < n_; ++i)
        if (mask >> i & 1) xs.push_back(static_cast<int>(i));
      if (!nary_subset_ok(xs, nary, verdict, budget)) return verdict;
    }
    return verdict;
  }

  // the three closure-operator laws on a sample of subsets
  struct LawsReport {
    bool extensive = true;
    bool monotone = true;
    bool idempotent = true;
    long samples = 0;
    bool ok() const { return extensive && monotone && idempotent; }
  };

  LawsReport closure_laws(const std::vector<std::vector<int>>& sample,
                          const ClosureBudget& budget = {}) const {
    LawsReport rep;
    std::vector<Bitset> closures;
    for (const auto& xs : sample) {
      Bitset c = closure_C(xs, budget);
      Bitset xset(static_cast<std::size_t>(n_));
      for (int x : xs) xset.set(static_cast<std::size_t>(x));
      if (!xset.subset_of(c)) rep.extensive = false;
      if (!(closure_C(c.members(), budget) == c)) rep.idempotent = false;
      closures.push_back(std::move(c));
      ++rep.samples;
    }
    for (std::size_t i = 0; i < sample.size(); ++i)
      for (std::size_t j = 0; j < sample.size(); ++j) {
        if (i == j) continue;
        Bitset si(static_cast<std::size_t>(n_)), sj(static_cast<std::size_t>(n_));
        for (int x : sample[i]) si.set(static_cast<std::size_t>(x));
        for (int x : sample[j]) sj.set(static_cast<std::size_t>(x));
        if (si.subset_of(sj) && !closures[i].subset_of(closures[j])) rep.monotone = false;
      }
    return rep;
  }

  // all subsets of the group, for exhaustive law checks on tiny groups
  std::vector<std::vector<int>> all_subsets() const {
    if (n_ > 12) throw BudgetError("all_subsets: group too large");
    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << n_); ++mask) {
      std::vector<int> xs;
      for (long i = 0; i < n_; ++i)
        if (mask >> i & 1) xs.push_back(static_cast<int>(i));
      out.push_back(std::move(xs));
    }
    return out;
  }

  // C(X) = G iff the classes of X invariably generate
  bool closure_reaches_group(const std::vector<int>& xs) const {
    return igen_classes_check(class_set_of(xs));
  }

 private:
  Lattice lat_;
  long n_ = 0;
  std::vector<std::vector<int>> class_members_;
  mutable std::map<std::vector<int>, Bitset> npart_memo_;
  mutable const MStarFamily* family_ = nullptr;
  mutable std::unique_ptr<MStarFamily> family_storage_;

  std::vector<int> class_set_of(const std::vector<int>& xs) const {
    std::vector<int> cls;
    for (int x : xs) cls.push_back(lat_.table().class_of_id(x));
    std::sort(cls.begin(), cls.end());
    cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
    return cls;
  }

  bool igen_classes_check(const std::vector<int>& cls) const {
    if (!family_) {
      family_storage_ = std::make_unique<MStarFamily>(
          build_mstar_family(lat_.group(), lat_.table(), lat_.maximal_subgroups()));
      family_ = family_storage_.get();
    }
    if (cls.empty()) return n_ == 1;
    return igen_check_classes(*family_, cls);
  }

  // intersection over all conjugate tuples of the generated subgroups, for a
  // duplicate-free sorted class set
  Bitset intersection_part(const std::vector<int>& cls, const ClosureBudget& budget) const {
    auto memo = npart_memo_.find(cls);
    if (memo != npart_memo_.end()) return memo->second;
    long tuples = 1;
    for (std::size_t i = 0; i < cls.size(); ++i)
      tuples *= static_cast<long>(class_members_[static_cast<std::size_t>(cls[i])].size());
    if (tuples > budget.max_tuple_evals)
      throw BudgetError("closure_C: conjugate tuple budget exceeded");
    Bitset inter(static_cast<std::size_t>(n_));
    if (cls.empty()) {
      inter.set(0);
      npart_memo_.emplace(cls, inter);
      return inter;
    }
    for (long i = 0; i < n_; ++i) inter.set(static_cast<std::size_t>(i));
    std::vector<int> pick(cls.size());
    bool trivial_reached = false;
    enumerate_tuples(cls, 0, pick, inter, trivial_reached);
    // the intersection is normal: conjugating whole tuples permutes the terms
    for (int x : inter.members())
      for (const Perm& gen : lat_.group().generators()) {
        Perm img = perm_conjugate(lat_.table().elements()[static_cast<std::size_t>(x)], gen);
        if (!inter.test(static_cast<std::size_t>(lat_.table().index_of(img))))
          throw InputError("closure_C: intersection is not normal (internal)");
      }
    npart_memo_.emplace(cls, inter);
    return inter;
  }

  void enumerate_tuples(const std::vector<int>& cls, std::size_t level, std::vector<int>& pick,
                        Bitset& inter, bool& stop) const {
    if (stop) return;
    if (level == cls.size()) {
      inter &= lat_.close(pick);
      if (inter.count() == 1) stop = true;  // cannot shrink further
      return;
    }
    for (int x : class_members_[static_cast<std::size_t>(cls[level])]) {
      pick[static_cast<std::size_t>(level)] = x;
      enumerate_tuples(cls, level + 1, pick, inter, stop);
      if (stop) return;
    }
  }

  void cn_rec(const std::vector<int>& xs, std::size_t start, int left, std::vector<int>& subset,
              Bitset& out, const ClosureBudget& budget) const {
    if (!subset.empty()) {
      Bitset c = intersection_part(class_set_of(subset), budget);
      for (int x : subset) c.set(static_cast<std::size_t>(x));
      out |= c;
    }
    if (left == 0) return;
    for (std::size_t i = start; i < xs.size(); ++i) {
      subset.push_back(xs[i]);
      cn_rec(xs, i + 1, left - 1, subset, out, budget);
      subset.pop_back();
    }
  }

  bool nary_subset_ok(const std::vector<int>& xs, int nary, NaryVerdict& verdict,
                      const ClosureBudget& budget) const {
    Bitset fix = cn_fixpoint(xs, nary, budget);
    Bitset cx(static_cast<std::size_t>(n_));
    if (closure_reaches_group(xs)) {
      for (long i = 0; i < n_; ++i) cx.set(static_cast<std::size_t>(i));
    } else {
      cx = closure_C(xs, budget);
    }
    if (!(cx == fix)) {
      verdict.kind = NaryVerdict::no;
      verdict.witness = xs;
      return false;
    }
    return true;
  }
};

// gap check of the n-ary theorem: consecutive members of irb_I differ by at
// most n-1
inline bool nario_gap_check(const std::vector<int>& irb, int nary) {
  for (std::size_t i = 1; i < irb.size(); ++i)
    if (irb[i] - irb[i - 1] > nary - 1) return false;
  return true;
}

}  // namespace invgen
