#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "invgen/common.hpp"
#include "invgen/perm.hpp"

namespace invgen {

// Deterministic Schreier-Sims stabilizer chain.  Base points are the
// smallest non-fixed points (optionally forced through a hint prefix),
// orbits are extended incrementally in FIFO order and generators are kept
// in insertion order, so the chain, the order and every witness are
// reproducible bit-for-bit for a fixed input.
class StabilizerChain {
 public:
  StabilizerChain(int degree, const std::vector<Perm>& generators,
                  std::vector<int> base_hint = {})
      : degree_(degree), base_hint_(std::move(base_hint)) {
    for (int pt : base_hint_) {
      if (pt < 0 || pt >= degree_) throw InputError("base hint point out of range");
      new_level(pt);
    }
    for (const Perm& g : generators) {
      if (g.degree() != degree_) throw InputError("generator degree mismatch");
      if (!g.is_identity()) insert(g, 0);
    }
    process_pending();
  }

  int degree() const { return degree_; }
  std::size_t depth() const { return levels_.size(); }
  int base_point(std::size_t level) const { return levels_[level].base; }

  u128 order() const {
    u128 result = 1;
    for (const auto& lv : levels_) {
      u128 next = result * (u128)lv.orbit.size();
      if (next / (u128)lv.orbit.size() != result)
        throw BudgetError("group order exceeds 128 bits");
      result = next;
    }
    return result;
  }

  bool contains(const Perm& g) const {
    if (g.degree() != degree_) throw InputError("contains: degree mismatch");
    Perm r = g;
    for (const auto& lv : levels_) {
      int img = r[lv.base];
      int idx = lv.orbit_pos[static_cast<std::size_t>(img)];
      if (idx == 0) return false;
      r = perm_compose(r, lv.inv_transversal[static_cast<std::size_t>(idx - 1)]);
    }
    return r.is_identity();
  }

  // All elements, sorted lexicographically by image table.
  std::vector<Perm> elements(long budget) const {
    u128 n = order();
    if (n > (u128)budget)
      throw BudgetError("element enumeration budget exceeded: order " + to_string_u128(n) +
                        " > " + std::to_string(budget));
    std::vector<Perm> out;
    out.reserve(static_cast<std::size_t>((unsigned long long)n));
    Perm id(degree_);
    enumerate_rec(id, 0, out);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Generators of the pointwise stabilizer of the first k base points: the
  // strong generators living at levels >= k.
  std::vector<Perm> stabilizer_generators(std::size_t k = 1) const {
    std::vector<Perm> out;
    for (std::size_t i = k; i < levels_.size(); ++i)
      for (const Perm& g : levels_[i].gens) out.push_back(g);
    return out;
  }

 private:
  struct Level {
    int base;
    std::vector<Perm> gens;
    std::vector<int> orbit;                    // discovery order; orbit[0] == base
    std::vector<int> orbit_pos;                // point -> index+1, 0 if absent
    std::vector<Perm> transversal;             // u with base^u = orbit[i]
    std::vector<Perm> inv_transversal;
    std::deque<std::pair<int, int>> pending;   // (orbit index, gen index) to verify
  };

  int degree_;
  std::vector<int> base_hint_;
  std::vector<Level> levels_;

  void new_level(int base) {
    Level lv;
    lv.base = base;
    lv.orbit_pos.assign(static_cast<std::size_t>(degree_), 0);
    lv.orbit.push_back(base);
    lv.orbit_pos[static_cast<std::size_t>(base)] = 1;
    lv.transversal.push_back(Perm(degree_));
    lv.inv_transversal.push_back(Perm(degree_));
    levels_.push_back(std::move(lv));
  }

  // strip g through levels >= from; returns (residue, level it stopped at)
  std::pair<Perm, std::size_t> strip(Perm g, std::size_t from) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      const Level& lv = levels_[i];
      int img = g[lv.base];
      int idx = lv.orbit_pos[static_cast<std::size_t>(img)];
      if (idx == 0) return {std::move(g), i};
      g = perm_compose(g, lv.inv_transversal[static_cast<std::size_t>(idx - 1)]);
    }
    return {std::move(g), levels_.size()};
  }

  void insert(const Perm& g, std::size_t at_least) {
    auto [res, lvl] = strip(g, at_least);
    if (res.is_identity()) return;
    if (lvl == levels_.size()) {
      int base = -1;
      for (int i = 0; i < degree_; ++i)
        if (res[i] != i) { base = i; break; }
      new_level(base);
    }
    add_generator(lvl, res);
  }

  // The residue fixes the bases of all shallower levels, so it belongs to
  // the generating set S_i of every level i <= li.  Orbits at every such
  // level must be re-closed: a residue of a stripped input generator can
  // carry genuinely new group content.
  void add_generator(std::size_t li, const Perm& g) {
    for (std::size_t i = 0; i <= li; ++i) {
      Level& lv = levels_[i];
      int gi = static_cast<int>(lv.gens.size());
      lv.gens.push_back(g);
      for (int idx = 0; idx < static_cast<int>(lv.orbit.size()); ++idx)
        lv.pending.emplace_back(idx, gi);
    }
    for (std::size_t i = 0; i <= li; ++i) extend_orbit(i);
  }

  void extend_orbit(std::size_t li) {
    Level& lv = levels_[li];
    // re-scan the whole orbit; already-known images are cheap no-ops
    for (std::size_t qi = 0; qi < lv.orbit.size(); ++qi) {
      int pt = lv.orbit[qi];
      for (const Perm& s : lv.gens) {
        int img = s[pt];
        if (lv.orbit_pos[static_cast<std::size_t>(img)] == 0) {
          lv.orbit.push_back(img);
          lv.orbit_pos[static_cast<std::size_t>(img)] = static_cast<int>(lv.orbit.size());
          Perm u = perm_compose(lv.transversal[qi], s);
          lv.inv_transversal.push_back(perm_inverse(u));
          lv.transversal.push_back(std::move(u));
          int idx = static_cast<int>(lv.orbit.size()) - 1;
          for (int gi = 0; gi < static_cast<int>(lv.gens.size()); ++gi)
            lv.pending.emplace_back(idx, gi);
        }
      }
    }
  }

  void process_pending() {
    long long work = 0;
    const long long budget = default_config().bsgs_work_budget;
    while (true) {
      std::size_t i = levels_.size();
      while (i > 0 && levels_[i - 1].pending.empty()) --i;
      if (i == 0) return;
      work += static_cast<long long>(degree_) * static_cast<long long>(levels_.size());
      if (work > budget)
        throw BudgetError("stabilizer chain construction budget exceeded (degree " +
                          std::to_string(degree_) + ")");
      Level& lv = levels_[i - 1];
      auto [idx, gi] = lv.pending.front();
      lv.pending.pop_front();
      const Perm& u = lv.transversal[static_cast<std::size_t>(idx)];
      const Perm& s = lv.gens[static_cast<std::size_t>(gi)];
      Perm us = perm_compose(u, s);
      int img = us[lv.base];
      int tidx = lv.orbit_pos[static_cast<std::size_t>(img)];
      // orbit is closed under gens, so img is always present
      Perm schreier = perm_compose(us, lv.inv_transversal[static_cast<std::size_t>(tidx - 1)]);
      insert(schreier, i);
    }
  }

  void enumerate_rec(const Perm& acc, std::size_t level, std::vector<Perm>& out) const {
    if (level == levels_.size()) {
      out.push_back(acc);
      return;
    }
    for (const Perm& u : levels_[level].transversal)
      enumerate_rec(perm_compose(u, acc), level + 1, out);
  }
};

// Forward declaration; defined in builder.hpp.
struct AffineTag;

// An immutable permutation group: generators plus a stabilizer chain.
// Safe to share for read-only queries once constructed.
class PermGroup {
 public:
  PermGroup(int degree, std::vector<Perm> generators, std::vector<int> base_hint = {})
      : degree_(degree), gens_(std::move(generators)) {
    for (const Perm& g : gens_)
      if (g.degree() != degree_) throw InputError("group_from_generators: generator degree mismatch");
    chain_ = std::make_shared<StabilizerChain>(degree_, gens_, std::move(base_hint));
    order_ = chain_->order();
  }

  static PermGroup trivial(int degree) { return PermGroup(degree, {}); }

  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const StabilizerChain& chain() const { return *chain_; }
  u128 order() const { return order_; }

  // order as a plain long; throws when it does not fit
  long order_long() const {
    if (order_ > (u128)0x7fffffffffffffffLL) throw BudgetError("order does not fit in 64 bits");
    return static_cast<long>((long long)order_);
  }

  bool is_trivial() const { return order_ == 1; }

  bool contains(const Perm& p) const {
    if (p.degree() != degree_) throw InputError("contains: degree mismatch");
    return chain_->contains(p);
  }

  std::vector<Perm> elements(long budget) const { return chain_->elements(budget); }
  std::vector<Perm> elements() const { return elements(default_config().element_budget); }

  Perm identity() const { return Perm(degree_); }

  // Orbit partition; cells sorted internally and by smallest point.
  std::vector<std::vector<int>> orbits() const {
    std::vector<int> cell(static_cast<std::size_t>(degree_), -1);
    std::vector<std::vector<int>> out;
    for (int start = 0; start < degree_; ++start) {
      if (cell[static_cast<std::size_t>(start)] >= 0) continue;
      int id = static_cast<int>(out.size());
      std::vector<int> orb{start};
      cell[static_cast<std::size_t>(start)] = id;
      for (std::size_t qi = 0; qi < orb.size(); ++qi) {
        for (const Perm& g : gens_) {
          int img = g[orb[qi]];
          if (cell[static_cast<std::size_t>(img)] < 0) {
            cell[static_cast<std::size_t>(img)] = id;
            orb.push_back(img);
          }
        }
      }
      std::sort(orb.begin(), orb.end());
      out.push_back(std::move(orb));
    }
    return out;
  }

  bool stabilizes_set(const std::vector<int>& set) const {
    std::vector<char> in(static_cast<std::size_t>(degree_), 0);
    for (int pt : set) {
      if (pt < 0 || pt >= degree_) throw InputError("stabilizes_set: point out of range");
      in[static_cast<std::size_t>(pt)] = 1;
    }
    for (const Perm& g : gens_)
      for (int pt : set)
        if (!in[static_cast<std::size_t>(g[pt])]) return false;
    return true;
  }

  // Stabilizer of a point, from a chain rebuilt with that point as first base.
  PermGroup point_stabilizer(int pt) const {
    if (pt < 0 || pt >= degree_) throw InputError("point_stabilizer: point out of range");
    StabilizerChain chain(degree_, gens_, {pt});
    return PermGroup(degree_, chain.stabilizer_generators());
  }

  // optional construction metadata for affine semidirect products
  std::shared_ptr<const AffineTag> affine_tag;

 private:
  int degree_;
  std::vector<Perm> gens_;
  std::shared_ptr<StabilizerChain> chain_;
  u128 order_ = 1;
};

inline PermGroup group_from_generators(const std::vector<Perm>& gens, int degree) {
  return PermGroup(degree, gens);
}

// Smallest subgroup of the symmetric group containing all given permutations,
// enumerated by plain closure.  Test oracle for the stabilizer chain; kept
// independent of it on purpose.
inline std::vector<Perm> brute_force_closure(const std::vector<Perm>& gens, int degree, long cap) {
  std::vector<Perm> elems{Perm(degree)};
  std::map<std::vector<int>, int> seen;
  seen[elems[0].images()] = 0;
  for (std::size_t qi = 0; qi < elems.size(); ++qi) {
    for (const Perm& g : gens) {
      Perm p = perm_compose(elems[qi], g);
      if (seen.emplace(p.images(), static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(p));
        if (static_cast<long>(elems.size()) > cap)
          throw BudgetError("brute_force_closure cap exceeded");
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

}  // namespace invgen
