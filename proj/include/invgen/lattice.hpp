#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "invgen/bsgs.hpp"
#include "invgen/classes.hpp"
#include "invgen/common.hpp"
#include "invgen/perm.hpp"

namespace invgen {

// One conjugacy class of subgroups.
struct SubgroupRecord {
  std::vector<Perm> gens;
  long order = 0;
  long conjugates = 1;
  bool normal = false;
  bool maximal = false;
  std::vector<int> element_ids;  // sorted member ids of the class representative
  int class_id = -1;
};

// Complete subgroup lattice of a group within the lattice budget.
//
// Enumeration is bottom-up cyclic extension seeded with all 2-generated
// subgroups (the seeds cover perfect subgroups, which prime-step extensions
// cannot reach), deduplicated by exact element bitsets and reduced up to
// conjugacy by the orbit of each new subgroup under generator conjugation.
class Lattice {
 public:
  Lattice(const PermGroup& g, const ClassTable& table, long budget)
      : group_(g), table_(table) {
    if (g.order() > (u128)budget)
      throw BudgetError("lattice budget exceeded: order " + to_string_u128(g.order()));
    n_ = table_.group_order();
    build_tables();
    build_subgroups();
    mark_maximal();
  }

  Lattice(const PermGroup& g, long budget)
      : Lattice(g, conjugacy_classes(g, budget), budget) {}

  const PermGroup& group() const { return group_; }
  const ClassTable& table() const { return table_; }
  long group_size() const { return n_; }

  int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b)]; }
  int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
  int elt_order(int a) const { return table_.order_of_class(table_.class_of_id(a)); }
  const Perm& element(int a) const { return table_.elements()[static_cast<std::size_t>(a)]; }

  std::size_t num_subgroups() const { return subs_.size(); }
  std::size_t num_classes() const { return classes_.size(); }
  const Bitset& sub_set(int sid) const { return subs_[static_cast<std::size_t>(sid)].set; }
  long sub_order(int sid) const { return subs_[static_cast<std::size_t>(sid)].order; }
  int sub_class(int sid) const { return subs_[static_cast<std::size_t>(sid)].class_id; }

  struct SubClass {
    int rep_sid = -1;
    std::vector<int> member_sids;
    std::vector<int> rep_gens;  // element ids generating the representative
    long order = 0;
    bool normal = false;
    bool maximal = false;
  };
  const SubClass& cls(int cid) const { return classes_[static_cast<std::size_t>(cid)]; }

  // ------- spec-facing views -------

  std::vector<SubgroupRecord> all_subgroups() const {
    std::vector<SubgroupRecord> out;
    for (std::size_t c = 0; c < classes_.size(); ++c) out.push_back(record(static_cast<int>(c)));
    return out;
  }

  std::vector<SubgroupRecord> maximal_subgroups() const {
    std::vector<SubgroupRecord> out;
    for (std::size_t c = 0; c < classes_.size(); ++c)
      if (classes_[c].maximal) out.push_back(record(static_cast<int>(c)));
    return out;
  }

  std::vector<SubgroupRecord> normal_subgroups() const {
    std::vector<SubgroupRecord> out;
    for (std::size_t c = 0; c < classes_.size(); ++c)
      if (classes_[c].normal) out.push_back(record(static_cast<int>(c)));
    return out;
  }

  // minimal among the nontrivial normal subgroups; for a simple group this
  // is the group itself
  std::vector<SubgroupRecord> minimal_normal_subgroups() const {
    std::vector<SubgroupRecord> out;
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      if (!classes_[c].normal || classes_[c].order == 1) continue;
      bool minimal = true;
      for (std::size_t d = 0; d < classes_.size() && minimal; ++d) {
        if (!classes_[d].normal || d == c || classes_[d].order == 1) continue;
        if (classes_[d].order < classes_[c].order &&
            sub_set(classes_[d].rep_sid).subset_of(sub_set(classes_[c].rep_sid)))
          minimal = false;
      }
      if (minimal) out.push_back(record(static_cast<int>(c)));
    }
    return out;
  }

  // intersection of all maximal subgroups
  std::vector<int> frattini_ids() const {
    Bitset frat(static_cast<std::size_t>(n_));
    for (long i = 0; i < n_; ++i) frat.set(static_cast<std::size_t>(i));
    for (const auto& s : subs_)
      if (classes_[static_cast<std::size_t>(s.class_id)].maximal) frat &= s.set;
    return frat.members();
  }

  PermGroup subgroup_from_ids(const std::vector<int>& ids) const {
    std::vector<Perm> gens;
    for (int id : ids) gens.push_back(element(id));
    if (gens.empty()) return PermGroup::trivial(group_.degree());
    return PermGroup(group_.degree(), gens);
  }

  PermGroup class_rep_group(int cid) const {
    std::vector<Perm> gens;
    for (int id : classes_[static_cast<std::size_t>(cid)].rep_gens) gens.push_back(element(id));
    if (gens.empty()) return PermGroup::trivial(group_.degree());
    return PermGroup(group_.degree(), gens);
  }

  // id of the subgroup equal to the closure of the given element ids
  int closure_sid(const std::vector<int>& seed) const {
    Bitset set = close(seed);
    auto it = sub_index_.find(set.words());
    if (it == sub_index_.end()) throw InputError("closure_sid: internal lattice inconsistency");
    return it->second;
  }

  int join_sid(int sid, int x) const {
    auto key = std::make_pair(sid, x);
    auto it = join_memo_.find(key);
    if (it != join_memo_.end()) return it->second;
    std::vector<int> seed = gens_of_sid(sid);
    seed.push_back(x);
    int r = closure_sid(seed);
    join_memo_.emplace(key, r);
    return r;
  }

  // small generating element set for any subgroup id (cached)
  std::vector<int> gens_of_sid(int sid) const {
    if (sub_gens_cache_.size() != subs_.size()) sub_gens_cache_.assign(subs_.size(), {});
    auto& slot = sub_gens_cache_[static_cast<std::size_t>(sid)];
    if (slot.empty() && subs_[static_cast<std::size_t>(sid)].order > 1)
      slot = small_generating_ids(subs_[static_cast<std::size_t>(sid)].set);
    return slot;
  }

  int trivial_sid() const { return trivial_sid_; }
  int full_sid() const { return full_sid_; }

  // longest strictly increasing subgroup chain from sid up to G
  int chain_to_top(int sid) const {
    ensure_chain_dp();
    return chain_dp_[static_cast<std::size_t>(sid)];
  }

  // ------- generation quantities (classical, exact) -------

  // smallest size of a generating set
  int d_classical(std::vector<int>* witness = nullptr) const {
    if (n_ == 1) {
      if (witness) witness->clear();
      return 0;
    }
    for (int k = 1;; ++k) {
      std::vector<int> acc;
      if (d_search(acc, trivial_sid_, k)) {
        if (witness) *witness = acc;
        return k;
      }
    }
  }

  // largest size of a minimal generating set
  int m_classical(std::vector<int>* witness = nullptr) const {
    if (n_ == 1) {
      if (witness) witness->clear();
      return 0;
    }
    ensure_chain_dp();
    int best = 0;
    std::vector<int> acc, best_acc, joins;
    m_search(acc, joins, trivial_sid_, best, best_acc);
    if (witness) *witness = best_acc;
    return best;
  }

  bool is_soluble() const;    // defined below (uses derived series, no lattice needed)
  bool is_nilpotent() const {
    // every Sylow subgroup normal: the p-elements form a subgroup of full p-part
    std::vector<long> factors;
    for (long p : prime_factors((u128)n_)) factors.push_back(p);
    for (long p : factors) {
      long ppart = 1;
      long m = n_;
      while (m % p == 0) {
        ppart *= p;
        m /= p;
      }
      std::vector<int> pelems;
      for (long i = 0; i < n_; ++i) {
        long o = elt_order(static_cast<int>(i));
        bool ppower = true;
        long oo = o;
        while (oo > 1) {
          if (oo % p != 0) { ppower = false; break; }
          oo /= p;
        }
        if (ppower) pelems.push_back(static_cast<int>(i));
      }
      if (static_cast<long>(pelems.size()) != ppart) return false;
      Bitset set = close(pelems);
      if (static_cast<long>(set.count()) != ppart) return false;
    }
    return true;
  }

  SubgroupRecord record(int cid) const {
    const SubClass& c = classes_[static_cast<std::size_t>(cid)];
    SubgroupRecord r;
    for (int id : c.rep_gens) r.gens.push_back(element(id));
    r.order = c.order;
    r.conjugates = static_cast<long>(c.member_sids.size());
    r.normal = c.normal;
    r.maximal = c.maximal;
    r.element_ids = sub_set(c.rep_sid).members();
    r.class_id = cid;
    return r;
  }

  Bitset close(const std::vector<int>& seed) const {
    Bitset set(static_cast<std::size_t>(n_));
    std::vector<int> work;
    set.set(0);  // identity has id 0 (lexicographically least image table)
    work.push_back(0);
    std::vector<int> gens;
    for (int s : seed)
      if (!set.test(static_cast<std::size_t>(s))) {
        set.set(static_cast<std::size_t>(s));
        work.push_back(s);
        gens.push_back(s);
      }
    for (std::size_t qi = 0; qi < work.size(); ++qi) {
      for (int s : gens) {
        int t = mul(work[qi], s);
        if (!set.test(static_cast<std::size_t>(t))) {
          set.set(static_cast<std::size_t>(t));
          work.push_back(t);
        }
      }
    }
    return set;
  }

 private:
  PermGroup group_;
  ClassTable table_;
  long n_ = 0;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::vector<int> gen_ids_;

  struct Sub {
    Bitset set;
    long order;
    int class_id;
  };
  std::vector<Sub> subs_;
  std::map<std::vector<std::uint64_t>, int> sub_index_;
  std::vector<SubClass> classes_;
  int trivial_sid_ = -1;
  int full_sid_ = -1;
  mutable std::map<std::pair<int, int>, int> join_memo_;
  mutable std::vector<std::vector<int>> sub_gens_cache_;
  mutable std::vector<int> chain_dp_;

  void build_tables() {
    // identity column is the identity map; every other column is a parent
    // column composed with a generator column, so the whole table costs
    // O(n^2) int operations after the generator columns.
    const auto& elems = table_.elements();
    mul_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), -1);
    std::vector<int> id_of_gen;
    for (const Perm& g : group_.generators()) {
      int gid = static_cast<int>(table_.index_of(g));
      id_of_gen.push_back(gid);
    }
    gen_ids_ = id_of_gen;
    // generator columns by explicit composition
    for (int gid : id_of_gen) {
      if (mul_[static_cast<std::size_t>(gid)] >= 0) continue;  // column already built (duplicate gen)
      for (long a = 0; a < n_; ++a)
        mul_[static_cast<std::size_t>(a) * n_ + gid] =
            static_cast<int>(table_.index_of(perm_compose(elems[static_cast<std::size_t>(a)], elems[static_cast<std::size_t>(gid)])));
    }
    // identity column
    for (long a = 0; a < n_; ++a) mul_[static_cast<std::size_t>(a) * n_ + 0] = static_cast<int>(a);
    // BFS over right multiplication; every non-generator column is a parent
    // column chased through a generator column
    std::vector<int> parent(static_cast<std::size_t>(n_), -1), via(static_cast<std::size_t>(n_), -1);
    std::vector<int> queue{0};
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    seen[0] = 1;
    for (int gid : id_of_gen)
      if (!seen[static_cast<std::size_t>(gid)]) {
        seen[static_cast<std::size_t>(gid)] = 1;
        queue.push_back(gid);
      }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int b = queue[qi];
      for (int gid : id_of_gen) {
        int c = mul_[static_cast<std::size_t>(b) * n_ + gid];
        if (!seen[static_cast<std::size_t>(c)]) {
          seen[static_cast<std::size_t>(c)] = 1;
          parent[static_cast<std::size_t>(c)] = b;
          via[static_cast<std::size_t>(c)] = gid;
          queue.push_back(c);
        }
      }
    }
    for (int c : queue) {
      if (parent[static_cast<std::size_t>(c)] < 0) continue;  // identity or generator column
      int b = parent[static_cast<std::size_t>(c)], gid = via[static_cast<std::size_t>(c)];
      for (long a = 0; a < n_; ++a)
        mul_[static_cast<std::size_t>(a) * n_ + c] =
            mul_[static_cast<std::size_t>(mul_[static_cast<std::size_t>(a) * n_ + b]) * n_ + gid];
    }
    inv_.assign(static_cast<std::size_t>(n_), -1);
    for (long a = 0; a < n_; ++a)
      inv_[static_cast<std::size_t>(a)] = static_cast<int>(table_.index_of(perm_inverse(elems[static_cast<std::size_t>(a)])));
  }

  int conj_by(int x, int g) const { return mul(mul(inv(g), x), g); }

  int add_subgroup(Bitset set) {
    auto it = sub_index_.find(set.words());
    if (it != sub_index_.end()) return it->second;
    int cid = static_cast<int>(classes_.size());
    int first_sid = static_cast<int>(subs_.size());
    SubClass cls;
    cls.order = static_cast<long>(set.count());
    // orbit of the subgroup under conjugation by group generators
    std::vector<Bitset> orbit{set};
    sub_index_.emplace(set.words(), first_sid);
    cls.member_sids.push_back(first_sid);
    subs_.push_back(Sub{set, cls.order, cid});
    for (std::size_t qi = 0; qi < orbit.size(); ++qi) {
      for (int gid : gen_ids_) {
        Bitset img(static_cast<std::size_t>(n_));
        for (int x : orbit[qi].members()) img.set(static_cast<std::size_t>(conj_by(x, gid)));
        if (sub_index_.find(img.words()) == sub_index_.end()) {
          sub_index_.emplace(img.words(), static_cast<int>(subs_.size()));
          cls.member_sids.push_back(static_cast<int>(subs_.size()));
          subs_.push_back(Sub{img, cls.order, cid});
          orbit.push_back(std::move(img));
        }
      }
    }
    // canonical representative: lexicographically least member bitset
    int rep = cls.member_sids[0];
    for (int sid : cls.member_sids)
      if (subs_[static_cast<std::size_t>(sid)].set < subs_[static_cast<std::size_t>(rep)].set) rep = sid;
    cls.rep_sid = rep;
    cls.normal = cls.member_sids.size() == 1;
    cls.rep_gens = small_generating_ids(subs_[static_cast<std::size_t>(rep)].set);
    classes_.push_back(std::move(cls));
    return first_sid;
  }

  std::vector<int> small_generating_ids(const Bitset& set) const {
    std::vector<int> gens;
    Bitset have(static_cast<std::size_t>(n_));
    have.set(0);
    if (set.count() == 1) return gens;
    while (true) {
      int next = -1;
      for (int x : set.members())
        if (!have.test(static_cast<std::size_t>(x))) { next = x; break; }
      if (next < 0) break;
      gens.push_back(next);
      have = close(gens);
    }
    return gens;
  }

  void build_subgroups() {
    // trivial subgroup and G itself
    Bitset triv(static_cast<std::size_t>(n_));
    triv.set(0);
    trivial_sid_ = 0;
    add_subgroup(triv);
    Bitset full(static_cast<std::size_t>(n_));
    for (long i = 0; i < n_; ++i) full.set(static_cast<std::size_t>(i));
    full_sid_ = static_cast<int>(subs_.size());
    add_subgroup(full);

    // class representatives of elements
    std::vector<int> class_rep_ids;
    for (std::size_t c = 0; c < table_.num_classes(); ++c)
      class_rep_ids.push_back(static_cast<int>(table_.index_of(table_.rep(static_cast<int>(c)))));

    // 2-generated seeds: <class rep, y> for every y
    for (int r : class_rep_ids) {
      if (r == 0) continue;
      for (long y = 1; y < n_; ++y) add_subgroup(close({r, static_cast<int>(y)}));
    }

    // cyclic extension: H extended by x normalizing H with x^q in H, q prime
    std::vector<long> primes = prime_factors((u128)n_);
    for (std::size_t c = 0; c < classes_.size(); ++c) {  // classes_ grows during the loop
      const Bitset hset = subs_[static_cast<std::size_t>(classes_[c].rep_sid)].set;
      long horder = classes_[c].order;
      if (horder == n_) continue;
      std::vector<int> hgens = classes_[c].rep_gens;
      for (long xl = 1; xl < n_; ++xl) {
        int x = static_cast<int>(xl);
        if (hset.test(static_cast<std::size_t>(x))) continue;
        bool normalizes = true;
        for (int hg : hgens)
          if (!hset.test(static_cast<std::size_t>(conj_by(hg, x)))) { normalizes = false; break; }
        if (!normalizes) continue;
        for (long q : primes) {
          if ((n_ / horder) % q != 0) continue;
          // x^q
          int xq = x;
          for (long e = 1; e < q; ++e) xq = mul(xq, x);
          if (!hset.test(static_cast<std::size_t>(xq))) continue;
          Bitset ext = hset;
          int xi = x;
          for (long e = 1; e < q; ++e) {
            for (int h : hset.members()) ext.set(static_cast<std::size_t>(mul(h, xi)));
            xi = mul(xi, x);
          }
          add_subgroup(std::move(ext));
          break;  // smallest valid prime is enough; other primes rediscovered via iteration
        }
      }
    }
  }

  void mark_maximal() {
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      if (classes_[c].order == n_) { classes_[c].maximal = false; continue; }
      const Bitset& h = sub_set(classes_[c].rep_sid);
      bool maximal = true;
      for (const auto& s : subs_) {
        if (s.order <= classes_[c].order || s.order == n_) continue;
        if (s.order % classes_[c].order != 0) continue;
        if (h.subset_of(s.set)) { maximal = false; break; }
      }
      classes_[c].maximal = maximal;
    }
  }

  void ensure_chain_dp() const {
    if (!chain_dp_.empty()) return;
    chain_dp_.assign(subs_.size(), 0);
    std::vector<int> order(subs_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return subs_[static_cast<std::size_t>(a)].order > subs_[static_cast<std::size_t>(b)].order;
    });
    for (int sid : order) {
      const auto& s = subs_[static_cast<std::size_t>(sid)];
      if (s.order == n_) { chain_dp_[static_cast<std::size_t>(sid)] = 0; continue; }
      int best = 0;
      for (std::size_t t = 0; t < subs_.size(); ++t) {
        const auto& o = subs_[t];
        if (o.order <= s.order || o.order % s.order != 0) continue;
        if (s.set.subset_of(o.set))
          best = std::max(best, 1 + chain_dp_[t]);
      }
      chain_dp_[static_cast<std::size_t>(sid)] = best;
    }
  }

  bool d_search(std::vector<int>& acc, int sid, int remaining) const {
    if (sid == full_sid_) return remaining >= 0 && acc.size() > 0;
    if (remaining == 0) return false;
    int start = acc.empty() ? 1 : acc.back() + 1;
    const Bitset& cur = subs_[static_cast<std::size_t>(sid)].set;
    for (long x = start; x < n_; ++x) {
      if (cur.test(static_cast<std::size_t>(x))) continue;
      int nxt = join_sid(sid, static_cast<int>(x));
      acc.push_back(static_cast<int>(x));
      if (d_search(acc, nxt, remaining - 1)) return true;
      acc.pop_back();
    }
    return false;
  }

  void m_search(std::vector<int>& acc, std::vector<int>& joins, int sid, int& best,
                std::vector<int>& best_acc) const {
    if (sid == full_sid_) {
      // minimal by construction: every x_i stays outside <X \ x_i>
      if (static_cast<int>(acc.size()) > best) {
        best = static_cast<int>(acc.size());
        best_acc = acc;
      }
      return;
    }
    if (static_cast<int>(acc.size()) + chain_to_top(sid) <= best) return;
    int start = acc.empty() ? 1 : acc.back() + 1;
    const Bitset& cur = subs_[static_cast<std::size_t>(sid)].set;
    for (long x = start; x < n_; ++x) {
      if (cur.test(static_cast<std::size_t>(x))) continue;
      // irredundance: adding x must keep each x_i outside the join of the others
      std::vector<int> new_joins(acc.size() + 1);
      bool ok = true;
      for (std::size_t i = 0; i < acc.size(); ++i) {
        int j = join_sid(joins[i], static_cast<int>(x));
        if (subs_[static_cast<std::size_t>(j)].set.test(static_cast<std::size_t>(acc[i]))) { ok = false; break; }
        new_joins[i] = j;
      }
      if (!ok) continue;
      new_joins[acc.size()] = sid;
      int nxt = join_sid(sid, static_cast<int>(x));
      acc.push_back(static_cast<int>(x));
      std::vector<int> saved = joins;
      joins = std::move(new_joins);
      m_search(acc, joins, nxt, best, best_acc);
      joins = std::move(saved);
      acc.pop_back();
    }
  }
};

// ------- generic structure queries that do not need a lattice -------

inline PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Perm> gens;
  auto add_closed = [&](const Perm& p) {
    PermGroup h = gens.empty() ? PermGroup::trivial(g.degree()) : PermGroup(g.degree(), gens);
    if (!h.contains(p)) {
      gens.push_back(p);
      return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < g.generators().size(); ++i)
    for (std::size_t j = 0; j < g.generators().size(); ++j) {
      const Perm &a = g.generators()[i], &b = g.generators()[j];
      Perm comm = perm_compose(perm_compose(perm_inverse(a), perm_inverse(b)), perm_compose(a, b));
      if (!comm.is_identity()) add_closed(comm);
    }
  // normal closure under conjugation by G
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Perm> snapshot = gens;
    for (const Perm& h : snapshot)
      for (const Perm& x : g.generators()) {
        Perm c = perm_conjugate(h, x);
        if (add_closed(c)) changed = true;
      }
  }
  return gens.empty() ? PermGroup::trivial(g.degree()) : PermGroup(g.degree(), gens);
}

inline bool is_soluble(const PermGroup& g) {
  PermGroup cur = g;
  while (cur.order() > 1) {
    PermGroup next = derived_subgroup(cur);
    if (next.order() == cur.order()) return false;
    cur = next;
  }
  return true;
}

inline bool Lattice::is_soluble() const { return invgen::is_soluble(group_); }

// ------- quotient groups -------

// Faithful action of G/N on the right cosets of N (the regular action of the
// quotient).  Kept independent of the lattice so it works for any G within
// the element budget.
struct Quotient {
  PermGroup quotient = PermGroup::trivial(1);
  std::vector<Perm> coset_reps;  // rep[i] lies in coset i; rep[0] in N
  std::vector<Perm> n_elements;  // sorted elements of N

  // image of an arbitrary element of G
  Perm project(const Perm& g) const {
    long k = static_cast<long>(coset_reps.size());
    std::vector<int> im(static_cast<std::size_t>(k));
    for (long i = 0; i < k; ++i)
      im[static_cast<std::size_t>(i)] = coset_index(perm_compose(coset_reps[static_cast<std::size_t>(i)], g));
    return Perm(std::move(im));
  }

  // preimage generators of a subgroup of the quotient: greedy generators of
  // N plus, for each quotient generator s, the representative of the coset
  // s sends coset 0 to (the quotient acts regularly on the cosets).
  std::vector<Perm> lift_gens(const std::vector<Perm>& sub_gens) const {
    std::vector<Perm> out;
    PermGroup cur = PermGroup::trivial(coset_reps[0].degree());
    for (const Perm& n : n_elements) {
      if (!cur.contains(n)) {
        out.push_back(n);
        cur = PermGroup(coset_reps[0].degree(), out);
      }
    }
    for (const Perm& s : sub_gens) out.push_back(coset_reps[static_cast<std::size_t>(s[0])]);
    return out;
  }

  int coset_index(const Perm& g) const {
    Perm least = g;
    for (const Perm& n : n_elements) {
      Perm cand = perm_compose(n, g);
      if (cand < least) least = cand;
    }
    auto it = index.find(least.images());
    if (it == index.end()) throw InputError("coset_index: element outside group");
    return it->second;
  }

  std::map<std::vector<int>, int> index;  // least coset member -> coset id
};

inline Quotient quotient(const PermGroup& g, const PermGroup& n, long degree_budget = -1) {
  if (degree_budget < 0) degree_budget = default_config().quotient_degree_budget;
  for (const Perm& x : n.generators())
    if (!g.contains(x)) throw InputError("quotient: N is not a subgroup of G");
  // normality check on generators
  for (const Perm& x : n.generators())
    for (const Perm& y : g.generators())
      if (!n.contains(perm_conjugate(x, y))) throw InputError("quotient: N is not normal in G");
  u128 index128 = g.order() / n.order();
  if (index128 > (u128)degree_budget) throw BudgetError("quotient: index exceeds degree budget");
  long k = static_cast<long>((long long)index128);

  Quotient q;
  q.n_elements = n.elements();
  auto least_of_coset = [&](const Perm& g0) {
    Perm least = g0;
    for (const Perm& x : q.n_elements) {
      Perm cand = perm_compose(x, g0);
      if (cand < least) least = cand;
    }
    return least;
  };
  // BFS over cosets
  std::vector<Perm> reps;
  Perm id(g.degree());
  Perm l0 = least_of_coset(id);
  q.index[l0.images()] = 0;
  reps.push_back(l0);
  for (std::size_t qi = 0; qi < reps.size(); ++qi) {
    for (const Perm& s : g.generators()) {
      Perm l = least_of_coset(perm_compose(reps[qi], s));
      if (q.index.emplace(l.images(), static_cast<int>(reps.size())).second) {
        reps.push_back(l);
        if (static_cast<long>(reps.size()) > k) throw InputError("quotient: internal coset overflow");
      }
    }
  }
  if (static_cast<long>(reps.size()) != k) throw InputError("quotient: coset count mismatch");
  q.coset_reps = reps;
  std::vector<Perm> qgens;
  for (const Perm& s : g.generators()) {
    std::vector<int> im(static_cast<std::size_t>(k));
    for (long i = 0; i < k; ++i)
      im[static_cast<std::size_t>(i)] = q.index.at(least_of_coset(perm_compose(reps[static_cast<std::size_t>(i)], s)).images());
    qgens.push_back(Perm(std::move(im)));
  }
  q.quotient = PermGroup(static_cast<int>(k), qgens);
  return q;
}

}  // namespace invgen
