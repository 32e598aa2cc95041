#include <map>
#include <set>

#include "doctest.h"
#include "invgen/builder.hpp"
#include "invgen/lattice.hpp"
#include "invgen/structure.hpp"

using namespace invgen;

namespace {

// independent subgroup-count oracle: closed subsets by brute force
int brute_subgroup_count(const PermGroup& g, long cap = 16) {
  auto elems = g.elements(cap);
  int n = static_cast<int>(elems.size());
  REQUIRE(n <= 16);
  // multiplication table
  std::map<std::vector<int>, int> idx;
  for (int i = 0; i < n; ++i) idx[elems[i].images()] = i;
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul[a][b] = idx.at(perm_compose(elems[a], elems[b]).images());
  int count = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & 1)) continue;  // identity is element 0 in sorted order
    bool closed = true;
    for (int a = 0; a < n && closed; ++a)
      for (int b = 0; b < n && closed; ++b)
        if ((mask >> a & 1) && (mask >> b & 1) && !(mask >> mul[a][b] & 1)) closed = false;
    if (closed) ++count;
  }
  return count;
}

long total_subgroups(const Lattice& lat) {
  long total = 0;
  for (const auto& rec : lat.all_subgroups()) total += rec.conjugates;
  return total;
}

}  // namespace

TEST_CASE("subgroup counts on classical groups") {
  Lattice s3(make_sym(3), 2000);
  CHECK(total_subgroups(s3) == 6);
  CHECK(s3.num_classes() == 4);
  Lattice q8(make_dicyclic(8), 2000);
  CHECK(total_subgroups(q8) == 6);
  for (const auto& rec : q8.all_subgroups()) CHECK(rec.normal);
  Lattice a5(make_alt(5), 2000);
  CHECK(total_subgroups(a5) == 59);
  CHECK(a5.num_classes() == 9);
}

TEST_CASE("counting identity against the brute-force oracle") {
  for (auto g : {make_sym(3), make_dicyclic(8), make_dihedral(8), make_cyclic(12),
                 make_elem_abelian(2, 3), make_alt(4), make_dicyclic(12), make_dihedral(16)}) {
    Lattice lat(g, 2000);
    CHECK(total_subgroups(lat) == brute_subgroup_count(g));
  }
}

TEST_CASE("maximal subgroups") {
  Lattice a5(make_alt(5), 2000);
  std::multiset<long> orders;
  for (const auto& rec : a5.maximal_subgroups()) orders.insert(rec.order);
  CHECK(orders == std::multiset<long>{6, 10, 12});
  Lattice s4(make_sym(4), 2000);
  std::multiset<long> s4o;
  for (const auto& rec : s4.maximal_subgroups()) s4o.insert(rec.order);
  CHECK(s4o == std::multiset<long>{6, 8, 12});
  Lattice l28(make_l2_8(), 2000);
  std::multiset<long> lo;
  for (const auto& rec : l28.maximal_subgroups()) lo.insert(rec.order);
  CHECK(lo == std::multiset<long>{14, 18, 56});
}

TEST_CASE("frattini subgroups") {
  Lattice q8(make_dicyclic(8), 2000);
  CHECK(q8.frattini_ids().size() == 2);  // the center
  Lattice a5(make_alt(5), 2000);
  CHECK(a5.frattini_ids().size() == 1);
  Lattice c4(make_cyclic(4), 2000);
  CHECK(c4.frattini_ids().size() == 2);
}

TEST_CASE("frattini equals the set of non-generators") {
  for (auto g : {make_sym(4), make_dicyclic(12), make_cyclic(12), make_dicyclic(16),
                 make_f_q8(3), make_dihedral(16)}) {
    Lattice lat(g, 2000);
    Bitset frat(static_cast<std::size_t>(lat.group_size()));
    for (int id : lat.frattini_ids()) frat.set(static_cast<std::size_t>(id));
    for (int x = 0; x < lat.group_size(); ++x) {
      bool nongen = true;
      for (std::size_t sid = 0; sid < lat.num_subgroups() && nongen; ++sid) {
        if (lat.sub_order(static_cast<int>(sid)) == lat.group_size()) continue;
        if (lat.sub_set(static_cast<int>(sid)).test(static_cast<std::size_t>(x))) continue;
        if (lat.join_sid(static_cast<int>(sid), x) == lat.full_sid()) nongen = false;
      }
      CHECK(frat.test(static_cast<std::size_t>(x)) == nongen);
    }
  }
}

TEST_CASE("normal and minimal normal subgroups") {
  PermGroup g = make_f_q8(3);
  Lattice lat(g, 2000);
  auto mins = lat.minimal_normal_subgroups();
  REQUIRE(mins.size() == 1);
  CHECK(mins[0].order == 9);
  Lattice s4(make_sym(4), 2000);
  auto s4mins = s4.minimal_normal_subgroups();
  REQUIRE(s4mins.size() == 1);
  CHECK(s4mins[0].order == 4);
}

TEST_CASE("quotients") {
  PermGroup q8 = make_dicyclic(8);
  // center = <x^2>
  Perm x2 = perm_compose(q8.generators()[0], q8.generators()[0]);
  Quotient q = quotient(q8, PermGroup(q8.degree(), {x2}));
  CHECK(q.quotient.order() == (u128)4);
  for (const Perm& e : q.quotient.elements(10)) CHECK(e.order() <= 2);  // Klein four

  PermGroup s4 = make_sym(4);
  PermGroup v4(4, {perm_parse("(1,2)(3,4)", 4), perm_parse("(1,3)(2,4)", 4)});
  Quotient q2 = quotient(s4, v4);
  CHECK(q2.quotient.order() == (u128)6);
  CHECK(!Lattice(q2.quotient, 100).is_nilpotent());  // S3, not C6

  PermGroup g = make_f_q8(3);
  Quotient q3 = quotient(g, g.affine_tag->v_group());
  CHECK(q3.quotient.order() == (u128)8);
  int involutions = 0;
  for (const Perm& e : q3.quotient.elements(10))
    if (!e.is_identity() && perm_compose(e, e).is_identity()) ++involutions;
  CHECK(involutions == 1);  // quaternion

  CHECK_THROWS_AS(quotient(s4, PermGroup(4, {perm_parse("(1,2)", 4)})), InputError);
  // projection and lifting round-trip
  Perm img = q2.project(perm_parse("(1,2,3)", 4));
  CHECK(img.order() == 3);
}

TEST_CASE("chief series and the m formula") {
  PermGroup s4 = make_sym(4);
  ChiefSeries cs = chief_series(s4);
  CHECK(cs.factor_orders == std::vector<u128>{2, 3, 4});
  CHECK(cs.factor_frattini == std::vector<bool>{false, false, false});
  CHECK(cs.subgroup_gens.size() == 4);
  CHECK(m_formula(s4) == 3);
  CHECK(m_formula(make_cyclic(4)) == 1);
  CHECK(m_formula(make_dicyclic(8)) == 2);
  CHECK(m_formula(make_f_q8(3)) == 3);
  CHECK(m_formula(make_f13_dic12()) == 3);  // structural route, order 2028
  CHECK_THROWS_AS(m_formula(make_alt(5)), InputError);
}

TEST_CASE("solubility and nilpotency") {
  CHECK(is_soluble(make_sym(4)));
  CHECK(is_soluble(make_f13_dic12()));
  CHECK(!is_soluble(make_alt(5)));
  CHECK(!is_soluble(make_builtin("alt29_lemma")));
  CHECK(Lattice(make_dicyclic(8), 100).is_nilpotent());
  CHECK(Lattice(make_cyclic(12), 100).is_nilpotent());
  CHECK(!Lattice(make_sym(3), 100).is_nilpotent());
  CHECK(!Lattice(make_dicyclic(12), 100).is_nilpotent());
}

TEST_CASE("classical d and m") {
  struct Row {
    PermGroup g;
    int d, m;
  };
  std::vector<Row> rows = {
      {make_sym(4), 2, 3},   {make_alt(5), 2, 3},        {make_cyclic(4), 1, 1},
      {make_dicyclic(8), 2, 2}, {make_elem_abelian(2, 3), 3, 3}, {make_cyclic(6), 1, 2},
      {make_sym(3), 2, 2},   {make_alt(4), 2, 2},
  };
  for (auto& r : rows) {
    Lattice lat(r.g, 2000);
    std::vector<int> dw, mw;
    CHECK(lat.d_classical(&dw) == r.d);
    CHECK(lat.m_classical(&mw) == r.m);
    CHECK(static_cast<int>(dw.size()) == r.d);
    CHECK(static_cast<int>(mw.size()) == r.m);
    // the m-witness really is a minimal generating set
    CHECK(lat.closure_sid(mw) == lat.full_sid());
    for (std::size_t i = 0; i < mw.size(); ++i) {
      std::vector<int> rest;
      for (std::size_t j = 0; j < mw.size(); ++j)
        if (j != i) rest.push_back(mw[j]);
      CHECK(lat.closure_sid(rest) != lat.full_sid());
    }
  }
}

TEST_CASE("m_formula agrees with brute force on soluble groups") {
  for (auto g : {make_sym(4), make_cyclic(12), make_dicyclic(12), make_dihedral(12),
                 make_elem_abelian(3, 2), make_f_q8(3), make_c3c3_c2()}) {
    Lattice lat(g, 2000);
    CHECK(m_formula(g) == lat.m_classical());
  }
}

TEST_CASE("chief factors of soluble groups are elementary abelian") {
  for (auto g : {make_sym(4), make_dicyclic(12), make_f_q8(3), make_cyclic(30)}) {
    ChiefSeries cs = chief_series(g);
    u128 product = 1;
    for (std::size_t i = 0; i < cs.factor_orders.size(); ++i) {
      product *= cs.factor_orders[i];
      // prime-power order factor and elementary abelian as a section:
      // N_i / N_{i+1} has prime exponent
      CHECK(prime_factors(cs.factor_orders[i]).size() == 1);
      PermGroup upper(g.degree(), cs.subgroup_gens[i].empty() ? std::vector<Perm>{Perm(g.degree())}
                                                              : cs.subgroup_gens[i]);
      PermGroup lower(g.degree(), cs.subgroup_gens[i + 1].empty()
                                      ? std::vector<Perm>{Perm(g.degree())}
                                      : cs.subgroup_gens[i + 1]);
      CHECK(upper.order() / lower.order() == cs.factor_orders[i]);
      long fp = prime_factors(cs.factor_orders[i])[0];
      Quotient q = quotient(upper, lower);
      for (const Perm& e : q.quotient.elements(1000))
        if (!e.is_identity()) CHECK(e.order() == fp);
    }
    CHECK(product == g.order());
  }
}

TEST_CASE("lattice budget is loud") {
  CHECK_THROWS_AS(Lattice(make_f13_dic12(), 2000), BudgetError);
}
