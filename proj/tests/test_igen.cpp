#include <algorithm>
#include <set>

#include "doctest.h"
#include "invgen/builder.hpp"
#include "invgen/igen.hpp"

using namespace invgen;

TEST_CASE("alt(5): the family is {Y1, Y2} and the core numbers follow") {
  IGenContext ctx = IGenContext::build(make_alt(5));
  REQUIRE(ctx.family.sets.size() == 2);
  std::set<std::vector<int>> sets;
  for (const auto& s : ctx.family.sets) sets.insert(s.members());
  CHECK(sets == std::set<std::vector<int>>{{0, 1, 2}, {0, 1, 3, 4}});

  CHECK(ctx.igen_check({perm_parse("(1,2,3)", 5), perm_parse("(1,2,3,4,5)", 5)}));
  CHECK(!ctx.igen_check({perm_parse("(1,2,3)", 5), perm_parse("(1,3,2)", 5)}));
  CHECK(!ctx.igen_check({perm_parse("(1,2,3)", 5)}));
  CHECK_THROWS_AS(ctx.igen_check({perm_parse("(1,2)", 5)}), InputError);

  IGenReport rep = igen_report(ctx);
  CHECK(rep.d_i == 2);
  CHECK(rep.m_i == 2);
  CHECK(rep.irb == std::vector<int>{2});
  CHECK(rep.iota == 2);
  CHECK(rep.iota_witness.size() == 2);  // both Y1 and Y2
  CHECK(*rep.d_classical == 2);
  CHECK(*rep.m_classical == 3);
  CHECK(rep.is_bi);
  CHECK(!*rep.is_b);
  // Frat_I = identity + involutions
  CHECK(rep.frat.primary_classes == std::vector<int>{0, 1});
  CHECK(rep.frat.primary_elements == 16);
}

TEST_CASE("sym(4) numbers") {
  IGenContext ctx = IGenContext::build(make_sym(4));
  IGenReport rep = igen_report(ctx);
  CHECK(rep.d_i == 2);
  CHECK(rep.m_i == 3);
  CHECK(rep.irb == std::vector<int>{2, 3});
  CHECK(*rep.d_classical == 2);
  CHECK(*rep.m_classical == 3);
  CHECK(!rep.is_bi);
  CHECK(rep.iota >= rep.m_i);
}

TEST_CASE("order-18 counterexample group: d_I = m_I = 3, iota = 3") {
  IGenContext ctx = IGenContext::build(make_c3c3_c2());
  IGenReport rep = igen_report(ctx);
  CHECK(rep.family_size == 5);
  CHECK(rep.d_i == 3);
  CHECK(rep.m_i == 3);
  CHECK(rep.iota == 3);
  CHECK(rep.irb == std::vector<int>{3});
}

TEST_CASE("f3f3_q8: d_I = m_I = 3, B_I but not B, CP") {
  IGenContext ctx = IGenContext::build(make_f_q8(3));
  IGenReport rep = igen_report(ctx);
  CHECK(rep.d_i == 3);
  CHECK(rep.m_i == 3);
  CHECK(rep.is_bi);
  CHECK(!*rep.is_b);
  CHECK(rep.is_cp);
  CHECK(*rep.d_classical == 2);
  CHECK(*rep.m_classical == 3);
}

TEST_CASE("igen witnesses are sets of distinct nontrivial classes") {
  for (auto g : {make_alt(5), make_sym(4), make_f_q8(3), make_dicyclic(12)}) {
    IGenContext ctx = IGenContext::build(g);
    auto nums = igen_numbers(ctx.family);
    for (auto w : {nums.d_witness, nums.m_witness}) {
      std::set<int> distinct(w.begin(), w.end());
      CHECK(distinct.size() == w.size());
      CHECK(!distinct.count(0));
      // the witness really invariably generates
      CHECK(igen_check_classes(ctx.family, w));
    }
  }
}

TEST_CASE("nilpotent groups: invariable generation = generation") {
  // concrete instance: Q8 with {i, j}
  PermGroup q8 = make_dicyclic(8);
  IGenContext ctx = IGenContext::build(q8);
  const Perm& x = q8.generators()[0];
  const Perm& y = q8.generators()[1];
  CHECK(ctx.igen_check({x, y}));
  CHECK(nilpotent_igen_check(q8, {x, y}));
  // property over a nilpotent corpus: all subsets of class representatives
  for (auto g : {make_dicyclic(8), make_cyclic(12), make_elem_abelian(2, 2),
                 make_elem_abelian(3, 2), make_dicyclic(16)}) {
    IGenContext c = IGenContext::build(g);
    std::size_t k = c.table.num_classes();
    REQUIRE(k <= 16);
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      std::vector<Perm> xs;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) xs.push_back(c.table.rep(static_cast<int>(i)));
      CHECK(c.igen_check(xs) == nilpotent_igen_check(g, xs));
    }
  }
}

TEST_CASE("chain d <= d_I <= m_I <= iota") {
  for (auto g : {make_alt(5), make_sym(4), make_sym(3), make_f_q8(3), make_c3c3_c2(),
                 make_dicyclic(12), make_dihedral(20), make_cyclic(30), make_alt(4)}) {
    IGenContext ctx = IGenContext::build(g);
    IGenReport rep = igen_report(ctx);
    REQUIRE(rep.d_classical.has_value());
    CHECK(*rep.d_classical <= rep.d_i);
    CHECK(rep.d_i <= rep.m_i);
    CHECK(rep.m_i <= rep.iota);
    CHECK(*rep.d_classical <= *rep.m_classical);
    // irb is inside [d_I, m_I]
    for (int k : rep.irb) {
      CHECK(k >= rep.d_i);
      CHECK(k <= rep.m_i);
    }
  }
}

TEST_CASE("frat_I of alt(6): fused S4 strictly inside fused 3^2:4") {
  PermGroup g = make_alt(6);
  IGenContext ctx = IGenContext::build(g);
  // locate the fusion sets of the order-24 and order-36 maximal classes
  std::vector<Bitset> s4_sets;
  Bitset big(ctx.table.num_classes());
  bool found36 = false;
  for (std::size_t i = 0; i < ctx.family.maximals.size(); ++i) {
    if (ctx.family.maximals[i].order == 24) s4_sets.push_back(ctx.family.fusion_by_maximal[i]);
    if (ctx.family.maximals[i].order == 36) {
      big = ctx.family.fusion_by_maximal[i];
      found36 = true;
    }
  }
  REQUIRE(found36);
  REQUIRE(s4_sets.size() == 2);
  for (const auto& s : s4_sets) {
    CHECK(s.subset_of(big));
    CHECK(s != big);
  }
  // the big one is exactly the classes of order != 5
  for (std::size_t c = 0; c < ctx.table.num_classes(); ++c)
    CHECK(big.test(c) == (ctx.table.order_of_class(static_cast<int>(c)) != 5));
}

TEST_CASE("pote check") {
  CHECK(pote_check(IGenContext::build(make_sym(4))));
  CHECK(pote_check(IGenContext::build(make_cyclic(6))));
  CHECK_THROWS_AS(pote_check(IGenContext::build(make_alt(5))), InputError);
}

TEST_CASE("m_I additivity") {
  AdditivityResult r = mi_additivity_check(make_sym(3), make_cyclic(5));
  CHECK(r.mi_a == 2);
  CHECK(r.mi_b == 1);
  CHECK(r.mi_product == 3);
  CHECK(r.equal);
  AdditivityResult r2 = mi_additivity_check(make_cyclic(2), make_cyclic(2));
  CHECK(r2.mi_product == 2);
  CHECK(r2.equal);
}

TEST_CASE("lemma 2.1(iii) instance: lift of a quotient igen set plus a module generator") {
  PermGroup g = make_f_q8(3);
  const AffineTag& tag = *g.affine_tag;
  IGenContext ctx = IGenContext::build(g);
  // i and j lift to (0,i), (0,j); v any nonzero translation
  Perm i = tag.matrix_perm(tag.k_gens[0]);
  Perm j = tag.matrix_perm(tag.k_gens[1]);
  Perm v = tag.translation_perm({1, 0});
  CHECK(ctx.igen_check({i, j, v}));
  // and the projections {i,j} invariably generate Q8 = G/V
  Quotient q = quotient(g, tag.v_group());
  IGenContext qctx = IGenContext::build(q.quotient);
  CHECK(qctx.igen_check({q.project(i), q.project(j)}));
}

TEST_CASE("is_independent matches the incremental iota search") {
  for (auto g : {make_alt(5), make_sym(4), make_c3c3_c2(), make_f_q8(3)}) {
    IGenContext ctx = IGenContext::build(g);
    std::size_t f = ctx.family.sets.size();
    REQUIRE(f <= 12);
    int brute_best = 0;
    for (unsigned mask = 1; mask < (1u << f); ++mask) {
      std::vector<int> subset;
      for (std::size_t i = 0; i < f; ++i)
        if (mask >> i & 1) subset.push_back(static_cast<int>(i));
      if (is_independent(ctx.family, subset))
        brute_best = std::max(brute_best, static_cast<int>(subset.size()));
    }
    CHECK(iota_of_family(ctx.family) == brute_best);
  }
}

TEST_CASE("iota on a singleton family") {
  // one proper member: removing it enlarges the (empty) intersection to the
  // whole class universe, so it is independent on its own
  MStarFamily fam;
  fam.num_classes = 4;
  Bitset s(4);
  s.set(0);
  s.set(1);
  fam.sets.push_back(s);
  fam.provenance.push_back({0});
  CHECK(iota_of_family(fam) == 1);
}

TEST_CASE("ibp spot checks") {
  IBPResult s4 = has_ibp(make_sym(4));
  CHECK(!s4.has_ibp);
  CHECK(s4.witness_d_i < s4.witness_m_i);
  CHECK(has_ibp(make_psl2(5)).has_ibp);
  IBPResult f5 = has_ibp(make_f_q8(5));
  CHECK(!f5.has_ibp);
  CHECK(f5.witness_order == 100);  // N x| <i>
  CHECK(f5.witness_d_i == 2);
  CHECK(f5.witness_m_i == 3);
  CHECK(has_ibp(make_f_q8(3)).has_ibp);
}

TEST_CASE("frat_I primary vs variant on soluble groups") {
  for (auto g : {make_sym(4), make_c3c3_c2(), make_dicyclic(12), make_f_q8(3)}) {
    IGenContext ctx = IGenContext::build(g);
    FratIResult f = frat_i(ctx.family, ctx.table);
    CHECK(f.primary_classes == f.variant_classes);
  }
  // alt(6) has comparable fused maximals (the S4 sets sit inside the 3^2:4
  // set), which is exactly what the soluble lemma rules out; the two
  // intersections still coincide here and equal identity + involutions
  IGenContext a6 = IGenContext::build(make_alt(6));
  FratIResult f6 = frat_i(a6.family, a6.table);
  CHECK(f6.primary_classes == std::vector<int>{0, 1});
  CHECK(a6.table.order_of_class(1) == 2);
  CHECK(f6.variant_classes == f6.primary_classes);
  CHECK(f6.maximal_member_indices.size() == 3);  // two A5 fusions + the 3^2:4 fusion
}
