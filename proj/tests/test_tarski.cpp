#include <algorithm>

#include "doctest.h"
#include "invgen/builder.hpp"
#include "invgen/tarski.hpp"

using namespace invgen;

namespace {

// independent closure oracle: full tuple enumeration over per-element
// conjugate lists, no class dedup, no fixed first conjugator, no early exit
Bitset brute_closure(const Lattice& lat, const std::vector<int>& xs) {
  long n = lat.group_size();
  Bitset out(static_cast<std::size_t>(n));
  for (int x : xs) out.set(static_cast<std::size_t>(x));
  Bitset inter(static_cast<std::size_t>(n));
  if (xs.empty()) {
    inter.set(0);
    return out | inter;
  }
  for (long i = 0; i < n; ++i) inter.set(static_cast<std::size_t>(i));
  std::vector<std::vector<int>> conjugates;
  for (int x : xs) {
    std::vector<int> cl;
    for (long g = 0; g < n; ++g) cl.push_back(lat.mul(lat.mul(lat.inv(static_cast<int>(g)), x), static_cast<int>(g)));
    std::sort(cl.begin(), cl.end());
    cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
    conjugates.push_back(std::move(cl));
  }
  std::vector<std::size_t> idx(xs.size(), 0);
  while (true) {
    std::vector<int> pick;
    for (std::size_t i = 0; i < xs.size(); ++i) pick.push_back(conjugates[i][idx[i]]);
    inter &= lat.close(pick);
    std::size_t k = xs.size();
    while (k > 0 && idx[k - 1] + 1 == conjugates[k - 1].size()) idx[--k] = 0;
    if (k == 0) break;
    ++idx[k - 1];
  }
  return out | inter;
}

std::vector<int> ids_of(const TarskiContext& ctx, const std::vector<std::string>& cycles, int degree) {
  std::vector<int> out;
  for (const auto& c : cycles)
    out.push_back(static_cast<int>(ctx.lattice().table().index_of(perm_parse(c, degree))));
  return out;
}

}  // namespace

TEST_CASE("closure against the brute-force oracle") {
  for (auto g : {make_sym(3), make_dicyclic(8), make_dihedral(8), make_cyclic(6), make_alt(4)}) {
    TarskiContext ctx(g);
    Rng rng(5);
    long n = ctx.group_size();
    // all singletons and pairs, plus a few random triples
    std::vector<std::vector<int>> sample;
    for (int x = 0; x < n; ++x) sample.push_back({x});
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) sample.push_back({x, y});
    for (int k = 0; k < 10; ++k) {
      std::vector<int> xs;
      for (int j = 0; j < 3; ++j) xs.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
      std::sort(xs.begin(), xs.end());
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
      sample.push_back(xs);
    }
    for (const auto& xs : sample)
      CHECK(ctx.closure_C(xs) == brute_closure(ctx.lattice(), xs));
  }
}

TEST_CASE("closure examples") {
  TarskiContext s3(make_sym(3));
  // X = {(1,2,3), (1,2)} invariably generates S3, so C(X) = S3
  auto xs = ids_of(s3, {"(1,2,3)", "(1,2)"}, 3);
  CHECK(s3.closure_C(xs).count() == 6);
  CHECK(s3.closure_reaches_group(xs));
  // C(empty) = {identity}
  CHECK(s3.closure_C({}).members() == std::vector<int>{0});
  // Q8, X = {i}: C(X) = <i>
  TarskiContext q8(make_dicyclic(8));
  PermGroup q = make_dicyclic(8);
  int i_id = static_cast<int>(q8.lattice().table().index_of(q.generators()[0]));
  CHECK(q8.closure_C({i_id}).count() == 4);
}

TEST_CASE("closure laws hold exhaustively on S3, D8 and Q8") {
  for (auto g : {make_sym(3), make_dihedral(8), make_dicyclic(8)}) {
    TarskiContext ctx(g);
    auto sample = ctx.all_subsets();
    auto rep = ctx.closure_laws(sample);
    CHECK(rep.ok());
    CHECK(rep.samples == static_cast<long>(sample.size()));
    // C(X) = G iff the classes of X invariably generate
    IGenContext ig = IGenContext::build(g);
    for (const auto& xs : sample) {
      std::vector<Perm> perms;
      for (int x : xs) perms.push_back(ctx.lattice().table().elements()[static_cast<std::size_t>(x)]);
      bool closure_full = ctx.closure_C(xs).count() == static_cast<std::size_t>(ctx.group_size());
      CHECK(closure_full == (xs.empty() ? g.is_trivial() : ig.igen_check(perms)));
    }
  }
}

TEST_CASE("the order-18 group is not invariable 2-ary, witness G minus one reflection") {
  PermGroup g = make_c3c3_c2();
  TarskiContext ctx(g);
  const ClassTable& t = ctx.lattice().table();
  // pick g0 outside the translation subgroup: any involution
  int g0 = -1;
  for (long i = 0; i < ctx.group_size(); ++i)
    if (t.order_of_class(t.class_of_id(i)) == 2) { g0 = static_cast<int>(i); break; }
  REQUIRE(g0 >= 0);
  std::vector<int> xs;
  for (long i = 0; i < ctx.group_size(); ++i)
    if (static_cast<int>(i) != g0) xs.push_back(static_cast<int>(i));
  // C_2 fixpoint stays inside X while C(X) = G
  Bitset fix = ctx.cn_fixpoint(xs, 2);
  Bitset xset(static_cast<std::size_t>(ctx.group_size()));
  for (int x : xs) xset.set(static_cast<std::size_t>(x));
  CHECK(fix.subset_of(xset));
  CHECK(ctx.closure_reaches_group(xs));
  // candidate-mode verdict
  std::vector<std::vector<int>> cands{xs};
  auto v = ctx.is_invariable_nary(2, 24, &cands);
  CHECK(v.kind == TarskiContext::NaryVerdict::no);
  CHECK(v.witness == xs);
  // exhaustive verdict agrees (order 18 <= 24)
  auto v2 = ctx.is_invariable_nary(2);
  CHECK(v2.kind == TarskiContext::NaryVerdict::no);
}

TEST_CASE("s3 is invariable 2-ary; abelian groups are 2-ary") {
  CHECK(TarskiContext(make_sym(3)).is_invariable_nary(2).kind == TarskiContext::NaryVerdict::yes);
  for (auto g : {make_cyclic(6), make_elem_abelian(2, 2), make_elem_abelian(3, 2),
                 make_cyclic(12), make_elem_abelian(2, 3)}) {
    CHECK(TarskiContext(g).is_invariable_nary(2).kind == TarskiContext::NaryVerdict::yes);
  }
  // n = 1 genuinely fails for non-cyclic abelian groups: the union of the
  // cyclic closures of a basis of V4 misses the product element
  auto v = TarskiContext(make_elem_abelian(2, 2)).is_invariable_nary(1);
  CHECK(v.kind == TarskiContext::NaryVerdict::no);
  // sym(4) sits exactly at the default cap and the scan finds a genuine
  // witness: {(3,4),(2,3,4),(1,2)(3,4)} invariably generates (so its closure
  // is everything) while the pairwise fixpoint sticks at 13 elements
  TarskiContext s4(make_sym(4));
  auto vs4 = s4.is_invariable_nary(2);
  CHECK(vs4.kind == TarskiContext::NaryVerdict::no);
  CHECK(s4.closure_C(vs4.witness).count() == 24);
  CHECK(s4.cn_fixpoint(vs4.witness, 2).count() < 24);
  // beyond the cap the verdict is an honest budget report
  CHECK(TarskiContext(make_sym(5)).is_invariable_nary(2).kind ==
        TarskiContext::NaryVerdict::budget_exceeded);
}

TEST_CASE("gap check") {
  CHECK(nario_gap_check({2}, 2));
  CHECK(nario_gap_check({2, 3}, 2));
  CHECK(!nario_gap_check({1, 3}, 2));
  CHECK(nario_gap_check({1, 3}, 3));
  // Sym(4): irb = {2,3}, gaps <= 1
  IGenContext s4 = IGenContext::build(make_sym(4));
  CHECK(nario_gap_check(igen_numbers(s4.family).irb, 2));
}
