#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "invgen/builder.hpp"
#include "invgen/classes.hpp"
#include "invgen/igen.hpp"
#include "invgen/semidirect.hpp"

using namespace invgen;

namespace {

// (order, conjugates) multiset plus fused class-id sets, for route comparison
std::multiset<std::pair<long, long>> shape_of(const std::vector<SubgroupRecord>& recs) {
  std::multiset<std::pair<long, long>> out;
  for (const auto& r : recs) out.insert({r.order, r.conjugates});
  return out;
}

std::set<std::vector<int>> fusion_sets(const PermGroup& g, const ClassTable& t,
                                       const std::vector<SubgroupRecord>& recs) {
  std::set<std::vector<int>> out;
  for (const auto& r : recs) {
    PermGroup m(g.degree(), r.gens);
    out.insert(class_fusion(g, t, m).classes.members());
  }
  return out;
}

}  // namespace

TEST_CASE("submodule enumeration") {
  // scalar -1 on F3^2: every subspace is invariant
  FpMatrix neg(3, 2, 2);
  neg.at(0, 0) = 2;
  neg.at(1, 1) = 2;
  auto subs = all_submodules({neg}, 3, 2);
  CHECK(subs.size() == 6);  // 0, four lines, the plane
  CHECK(maximal_submodules(subs, 2).size() == 4);
  // Q8 acts irreducibly
  auto [mi, mj] = q8_matrices(3);
  auto qsubs = all_submodules({mi, mj}, 3, 2);
  CHECK(qsubs.size() == 2);
  CHECK(maximal_submodules(qsubs, 2).size() == 1);
  CHECK(maximal_submodules(qsubs, 2)[0].dim() == 0);
}

TEST_CASE("semidirect maximal route agrees with the generic lattice") {
  for (auto g : {make_f_q8(3), make_c3c3_c2(), make_asl24()}) {
    ClassTable t = conjugacy_classes(g);
    auto semi = maximal_subgroups_semidirect(g);
    Lattice lat(g, 2000);
    auto generic = lat.maximal_subgroups();
    CHECK(shape_of(semi) == shape_of(generic));
    CHECK(fusion_sets(g, t, semi) == fusion_sets(g, t, generic));
    // every reported maximal really is a subgroup of the stated order
    for (const auto& r : semi) {
      PermGroup m(g.degree(), r.gens);
      CHECK(m.order() == (u128)r.order);
      for (const Perm& x : r.gens) CHECK(g.contains(x));
    }
  }
}

TEST_CASE("f3f3_q8 complements are the conjugates of Q8 only") {
  auto semi = maximal_subgroups_semidirect(make_f_q8(3));
  int complement_classes = 0;
  for (const auto& r : semi)
    if (r.order == 8) {
      ++complement_classes;
      CHECK(r.conjugates == 9);
    }
  CHECK(complement_classes == 1);
  // preimages of the three maximal subgroups of Q8
  int preimages = 0;
  for (const auto& r : semi)
    if (r.order == 36) ++preimages;
  CHECK(preimages == 3);
}

TEST_CASE("asl(2,4) has nontrivial 1-cohomology: several complement classes") {
  auto semi = maximal_subgroups_semidirect(make_asl24());
  int complement_classes = 0;
  for (const auto& r : semi)
    if (r.order == 60) ++complement_classes;
  CHECK(complement_classes >= 2);
  // the preimage classes: maximal subgroups of SL(2,4) = Alt(5) have orders 12, 10, 6
  std::multiset<long> pre;
  for (const auto& r : semi)
    if (r.order != 60) pre.insert(r.order);
  CHECK(pre == std::multiset<long>{6 * 16, 10 * 16, 12 * 16});
}

TEST_CASE("f13f13_dic12 maximals via the semidirect route") {
  PermGroup g = make_f13_dic12();
  auto semi = maximal_subgroups_semidirect(g);
  // preimages of Dic12's maximals: C6 (normal) and C4 (3 conjugates);
  // complements: one class of 169 conjugates (coprime orders)
  auto shape = shape_of(semi);
  CHECK(shape == std::multiset<std::pair<long, long>>{{12, 169}, {169 * 4, 3}, {169 * 6, 1}});
  for (const auto& r : semi) {
    PermGroup m(g.degree(), r.gens);
    CHECK(m.order() == (u128)r.order);
  }
}

TEST_CASE("homogeneous module: A^2 with A the Q8 plane") {
  // (F3^2)^2 x| Q8 acting diagonally: the plane is absolutely irreducible
  // (commutant = scalars), so maximal submodules correspond to the lines of
  // the multiplicity space F3^2: four of them
  auto [mi, mj] = q8_matrices(3);
  FpMatrix di(3, 4, 4), dj(3, 4, 4);
  for (int b = 0; b < 2; ++b)
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        di.at(2 * b + r, 2 * b + c) = mi.at(r, c);
        dj.at(2 * b + r, 2 * b + c) = mj.at(r, c);
      }
  auto subs = all_submodules({di, dj}, 3, 4);
  auto maxw = maximal_submodules(subs, 4);
  CHECK(maxw.size() == 4);
  PermGroup g = make_affine_semidirect(3, 4, {{di, "i"}, {dj, "j"}});
  CHECK(g.order() == (u128)(81 * 8));
  auto semi = maximal_subgroups_semidirect(g);
  CHECK(semi.size() == 7);  // 3 preimages + 4 complement classes
  long complement_total = 0;
  for (const auto& r : semi)
    if (r.order == 9 * 8) complement_total += 1;
  CHECK(complement_total == 4);
}
