#include <set>

#include "doctest.h"
#include "invgen/builder.hpp"
#include "invgen/classes.hpp"
#include "invgen/lattice.hpp"

using namespace invgen;

TEST_CASE("family constructors have the textbook orders") {
  CHECK(make_dicyclic(8).order() == (u128)8);
  CHECK(make_dicyclic(12).order() == (u128)12);
  CHECK(make_dicyclic(16).order() == (u128)16);
  CHECK(make_elem_abelian(3, 2).order() == (u128)9);
  CHECK(make_dihedral(10).order() == (u128)10);
  CHECK(make_dihedral(4).order() == (u128)4);
  CHECK(make_cyclic(1).order() == (u128)1);
  CHECK_THROWS_AS(make_dicyclic(10), InputError);
  CHECK_THROWS_AS(make_elem_abelian(4, 2), InputError);
  CHECK_THROWS_AS(make_psl2(9), InputError);
}

TEST_CASE("dicyclic groups have exactly one involution") {
  for (int order : {8, 12, 16, 20, 24, 32}) {
    PermGroup q = make_dicyclic(order);
    int involutions = 0;
    for (const Perm& x : q.elements(1000))
      if (!x.is_identity() && perm_compose(x, x).is_identity()) ++involutions;
    CHECK(involutions == 1);
  }
}

TEST_CASE("elementary abelian exponent") {
  PermGroup e = make_elem_abelian(3, 2);
  for (const Perm& x : e.elements(100)) CHECK(x.order() <= 3);
}

TEST_CASE("direct products") {
  PermGroup a5xa5 = make_direct_product(make_alt(5), make_alt(5));
  CHECK(a5xa5.order() == (u128)3600);
  CHECK(a5xa5.degree() == 10);
  PermGroup c2xc3 = make_direct_product(make_cyclic(2), make_cyclic(3));
  CHECK(c2xc3.order() == (u128)6);
  CHECK(c2xc3.degree() == 5);
  CHECK(make_direct_product(make_alt(5), make_cyclic(7)).order() == (u128)420);
}

TEST_CASE("affine semidirect constructions") {
  PermGroup g1 = make_f_q8(3);
  CHECK(g1.order() == (u128)72);
  CHECK(g1.affine_tag->k_order == 8);
  PermGroup g2 = make_f13_dic12();
  CHECK(g2.order() == (u128)2028);
  CHECK(g2.affine_tag->k_order == 12);
  PermGroup g3 = make_asl24();
  CHECK(g3.order() == (u128)960);
  CHECK(g3.affine_tag->k_order == 60);
  PermGroup g4 = make_c3c3_c2();
  CHECK(g4.order() == (u128)18);
  // the tagged translation subgroup is normal and elementary abelian
  PermGroup v = g1.affine_tag->v_group();
  CHECK(v.order() == (u128)9);
  for (const Perm& x : v.generators())
    for (const Perm& y : g1.generators()) CHECK(v.contains(perm_conjugate(x, y)));
  // singular matrices rejected
  FpMatrix z(3, 2, 2);
  CHECK_THROWS_AS(make_affine_semidirect(3, 2, {{z, "z"}}), InputError);
}

TEST_CASE("q8 matrices act fixed-point-freely") {
  for (int p : {3, 5, 13}) {
    auto [mi, mj] = q8_matrices(p);
    auto elems = matrix_group_elements({mi, mj}, p, 2, 100);
    CHECK(elems.size() == 8);
    for (const auto& m : elems) {
      if (m.is_identity()) continue;
      CHECK(row_kernel(m - FpMatrix::identity(p, 2)).dim() == 0);
    }
  }
}

TEST_CASE("psl2 and l2_8") {
  CHECK(make_psl2(5).order() == (u128)60);
  CHECK(make_psl2(7).order() == (u128)168);
  CHECK(make_psl2(41).order() == (u128)34440);
  CHECK(make_l2_8().order() == (u128)504);
  // make_psl2(5) is Alt(5) in disguise: same class-size multiset and the
  // same maximal-subgroup order multiset
  auto t1 = conjugacy_classes(make_psl2(5));
  auto t2 = conjugacy_classes(make_alt(5));
  CHECK(t1.class_sizes() == t2.class_sizes());
  auto orders_of = [](const PermGroup& g) {
    std::multiset<long> out;
    for (const auto& rec : Lattice(g, 2000).maximal_subgroups()) out.insert(rec.order);
    return out;
  };
  CHECK(orders_of(make_psl2(5)) == orders_of(make_alt(5)));
}

TEST_CASE("group file round-trip") {
  std::string text = "# sample\ndegree 5\na = (1,2,3)\nb = (3,4,5)\n";
  PermGroup g = parse_group_file(text);
  CHECK(g.order() == (u128)60);
  GroupFile f = parse_group_file_text(text);
  std::string printed = print_group_file(f);
  GroupFile f2 = parse_group_file_text(printed);
  CHECK(print_group_file(f2) == printed);
  CHECK(parse_group_file("degree 3\n").order() == (u128)1);
  CHECK(parse_group_file("degree 4\nid =\n").order() == (u128)1);
  CHECK_THROWS_AS(parse_group_file("a = (1,2)\n"), InputError);
  CHECK_THROWS_AS(parse_group_file("degree 3\nbroken\n"), InputError);
  // error message carries the line number
  try {
    parse_group_file("degree 3\nx = (1,4)\n");
    CHECK(false);
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("alt29 lemma builtin") {
  PermGroup g = make_builtin("alt29_lemma");
  CHECK(to_string_u128(g.order()) == "4420880996869850977271808000000");
}

TEST_CASE("affine file format") {
  std::string text = "affine 3 2\ngen s\n2 0\n0 2\n";
  PermGroup g = parse_affine_file(text);
  CHECK(g.order() == (u128)18);
  CHECK(g.affine_tag != nullptr);
  CHECK_THROWS_AS(parse_affine_file("affine 4 2\ngen s\n1 0\n0 1\n"), InputError);
}
