#include "doctest.h"
#include "invgen/builder.hpp"
#include "invgen/classes.hpp"

using namespace invgen;

TEST_CASE("alt(5) classes match the classical list") {
  PermGroup g = make_alt(5);
  ClassTable t = conjugacy_classes(g);
  REQUIRE(t.num_classes() == 5);
  std::vector<long> sizes = t.class_sizes();
  CHECK(sizes == std::vector<long>{1, 15, 20, 12, 12});
  CHECK(t.order_of_class(0) == 1);
  CHECK(t.order_of_class(1) == 2);
  CHECK(t.order_of_class(2) == 3);
  CHECK(t.order_of_class(3) == 5);
  CHECK(t.order_of_class(4) == 5);
  // Alt(5) is ambivalent: every class is closed under inversion.  Oracle:
  // (2,5)(3,4) is even and conjugates (1,2,3,4,5) to its inverse.
  Perm five = perm_parse("(1,2,3,4,5)", 5);
  Perm sigma = perm_parse("(2,5)(3,4)", 5);
  CHECK(sigma.is_even());
  CHECK(perm_conjugate(five, sigma) == perm_inverse(five));
  for (int c = 0; c < 5; ++c) CHECK(t.inverse_class(c) == c);
  // the two order-5 classes are swapped by squaring instead
  CHECK(t.class_of_perm(perm_compose(five, five)) != t.class_of_perm(five));
  // the textbook representatives land in the expected classes
  CHECK(t.class_of_perm(perm_parse("(1,2)(3,4)", 5)) == 1);
  CHECK(t.class_of_perm(perm_parse("(1,2,3)", 5)) == 2);
}

TEST_CASE("q8 classes") {
  ClassTable t = conjugacy_classes(make_dicyclic(8));
  CHECK(t.num_classes() == 5);
  CHECK(t.class_sizes() == std::vector<long>{1, 1, 2, 2, 2});
}

TEST_CASE("trivial group has one class") {
  ClassTable t = conjugacy_classes(PermGroup::trivial(3));
  CHECK(t.num_classes() == 1);
  CHECK(t.size(0) == 1);
}

TEST_CASE("index map is conjugation invariant and order is constant on classes") {
  for (auto g : {make_sym(4), make_dicyclic(12), make_alt(5)}) {
    ClassTable t = conjugacy_classes(g);
    auto elems = g.elements(1000);
    for (std::size_t i = 0; i < elems.size(); i += 3) {
      for (const Perm& gen : g.generators()) {
        CHECK(t.class_of_perm(elems[i]) == t.class_of_perm(perm_conjugate(elems[i], gen)));
      }
      CHECK(elems[i].order() == t.order_of_class(t.class_of_perm(elems[i])));
    }
    // inverse map is an involution
    for (std::size_t c = 0; c < t.num_classes(); ++c)
      CHECK(t.inverse_class(t.inverse_class(static_cast<int>(c))) == static_cast<int>(c));
  }
}

TEST_CASE("class fusion: alt(5) maximal subgroups give Y1 and Y2") {
  PermGroup g = make_alt(5);
  ClassTable t = conjugacy_classes(g);
  // Alt(4) as the stabilizer of the point 5
  PermGroup a4(5, {perm_parse("(1,2,3)", 5), perm_parse("(1,2)(3,4)", 5)});
  REQUIRE(a4.order() == (u128)12);
  MStar y1 = class_fusion(g, t, a4);
  CHECK(y1.classes.members() == std::vector<int>{0, 1, 2});
  // D10 = <(1,2,3,4,5), (2,5)(3,4)>
  PermGroup d10(5, {perm_parse("(1,2,3,4,5)", 5), perm_parse("(2,5)(3,4)", 5)});
  REQUIRE(d10.order() == (u128)10);
  MStar y2 = class_fusion(g, t, d10);
  CHECK(y2.classes.members() == std::vector<int>{0, 1, 3, 4});
  // Sym(3) on {1,2,3} x {4,5} fuses to Y1 as well
  PermGroup s3(5, {perm_parse("(1,2,3)", 5), perm_parse("(1,2)(4,5)", 5)});
  REQUIRE(s3.order() == (u128)6);
  CHECK(class_fusion(g, t, s3).classes.members() == std::vector<int>{0, 1, 2});
  // fusing the whole group hits every class; the trivial group only class 0
  CHECK(class_fusion(g, t, g).classes.count() == 5);
  CHECK(class_fusion(g, t, PermGroup::trivial(5)).classes.members() == std::vector<int>{0});
  // monotone under containment
  PermGroup c3(5, {perm_parse("(1,2,3)", 5)});
  CHECK(class_fusion(g, t, c3).classes.subset_of(y1.classes));
  // not-a-subgroup is rejected
  CHECK_THROWS_AS(class_fusion(g, t, PermGroup(5, {perm_parse("(1,2)", 5)})), InputError);
}

TEST_CASE("budget error on big groups") {
  CHECK_THROWS_AS(conjugacy_classes(make_builtin("alt29_lemma")), BudgetError);
}
