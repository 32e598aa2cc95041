#include "doctest.h"
#include "invgen/model.hpp"

using namespace invgen;

TEST_CASE("delta family shapes") {
  DeltaModel m1 = build_delta_family(1);
  REQUIRE(m1.family.size() == 2);
  CHECK(m1.family[0].count() == 3);  // A1 = Y1
  CHECK(m1.family[1].count() == 4);  // B1 = Y2
  DeltaModel m2 = build_delta_family(2);
  CHECK(m2.family.size() == 6);  // 2n + n(n-1)
  // product counts: |A1| = 3*5, diagonals have 5 members each
  CHECK(m2.family[0].count() == 15);
  CHECK(m2.family[4].count() == 5);  // C_{1,2}
  CHECK(m2.family[5].count() == 5);  // D_{1,2}
  DeltaModel m3 = build_delta_family(3);
  CHECK(m3.family.size() == 12);
  CHECK_THROWS_AS(build_delta_family(7), InputError);
  // every member contains the all-C1 tuple
  for (const auto& s : m2.family) CHECK(s.test(0));
  // inv is an involution fixing the first three classes
  for (int c = 0; c < 5; ++c) CHECK(DeltaModel::inv_map[DeltaModel::inv_map[c]] == c);
  for (int c = 0; c < 3; ++c) CHECK(DeltaModel::inv_map[c] == c);
}

TEST_CASE("iota of the model") {
  CHECK(iota_model(1) == 2);
  CHECK(iota_model(2) == 4);
  CHECK(iota_model(3) == 6);
}

TEST_CASE("group crosscheck n=1") {
  ModelCrosscheck r = crosscheck_group_model(1);
  CHECK(r.matched);
  CHECK(r.model_family_size == 2);
  CHECK(r.group_family_size == 2);
  CHECK(r.outer_action_is_inv);
  CHECK(r.group_m_i == 2);
  CHECK(r.group_iota == 2);
}

TEST_CASE("group crosscheck n=2") {
  ModelCrosscheck r = crosscheck_group_model(2);
  CHECK(r.matched);
  CHECK(r.num_group_classes == 25);
  CHECK(r.model_family_size == 6);
  CHECK(r.group_family_size == 6);
  CHECK(r.group_m_i == 4);  // = 2 * m_I(Alt(5))
  CHECK(r.group_iota == 4);
}

TEST_CASE("model m_I matches iota sandwich at n=2") {
  DeltaModel m = build_delta_family(2);
  MStarFamily fam = model_as_family(m);
  auto nums = igen_numbers(fam);
  CHECK(nums.m_i == 4);
  CHECK(nums.d_i <= nums.m_i);
  // the per-coordinate {C3, C4} markers form a minimal hitting set of size 2n
  // (classes: digit C3=2 in one coordinate, C4=3 in the other slots)
  std::vector<int> markers;
  markers.push_back(2 + 5 * 0);   // (C3, C1)
  markers.push_back(0 + 5 * 2);   // (C1, C3)
  markers.push_back(3 + 5 * 0);   // (C4, C1)
  markers.push_back(0 + 5 * 3);   // (C1, C4)
  CHECK(igen_check_classes(fam, markers));
  for (std::size_t drop = 0; drop < markers.size(); ++drop) {
    std::vector<int> rest;
    for (std::size_t j = 0; j < markers.size(); ++j)
      if (j != drop) rest.push_back(markers[j]);
    CHECK(!igen_check_classes(fam, rest));
  }
}
