#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "invgen/report.hpp"
#include "invgen/verify.hpp"

using namespace invgen;

TEST_CASE("config parsing") {
  Config cfg = parse_config("lattice_budget = 500\nclass_budget=1000\n# comment\nseed = 7\n");
  CHECK(cfg.lattice_budget == 500);
  CHECK(cfg.class_budget == 1000);
  CHECK(cfg.seed == 7);
  CHECK(cfg.element_budget == default_config().element_budget);
  CHECK_THROWS_AS(parse_config("unknown_key = 3\n"), InputError);
  CHECK_THROWS_AS(parse_config("garbage line\n"), InputError);
}

TEST_CASE("group content hash is input-order independent") {
  PermGroup g1(5, {perm_parse("(1,2,3)", 5), perm_parse("(3,4,5)", 5)});
  PermGroup g2(5, {perm_parse("(3,4,5)", 5), perm_parse("(1,2,3)", 5)});
  CHECK(group_content_hash(g1) == group_content_hash(g2));
  PermGroup g3(5, {perm_parse("(1,2,3)", 5)});
  CHECK(group_content_hash(g1) != group_content_hash(g3));
}

TEST_CASE("lattice cache round trip") {
  namespace fs = std::filesystem;
  std::string dir = (fs::temp_directory_path() / "invgen_cache_test").string();
  fs::remove_all(dir);
  Config cfg = default_config();
  cfg.cache_dir = dir;
  PermGroup g = make_sym(4);
  auto first = cached_all_subgroups(g, cfg);
  CHECK(fs::exists(LatticeCache(dir).path_for(g)));
  auto second = cached_all_subgroups(g, cfg);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].order == second[i].order);
    CHECK(first[i].conjugates == second[i].conjugates);
    CHECK(first[i].normal == second[i].normal);
    CHECK(first[i].maximal == second[i].maximal);
  }
  // a corrupted cache file falls back to recomputation
  {
    std::ofstream out(LatticeCache(dir).path_for(g), std::ios::trunc);
    out << "{ not json";
  }
  auto third = cached_all_subgroups(g, cfg);
  CHECK(third.size() == first.size());
  // a key mismatch (different group, same file name) is rejected on read
  std::vector<SubgroupRecord> sink;
  CHECK(!LatticeCache(dir).load(make_alt(5), sink));
  fs::remove_all(dir);
}

TEST_CASE("subgroup record json round trip") {
  Lattice lat(make_dicyclic(12), 2000);
  for (const auto& rec : lat.all_subgroups()) {
    json j = subgroup_record_json(rec, 12);
    SubgroupRecord back = subgroup_record_from_json(j, 12);
    CHECK(back.order == rec.order);
    CHECK(back.conjugates == rec.conjugates);
    CHECK(PermGroup(12, back.gens.empty() ? std::vector<Perm>{Perm(12)} : back.gens).order() ==
          (u128)rec.order);
  }
}

TEST_CASE("reports are byte-identical across runs") {
  auto render = [] {
    Config cfg = default_config();
    auto recs = cached_all_subgroups(make_alt(5), cfg);  // cache disabled by default
    json j;
    j["schema"] = "invgen-report/1";
    json rows = json::array();
    for (const auto& r : recs) rows.push_back(subgroup_record_json(r, 5));
    j["results"] = rows;
    return j.dump();
  };
  CHECK(render() == render());
  // the verify suite is deterministic apart from timings
  auto ids = [] {
    std::string s;
    for (const auto& r : verify_paper("soluble-corpus"))
      s += r.id + "=" + std::to_string(static_cast<int>(r.status)) + ";" + r.detail + "|";
    return s;
  };
  CHECK(ids() == ids());
}
