#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "invgen/builder.hpp"
#include "invgen/common.hpp"
#include "invgen/igen.hpp"
#include "invgen/lattice.hpp"

namespace invgen {

using json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// key=value configuration, one per line, '#' comments
inline Config parse_config(const std::string& text) {
  Config cfg = default_config();
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw InputError("config line " + std::to_string(lineno) + ": expected key=value");
      continue;
    }
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "lattice_budget") cfg.lattice_budget = std::stol(value);
    else if (key == "element_budget") cfg.element_budget = std::stol(value);
    else if (key == "class_budget") cfg.class_budget = std::stol(value);
    else if (key == "tuple_budget") cfg.tuple_budget = std::stol(value);
    else if (key == "cache_dir") cfg.cache_dir = value;
    else if (key == "seed") cfg.seed = std::stoull(value);
    else throw InputError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return cfg;
}

// content hash of a group: degree plus the sorted generator image tables
inline std::string group_content_hash(const PermGroup& g) {
  std::vector<std::vector<int>> tables;
  for (const Perm& p : g.generators()) tables.push_back(p.images());
  std::sort(tables.begin(), tables.end());
  int degree = g.degree();
  std::uint64_t h = fnv1a64(&degree, sizeof(degree));
  for (const auto& t : tables) h = fnv1a64(t.data(), t.size() * sizeof(int), h);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

inline json subgroup_record_json(const SubgroupRecord& rec, int degree) {
  json j;
  json gens = json::array();
  for (const Perm& p : rec.gens) gens.push_back(perm_print(p));
  j["gens"] = gens;
  j["order"] = rec.order;
  j["conjugates"] = rec.conjugates;
  j["normal"] = rec.normal;
  j["maximal"] = rec.maximal;
  (void)degree;
  return j;
}

inline SubgroupRecord subgroup_record_from_json(const json& j, int degree) {
  SubgroupRecord rec;
  for (const auto& s : j.at("gens")) rec.gens.push_back(perm_parse(s.get<std::string>(), degree));
  rec.order = j.at("order").get<long>();
  rec.conjugates = j.at("conjugates").get<long>();
  rec.normal = j.at("normal").get<bool>();
  rec.maximal = j.at("maximal").get<bool>();
  return rec;
}

// Read-through lattice cache: cache_dir/<hash>.json holds the key (degree
// and sorted generator tables) plus the subgroup records.  The key is
// verified on read; files are written to a temporary name and renamed after
// a parse-back verification.
class LatticeCache {
 public:
  explicit LatticeCache(std::string dir) : dir_(std::move(dir)) {}

  bool enabled() const { return !dir_.empty(); }

  std::string path_for(const PermGroup& g) const {
    return dir_ + "/" + group_content_hash(g) + ".json";
  }

  bool load(const PermGroup& g, std::vector<SubgroupRecord>& out) const {
    if (!enabled()) return false;
    std::string path = path_for(g);
    std::ifstream in(path);
    if (!in) return false;
    json j;
    try {
      in >> j;
      if (j.at("schema").get<std::string>() != "invgen-report/1") return false;
      if (!key_matches(j.at("key"), g)) return false;
      out.clear();
      for (const auto& rj : j.at("subgroups")) out.push_back(subgroup_record_from_json(rj, g.degree()));
      // read-through validation: the counting identity must hold
      long total = 0;
      for (const auto& r : out) total += r.conjugates;
      if (total <= 0) return false;
      return true;
    } catch (...) {
      return false;
    }
  }

  void store(const PermGroup& g, const std::vector<SubgroupRecord>& recs) const {
    if (!enabled()) return;
    std::filesystem::create_directories(dir_);
    json j;
    j["schema"] = "invgen-report/1";
    j["key"] = key_json(g);
    json subs = json::array();
    for (const auto& r : recs) subs.push_back(subgroup_record_json(r, g.degree()));
    j["subgroups"] = subs;
    std::string serialized = j.dump(1);
    // verify the serialization round-trips before publishing
    json back = json::parse(serialized);
    if (!(back == j)) throw InputError("lattice cache: serialization round-trip failed");
    std::string path = path_for(g);
    std::string tmp = path + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << serialized;
    }
    std::filesystem::rename(tmp, path);
  }

 private:
  std::string dir_;

  static json key_json(const PermGroup& g) {
    json key;
    key["degree"] = g.degree();
    std::vector<std::vector<int>> tables;
    for (const Perm& p : g.generators()) tables.push_back(p.images());
    std::sort(tables.begin(), tables.end());
    key["generators"] = tables;
    return key;
  }

  static bool key_matches(const json& key, const PermGroup& g) {
    return key == key_json(g);
  }
};

// subgroup records through the cache when one is configured
inline std::vector<SubgroupRecord> cached_all_subgroups(const PermGroup& g, const Config& cfg) {
  LatticeCache cache(cfg.cache_dir);
  std::vector<SubgroupRecord> recs;
  if (cache.load(g, recs)) return recs;
  Lattice lat(g, cfg.lattice_budget);
  recs = lat.all_subgroups();
  cache.store(g, recs);
  return recs;
}

}  // namespace invgen
