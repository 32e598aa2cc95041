// invgen: a workbench for invariable generation in finite permutation groups.
//
// Subcommands mirror the library modules: group/classes/subgroups/maximals
// for the structural layer, igen/fratI/iota/bi/ibp for the invariable
// generation quantities, crown for the matrix criterion, tarski for the
// closure operator, model for the Alt(5)^n family model, and `verify paper`
// for the acceptance suite.  Every command prints one JSON report to stdout.
//
// Exit codes: 0 success / all checks pass, 1 assertion failure, 2 usage or
// input error, 3 budget error.

#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "invgen/builder.hpp"
#include "invgen/classes.hpp"
#include "invgen/corpus.hpp"
#include "invgen/crown.hpp"
#include "invgen/igen.hpp"
#include "invgen/model.hpp"
#include "invgen/report.hpp"
#include "invgen/semidirect.hpp"
#include "invgen/structure.hpp"
#include "invgen/tarski.hpp"
#include "invgen/verify.hpp"

namespace {

using namespace invgen;

PermGroup resolve_group(const std::string& selector) {
  auto colon = selector.find(':');
  if (colon == std::string::npos)
    throw InputError("group selector must look like kind:param, got '" + selector + "'");
  std::string kind = selector.substr(0, colon);
  std::string param = selector.substr(colon + 1);
  if (kind == "alt") return make_alt(std::stoi(param));
  if (kind == "sym") return make_sym(std::stoi(param));
  if (kind == "cyclic") return make_cyclic(std::stoi(param));
  if (kind == "dihedral") return make_dihedral(std::stoi(param));
  if (kind == "dicyclic") return make_dicyclic(std::stoi(param));
  if (kind == "elem") {
    auto comma = param.find(',');
    if (comma == std::string::npos) throw InputError("elem selector: elem:p,k");
    return make_elem_abelian(std::stoi(param.substr(0, comma)), std::stoi(param.substr(comma + 1)));
  }
  if (kind == "psl2") return make_psl2(std::stol(param));
  if (kind == "affine") return parse_affine_file(read_file(param));
  if (kind == "file") return parse_group_file(read_file(param));
  if (kind == "builtin") return make_builtin(param);
  throw InputError("unknown group selector kind '" + kind + "'");
}

struct ReportBuilder {
  json j;
  std::vector<std::string> budget_notes;
  bool timings = false;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  ReportBuilder(const std::vector<std::string>& argv_echo, const std::string& inputs) {
    j["schema"] = "invgen-report/1";
    j["command"] = argv_echo;
    j["inputs_hash"] = hash_hex(inputs);
    j["results"] = json::object();
  }

  static std::string hash_hex(const std::string& s) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(s.data(), s.size())));
    return std::string(buf);
  }

  int finish(int exit_code) {
    j["budget_notes"] = budget_notes;
    if (timings) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      j["timings"] = {{"total_ms", ms}};
    }
    std::cout << j.dump(1) << "\n";
    return exit_code;
  }
};

json witness_json(const ClassTable& t, const std::vector<int>& classes) {
  json out = json::array();
  for (int c : classes) {
    json e;
    e["class"] = c;
    e["rep"] = perm_print(t.rep(c));
    e["order"] = t.order_of_class(c);
    out.push_back(e);
  }
  return out;
}

std::vector<Perm> parse_element_list(const std::string& text, int degree) {
  std::vector<Perm> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto semi = text.find(';', start);
    std::string part = semi == std::string::npos ? text.substr(start) : text.substr(start, semi - start);
    if (part.find_first_not_of(" \t") != std::string::npos) out.push_back(perm_parse(part, degree));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invariable generation workbench"};
  app.require_subcommand(1);

  std::string group_sel, config_path, elements_arg, instance_path, suite = "core", sub_action;
  int model_n = 2, nary_n = 2;
  bool timings = false, assume_y = false;

  app.add_option("--config", config_path, "key=value config file");
  app.add_flag("--timings", timings, "include wall-clock timings in the report");

  auto add_group_opt = [&](CLI::App* cmd) {
    cmd->add_option("--group", group_sel, "group selector kind:param")->required();
  };

  CLI::App* c_group = app.add_subcommand("group", "show | order | orbits");
  c_group->add_option("action", sub_action)->required()->check(CLI::IsMember({"show", "order", "orbits"}));
  add_group_opt(c_group);

  CLI::App* c_classes = app.add_subcommand("classes", "conjugacy class table");
  add_group_opt(c_classes);

  CLI::App* c_subgroups = app.add_subcommand("subgroups", "subgroup lattice up to conjugacy");
  add_group_opt(c_subgroups);

  CLI::App* c_maximals = app.add_subcommand("maximals", "maximal subgroups up to conjugacy");
  add_group_opt(c_maximals);

  CLI::App* c_igen = app.add_subcommand("igen", "check | summary | irb | witness");
  c_igen->add_option("action", sub_action)->required()->check(CLI::IsMember({"check", "summary", "irb", "witness"}));
  add_group_opt(c_igen);
  c_igen->add_option("--elements", elements_arg, "semicolon-separated cycle strings (for check)");

  CLI::App* c_frati = app.add_subcommand("fratI", "invariable Frattini classes");
  add_group_opt(c_frati);

  CLI::App* c_iota = app.add_subcommand("iota", "largest independent subfamily of {M*}");
  add_group_opt(c_iota);

  CLI::App* c_bi = app.add_subcommand("bi", "B and B_I flags");
  add_group_opt(c_bi);

  CLI::App* c_ibp = app.add_subcommand("ibp", "invariable basis property by subgroup scan");
  add_group_opt(c_ibp);

  CLI::App* c_crown = app.add_subcommand("crown", "check | exists | oracle");
  c_crown->add_option("action", sub_action)->required()->check(CLI::IsMember({"check", "exists", "oracle"}));
  c_crown->add_option("--instance", instance_path, "crown instance file")->required();
  c_crown->add_flag("--assume-y-igen", assume_y, "skip the y-list precondition check");

  CLI::App* c_tarski = app.add_subcommand("tarski", "closure | nary | laws");
  c_tarski->add_option("action", sub_action)->required()->check(CLI::IsMember({"closure", "nary", "laws"}));
  add_group_opt(c_tarski);
  c_tarski->add_option("--elements", elements_arg, "semicolon-separated cycle strings (for closure)");
  c_tarski->add_option("--n", nary_n, "arity for the nary verdict");

  CLI::App* c_model = app.add_subcommand("model", "build | iota | crosscheck");
  c_model->add_option("action", sub_action)->required()->check(CLI::IsMember({"build", "iota", "crosscheck"}));
  c_model->add_option("--n", model_n, "number of Alt(5) factors");

  CLI::App* c_experiments = app.add_subcommand(
      "experiments", "open-question scans over the corpus (reports counterexamples, asserts nothing)");

  CLI::App* c_verify = app.add_subcommand("verify", "acceptance runner");
  std::string verify_what = "paper";
  c_verify->add_option("what", verify_what)->required()->check(CLI::IsMember({"paper"}));
  c_verify->add_option("--suite", suite, "core | soluble-corpus | stretch | all");

  std::vector<std::string> argv_echo(argv, argv + argc);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Config cfg = config_path.empty() ? default_config() : parse_config(read_file(config_path));
    default_config() = cfg;
    std::string inputs = group_sel + "|" + instance_path + "|" + elements_arg + "|" + suite;
    ReportBuilder rb(argv_echo, inputs);
    rb.timings = timings;

    if (*c_group) {
      PermGroup g = resolve_group(group_sel);
      rb.j["results"]["selector"] = group_sel;
      rb.j["results"]["degree"] = g.degree();
      rb.j["results"]["order"] = to_string_u128(g.order());
      if (sub_action == "show") {
        json gens = json::array();
        for (const Perm& p : g.generators()) gens.push_back(perm_print(p));
        rb.j["results"]["generators"] = gens;
        rb.j["results"]["file"] = print_group_file(g);
      } else if (sub_action == "orbits") {
        json cells = json::array();
        for (const auto& cell : g.orbits()) {
          json c = json::array();
          for (int pt : cell) c.push_back(pt + 1);
          cells.push_back(c);
        }
        rb.j["results"]["orbits"] = cells;
      }
      return rb.finish(0);
    }

    if (*c_classes) {
      PermGroup g = resolve_group(group_sel);
      ClassTable t = conjugacy_classes(g, cfg.class_budget);
      json rows = json::array();
      for (std::size_t c = 0; c < t.num_classes(); ++c) {
        json row;
        row["id"] = c;
        row["rep"] = perm_print(t.rep(static_cast<int>(c)));
        row["size"] = t.size(static_cast<int>(c));
        row["element_order"] = t.order_of_class(static_cast<int>(c));
        row["inverse_class"] = t.inverse_class(static_cast<int>(c));
        rows.push_back(row);
      }
      rb.j["results"]["order"] = to_string_u128(g.order());
      rb.j["results"]["classes"] = rows;
      return rb.finish(0);
    }

    if (*c_subgroups || *c_maximals) {
      PermGroup g = resolve_group(group_sel);
      std::vector<SubgroupRecord> recs;
      if (*c_subgroups) {
        recs = cached_all_subgroups(g, cfg);
      } else {
        recs = maximal_subgroups(g, cfg.lattice_budget);
      }
      json rows = json::array();
      long total = 0;
      for (const auto& r : recs) {
        if (*c_maximals && !r.maximal) continue;
        rows.push_back(subgroup_record_json(r, g.degree()));
        total += r.conjugates;
      }
      rb.j["results"]["order"] = to_string_u128(g.order());
      rb.j["results"]["classes"] = rows;
      rb.j["results"]["total_subgroups"] = total;
      return rb.finish(0);
    }

    if (*c_ibp) {
      PermGroup g = resolve_group(group_sel);
      IBPResult r = has_ibp(g, cfg.lattice_budget);
      rb.j["results"]["has_IBP"] = r.has_ibp;
      if (!r.has_ibp) {
        rb.j["results"]["witness_order"] = r.witness_order;
        rb.j["results"]["witness_d_I"] = r.witness_d_i;
        rb.j["results"]["witness_m_I"] = r.witness_m_i;
        json gens = json::array();
        for (const Perm& p : r.witness_gens) gens.push_back(perm_print(p));
        rb.j["results"]["witness_gens"] = gens;
      }
      return rb.finish(0);
    }

    if (*c_igen || *c_frati || *c_iota || *c_bi) {
      PermGroup g = resolve_group(group_sel);
      IGenContext ctx = IGenContext::build(g, cfg.lattice_budget, cfg.class_budget);
      if (*c_igen && sub_action == "check") {
        std::vector<Perm> xs = parse_element_list(elements_arg, g.degree());
        bool ok = ctx.igen_check(xs);
        rb.j["results"]["invariably_generates"] = ok;
        json cls = json::array();
        for (const Perm& x : xs) cls.push_back(ctx.table.class_of_perm(x));
        rb.j["results"]["classes"] = cls;
        return rb.finish(0);
      }
      IGenReport rep = igen_report(ctx);
      json& res = rb.j["results"];
      res["order"] = to_string_u128(rep.order);
      res["num_classes"] = rep.num_classes;
      res["family_size"] = rep.family_size;
      res["d_I"] = rep.d_i;
      res["m_I"] = rep.m_i;
      res["irb_I"] = rep.irb;
      if (rep.d_classical) res["d"] = *rep.d_classical;
      if (rep.m_classical) res["m"] = *rep.m_classical;
      res["iota"] = rep.iota;
      res["is_BI"] = rep.is_bi;
      if (rep.is_b) res["is_B"] = *rep.is_b;
      res["is_CP"] = rep.is_cp;
      res["d_I_witness"] = witness_json(ctx.table, rep.d_i_witness);
      res["m_I_witness"] = witness_json(ctx.table, rep.m_i_witness);
      res["frat_I_classes"] = rep.frat.primary_classes;
      res["frat_I_classes_all_variant"] = rep.frat.variant_classes;
      {
        json arr = json::array();
        for (int c : rep.frat.primary_classes)
          if (c != 0) arr.push_back(c);
        res["frat_I_nontrivial_classes"] = arr;
      }
      res["frat_I_elements"] = rep.frat.primary_elements;
      return rb.finish(0);
    }

    if (*c_crown) {
      CrownInstance inst = parse_crown_file(read_file(instance_path));
      rb.j["results"]["p"] = inst.p;
      rb.j["results"]["n"] = inst.n;
      rb.j["results"]["delta"] = inst.delta;
      rb.j["results"]["t"] = inst.t();
      if (sub_action == "check") {
        rb.j["results"]["invariably_generates"] = igen_matrix_check(inst, assume_y);
      } else if (sub_action == "exists") {
        rb.j["results"]["exists_w"] = exists_w_check(inst, assume_y);
      } else {
        OracleResult r = oracle_crosscheck(inst);
        rb.j["results"]["matrix_verdict"] = r.matrix_verdict;
        rb.j["results"]["group_verdict"] = r.group_verdict;
        rb.j["results"]["agree"] = r.agree;
        return rb.finish(r.agree ? 0 : 1);
      }
      return rb.finish(0);
    }

    if (*c_tarski) {
      PermGroup g = resolve_group(group_sel);
      TarskiContext ctx(g, cfg.lattice_budget);
      if (sub_action == "closure") {
        std::vector<Perm> xs = parse_element_list(elements_arg, g.degree());
        std::vector<int> ids;
        for (const Perm& x : xs) ids.push_back(static_cast<int>(ctx.lattice().table().index_of(x)));
        ClosureBudget budget;
        budget.max_tuple_evals = cfg.tuple_budget;
        Bitset c = ctx.closure_C(ids, budget);
        json members = json::array();
        for (int m : c.members())
          members.push_back(perm_print(ctx.lattice().table().elements()[static_cast<std::size_t>(m)]));
        rb.j["results"]["closure_size"] = c.count();
        rb.j["results"]["closure"] = members;
        rb.j["results"]["reaches_group"] = c.count() == static_cast<std::size_t>(ctx.group_size());
      } else if (sub_action == "nary") {
        auto v = ctx.is_invariable_nary(nary_n);
        rb.j["results"]["n"] = nary_n;
        rb.j["results"]["verdict"] = v.kind == TarskiContext::NaryVerdict::yes        ? "yes"
                                     : v.kind == TarskiContext::NaryVerdict::no ? "no"
                                                                                : "budget_exceeded";
        if (v.kind == TarskiContext::NaryVerdict::no) {
          json w = json::array();
          for (int x : v.witness)
            w.push_back(perm_print(ctx.lattice().table().elements()[static_cast<std::size_t>(x)]));
          rb.j["results"]["witness"] = w;
        }
      } else {
        if (ctx.group_size() > 12) throw BudgetError("tarski laws: exhaustive sampling needs |G| <= 12");
        auto rep = ctx.closure_laws(ctx.all_subsets());
        rb.j["results"]["extensive"] = rep.extensive;
        rb.j["results"]["monotone"] = rep.monotone;
        rb.j["results"]["idempotent"] = rep.idempotent;
        rb.j["results"]["samples"] = rep.samples;
        return rb.finish(rep.ok() ? 0 : 1);
      }
      return rb.finish(0);
    }

    if (*c_model) {
      if (sub_action == "build") {
        DeltaModel m = build_delta_family(model_n);
        json fam = json::array();
        for (std::size_t i = 0; i < m.family.size(); ++i) {
          json e;
          e["name"] = m.names[i];
          e["size"] = m.family[i].count();
          fam.push_back(e);
        }
        rb.j["results"]["n"] = model_n;
        rb.j["results"]["delta_size"] = m.size;
        rb.j["results"]["family"] = fam;
      } else if (sub_action == "iota") {
        std::vector<int> witness;
        int v = iota_model(model_n, &witness);
        rb.j["results"]["n"] = model_n;
        rb.j["results"]["iota"] = v;
        DeltaModel m = build_delta_family(model_n);
        json w = json::array();
        for (int i : witness) w.push_back(m.names[static_cast<std::size_t>(i)]);
        rb.j["results"]["witness"] = w;
      } else {
        ModelCrosscheck r = crosscheck_group_model(model_n);
        rb.j["results"]["n"] = model_n;
        rb.j["results"]["matched"] = r.matched;
        rb.j["results"]["model_family_size"] = r.model_family_size;
        rb.j["results"]["group_family_size"] = r.group_family_size;
        rb.j["results"]["outer_action_is_inv"] = r.outer_action_is_inv;
        rb.j["results"]["group_m_I"] = r.group_m_i;
        rb.j["results"]["group_iota"] = r.group_iota;
        return rb.finish(r.matched ? 0 : 1);
      }
      return rb.finish(0);
    }

    if (*c_experiments) {
      OpenQuestionScan scan = run_open_question_scans();
      json& res = rb.j["results"];
      res["groups_scanned"] = scan.groups_scanned;
      res["pairs_scanned"] = scan.pairs_scanned;
      res["m_I_exceeds_m"] = scan.mi_exceeds_m;
      res["additivity_gaps"] = scan.additivity_gaps;
      res["frat_I_variant_differs"] = scan.frat_variant_differs;
      res["irb_I_gaps"] = scan.irb_gaps;
      return rb.finish(0);
    }

    if (*c_verify) {
      auto results = verify_paper(suite);
      json rows = json::array();
      bool all_ok = true;
      for (const auto& r : results) {
        json row;
        row["id"] = r.id;
        row["status"] = r.status == CheckResult::pass    ? "PASS"
                        : r.status == CheckResult::fail ? "FAIL"
                                                        : "SKIPPED";
        row["description"] = r.description;
        row["detail"] = r.detail;
        if (timings) row["ms"] = r.millis;
        rows.push_back(row);
        if (r.status == CheckResult::fail) all_ok = false;
        std::cerr << row["status"].get<std::string>() << " " << r.id << " " << r.description
                  << " [" << r.detail << "]\n";
      }
      rb.j["results"]["suite"] = suite;
      rb.j["results"]["checks"] = rows;
      rb.j["results"]["all_pass"] = all_ok;
      return rb.finish(all_ok ? 0 : 1);
    }

    std::cerr << "no subcommand handled\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
