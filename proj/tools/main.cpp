#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "groupeq/abelian_solver.hpp"
#include "groupeq/counterexamples.hpp"
#include "groupeq/json_io.hpp"
#include "groupeq/nilpotent.hpp"

using namespace groupeq;

namespace {

enum Exit { kOk = 0, kParse = 2, kImpossible = 3, kInternal = 4 };

struct RunConfig {
  std::string group_path;
  std::string system_path;
  std::string matrix_path;
  std::string solution_path;
  std::vector<std::string> primes;
  std::size_t depth = 0;
  std::vector<std::size_t> depths;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string p = "2";
  long bound = 1'000'000;
  std::string demo;
};

std::vector<Int> parse_primes(const std::vector<std::string>& raw) {
  std::vector<Int> out;
  for (const auto& s : raw) {
    out.push_back(parse_int(s));
    require_prime(out.back());
  }
  return out;
}

void emit(const RunConfig& cfg, const json& j, const std::string& text) {
  if (cfg.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

std::string assignment_text(const Assignment& a) {
  std::string s;
  for (const auto& [v, e] : a) s += v + " = " + to_string(e) + "\n";
  return s;
}

int cmd_classify(const RunConfig& cfg) {
  const std::vector<Int> primes = parse_primes(cfg.primes);
  ExponentMatrix em;
  if (!cfg.matrix_path.empty()) {
    em = ExponentMatrix::from_dense(parse_matrix_text(read_file(cfg.matrix_path)));
  } else if (!cfg.system_path.empty()) {
    em = exponent_matrix_from_json(parse_json_text(read_file(cfg.system_path)));
  } else {
    throw Error(ErrorCode::ParseError, "classify needs --matrix or --system");
  }
  const SingularityReport rep = classify(em.dense(), primes);
  json j = report_to_json(rep);
  j["vars"] = em.vars;
  emit(cfg, j, report_to_text(rep));
  return kOk;
}

struct Loaded {
  AnyGroup group;
  json system;
};

Loaded load(const RunConfig& cfg) {
  Loaded l;
  l.system = parse_json_text(read_file(cfg.system_path));
  if (!cfg.group_path.empty()) {
    l.group = any_group_from_json(parse_json_text(read_file(cfg.group_path)));
  } else if (l.system.is_object() && l.system.contains("group")) {
    l.group = any_group_from_json(l.system.at("group"));
  } else {
    throw Error(ErrorCode::ParseError, "no group: pass --group or put \"group\" in the system file");
  }
  return l;
}

GroupSystem nilpotent_system(const Loaded& l) {
  if (l.group.table) {
    const TableGroup& t = *l.group.table;
    return group_system_from_json(l.system, [&](std::vector<Rat> c) {
      const Element e{std::move(c)};
      t.index_of(e);
      return e;
    });
  }
  const NilpotentGroup& g = *l.group.nilpotent;
  return group_system_from_json(l.system, [&](std::vector<Rat> c) { return g.element(std::move(c)); });
}

int cmd_solve(const RunConfig& cfg) {
  const Loaded l = load(cfg);
  Assignment sol;
  std::string method;
  if (l.group.abelian) {
    const AbelianSystem sys = abelian_system_from_json(l.system, l.group.abelian);
    sol = solve_auto(sys);
    if (!verify_solution(sys, sol)) throw std::logic_error("solver returned a non-solution");
    method = "abelian";
  } else if (l.group.table) {
    const GroupSystem sys = nilpotent_system(l);
    const auto found = brute_force_group_solve(sys, *l.group.table);
    if (!found) {
      std::cerr << "NoSolution: exhaustive search found no assignment\n";
      emit(cfg, json{{"error", "NoSolution"}}, "NoSolution\n");
      return kImpossible;
    }
    sol = *found;
    if (!verify_group_solution(*l.group.table, sys, sol)) throw std::logic_error("search returned a non-solution");
    method = "exhaustive";
  } else {
    const GroupSystem sys = nilpotent_system(l);
    const NilpotentGroup& g = *l.group.nilpotent;
    if (g.is_divisible()) {
      sol = solve_nilpotent_divisible(sys, g);
      method = "nilpotent-divisible";
    } else {
      sol = solve_nilpotent_bounded(sys, g);
      method = "nilpotent-bounded";
    }
    if (!verify_group_solution(g, sys, sol)) throw std::logic_error("solver returned a non-solution");
  }
  emit(cfg, json{{"method", method}, {"verified", true}, {"solution", assignment_to_json(sol)}},
       assignment_text(sol));
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  const Loaded l = load(cfg);
  const json sj = parse_json_text(read_file(cfg.solution_path));
  const json& values = sj.is_object() && sj.contains("solution") ? sj.at("solution") : sj;
  if (!values.is_object()) throw Error(ErrorCode::ParseError, "solution must be an object of variable values");
  bool ok = false;
  Assignment a;
  if (l.group.abelian) {
    for (const auto& [v, e] : values.items()) a.emplace(v, l.group.abelian->element(coords_from_json(e)));
    ok = verify_solution(abelian_system_from_json(l.system, l.group.abelian), a);
  } else if (l.group.table) {
    for (const auto& [v, e] : values.items()) a.emplace(v, Element{coords_from_json(e)});
    ok = verify_group_solution(*l.group.table, nilpotent_system(l), a);
  } else {
    for (const auto& [v, e] : values.items()) a.emplace(v, l.group.nilpotent->element(coords_from_json(e)));
    ok = verify_group_solution(*l.group.nilpotent, nilpotent_system(l), a);
  }
  emit(cfg, json{{"verified", ok}}, ok ? "verified\n" : "not a solution\n");
  return ok ? kOk : kImpossible;
}

int cmd_demo(const RunConfig& cfg) {
  GrowthReport rep;
  if (cfg.demo == "pbad") {
    rep = pbad_growth(parse_int(cfg.p), cfg.depth);
  } else if (cfg.demo == "bad") {
    std::vector<Int> primes = parse_primes(cfg.primes);
    if (primes.empty()) {
      for (Int q = 2; primes.size() < cfg.depth; ++q)
        if (is_prime(q)) primes.push_back(q);
    }
    rep = bad_support_check(primes, cfg.depth);
  } else {
    rep = zbad_bound_check(cfg.depth, cfg.bound);
  }
  emit(cfg, growth_to_json(rep), growth_to_text(rep));
  return kOk;
}

int cmd_stream(const RunConfig& cfg) {
  const AbelianGroup group = group_from_json(parse_json_text(read_file(cfg.group_path)));
  const EquationStream stream = random_unimodular_stream(group, cfg.seed);
  std::vector<std::size_t> depths = cfg.depths;
  std::sort(depths.begin(), depths.end());
  EchelonState state(group);
  json results = json::array();
  std::string text;
  bool all = true;
  std::size_t next = 0;
  for (const std::size_t d : depths) {
    while (next < d) state.ingest(stream.at(next++));
    const AbelianSystem trunc = stream.truncation(d);
    const bool pass = verify_solution(trunc, state.solution());
    all = all && pass;
    results.push_back({{"depth", d}, {"pass", pass}});
    text += "depth " + std::to_string(d) + ": " + (pass ? "PASS" : "FAIL") + "\n";
  }
  emit(cfg, json{{"group", group.str()}, {"seed", cfg.seed}, {"results", results}, {"all_pass", all}}, text);
  return all ? kOk : kImpossible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Systems of equations over abelian and nilpotent groups"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* classify_cmd = app.add_subcommand("classify", "Nonsingularity, p-nonsingularity and unimodularity");
  classify_cmd->add_option("--matrix", cfg.matrix_path, "Plain-text integer matrix");
  classify_cmd->add_option("--system", cfg.system_path, "System JSON");
  classify_cmd->add_option("--primes", cfg.primes, "Primes to test, comma separated")->delimiter(',');
  add_format(classify_cmd);

  auto* solve_cmd = app.add_subcommand("solve", "Solve a system and print a verified assignment");
  solve_cmd->add_option("--group", cfg.group_path, "Group JSON (defaults to the system's own group)");
  solve_cmd->add_option("--system", cfg.system_path, "System JSON")->required();
  add_format(solve_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Check an assignment against a system");
  verify_cmd->add_option("--group", cfg.group_path, "Group JSON (defaults to the system's own group)");
  verify_cmd->add_option("--system", cfg.system_path, "System JSON")->required();
  verify_cmd->add_option("--solution", cfg.solution_path, "Assignment JSON")->required();
  add_format(verify_cmd);

  auto* demo_cmd = app.add_subcommand("demo", "Growing lower bounds for the unsolvable systems");
  demo_cmd->add_option("name", cfg.demo, "pbad, bad or zbad")->required()->check(CLI::IsMember({"pbad", "bad", "zbad"}));
  demo_cmd->add_option("--depth", cfg.depth, "Largest truncation depth")->required();
  demo_cmd->add_option("--p", cfg.p, "Prime for pbad");
  demo_cmd->add_option("--primes", cfg.primes, "Distinct primes for bad")->delimiter(',');
  demo_cmd->add_option("--bound", cfg.bound, "Search radius |x| <= B for zbad");
  add_format(demo_cmd);

  auto* stream_cmd = app.add_subcommand("stream", "Ingest a seeded unimodular stream and verify truncations");
  stream_cmd->add_option("--group", cfg.group_path, "Group JSON (bounded period)")->required();
  stream_cmd->add_option("--seed", cfg.seed, "Stream seed");
  stream_cmd->add_option("--depths", cfg.depths, "Depths to verify, comma separated")->delimiter(',')->required();
  add_format(stream_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*classify_cmd) return cmd_classify(cfg);
    if (*solve_cmd) return cmd_solve(cfg);
    if (*verify_cmd) return cmd_verify(cfg);
    if (*demo_cmd) return cmd_demo(cfg);
    return cmd_stream(cfg);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    if (cfg.format == "json") {
      json j{{"error", std::string(error_name(e.code()))}, {"message", e.what()}};
      if (e.prime()) j["prime"] = int_to_json(*e.prime());
      if (!e.witness().empty()) {
        json w = json::array();
        for (const auto& x : e.witness()) w.push_back(int_to_json(x));
        j["witness"] = w;
      }
      std::cout << j.dump(2) << "\n";
    }
    if (e.code() == ErrorCode::ParseError) return kParse;
    if (e.code() == ErrorCode::CentralityAssertionFailed) return kInternal;
    return kImpossible;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
