// Command-line front end: solve markets, run mechanisms, check axioms,
// compare revenues, and drive the proof-construction workbench.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "walras/io.hpp"

namespace {

using namespace walras;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitSolverFailure = 2;

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void write_out(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << content;
}

SolveMode default_mode() {
  if (const char* env = std::getenv("WALRAS_MODE"))
    return (std::string(env) == "epsilon") ? SolveMode::Epsilon : SolveMode::Exact;
  return SolveMode::Exact;
}

SolveMode parse_mode(const std::string& mode_flag) {
  if (mode_flag.empty()) return default_mode();
  if (mode_flag == "exact") return SolveMode::Exact;
  if (mode_flag == "epsilon") return SolveMode::Epsilon;
  throw CLI::ValidationError("--mode must be exact or epsilon");
}

int cmd_solve(const std::string& market_path, const std::string& mode_flag, bool maximum,
              const std::string& out_path) {
  Market market = market_from_json(load_json(market_path));
  SolveOptions opt = options_for(parse_mode(mode_flag));
  EquilibriumResult res =
      maximum ? max_walrasian_prices(market, opt) : min_walrasian_prices(market, opt);
  write_out(out_path, equilibrium_to_json(res).dump(2) + "\n");
  return res.certificate.ok ? kExitOk : kExitSolverFailure;
}

int cmd_run(const std::string& mechanism, const std::string& market_path,
            const std::string& amount, int favored, const std::string& mode_flag,
            const std::string& out_path) {
  Market market = market_from_json(load_json(market_path));
  Mechanism mech = mechanism_by_name(mechanism, parse_frac(amount), favored,
                                     options_for(parse_mode(mode_flag)));
  write_out(out_path, outcome_to_json(mech.run(market)).dump(2) + "\n");
  return kExitOk;
}

int cmd_check_axioms(const std::string& mechanism, const std::string& market_path,
                     const std::string& pool_path, std::uint64_t seed,
                     const std::string& amount, int favored, const std::string& mode_flag,
                     const std::string& out_path) {
  Market market = market_from_json(load_json(market_path));
  SolveMode mode = parse_mode(mode_flag);
  SolveOptions opt = options_for(mode);
  Rat tol = (mode == SolveMode::Epsilon) ? opt.epsilon * 2 : Rat(0);
  Mechanism mech = mechanism_by_name(mechanism, parse_frac(amount), favored, opt);
  DeviationPool pool = pool_path.empty() ? generate_pool(market, seed)
                                         : pool_from_json(load_json(pool_path));

  std::vector<AxiomReport> reports;
  reports.push_back(check_strategy_proof(mech, market, pool, tol));
  reports.push_back(check_ir(mech, market, tol));
  reports.push_back(check_ete(mech, market, tol));
  reports.push_back(check_no_wastage(mech, market));
  reports.push_back(check_no_subsidy(mech, market));
  reports.push_back(check_no_envy(mech, market, tol));
  reports.push_back(check_pareto_efficient(mech, market, tol));
  reports.push_back(check_domination(mech, market, opt));

  Json arr = Json::array();
  bool any_violation = false;
  for (const AxiomReport& r : reports) {
    arr.push_back(axiom_report_to_json(r));
    any_violation = any_violation || !r.holds;
  }
  write_out(out_path, arr.dump(2) + "\n");
  return any_violation ? kExitViolation : kExitOk;
}

int cmd_compare(const std::string& mech_a, const std::string& mech_b,
                const std::vector<std::string>& market_paths, const std::string& mode_flag,
                const std::string& out_path) {
  SolveOptions opt = options_for(parse_mode(mode_flag));
  std::vector<Market> markets;
  for (const std::string& path : market_paths) markets.push_back(market_from_json(load_json(path)));
  auto rows = compare_revenue(mechanism_by_name(mech_a, 1, 0, opt),
                              mechanism_by_name(mech_b, 1, 0, opt), markets);
  Json arr = Json::array();
  for (std::size_t i = 0; i < rows.size(); ++i)
    arr.push_back(Json{{"market", market_paths[i]},
                       {"revenue_a", to_frac(rows[i].revenue_a)},
                       {"revenue_b", to_frac(rows[i].revenue_b)}});
  write_out(out_path, arr.dump(2) + "\n");
  return kExitOk;
}

int cmd_prooflab_outline(const std::string& v, const std::string& mode_flag,
                         const std::string& out_path) {
  OutlineReport report = replay_outline(parse_frac(v), options_for(parse_mode(mode_flag)));
  Json j;
  j["ok"] = report.ok;
  j["v"] = to_frac(report.v);
  j["base_prices"] = prices_to_json(report.base_prices);
  j["converted_prices"] = prices_to_json(report.converted_prices);
  j["log"] = report.log;
  write_out(out_path, j.dump(2) + "\n");
  return report.ok ? kExitOk : kExitViolation;
}

int cmd_prooflab_iric(const std::string& market_path, const std::string& seed_spec,
                      const std::string& out_path) {
  Market market = market_from_json(load_json(market_path));
  auto comma = seed_spec.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("--seed-bundle must be <object>,<transfer>");
  Bundle seed{std::stoi(seed_spec.substr(0, comma)), parse_frac(seed_spec.substr(comma + 1))};
  Rat ceiling = valuation_ceiling(market);
  auto chains = enumerate_chains(market, seed);
  Json arr = Json::array();
  for (const IndifferenceChain& c : chains) {
    Json jc;
    jc["agents"] = c.agents;
    jc["objects"] = c.objects;
    Json bundles = Json::array();
    for (const Bundle& b : c.bundles) bundles.push_back(bundle_to_json(b));
    jc["bundles"] = bundles;
    jc["transfer_limit"] = to_frac(chain_transfer_limit(market, seed, c));
    arr.push_back(jc);
  }
  Json j;
  j["seed"] = bundle_to_json(seed);
  j["ceiling"] = to_frac(ceiling);
  j["seed_transfer_limit"] = to_frac(seed_transfer_limit(market, seed, ceiling));
  j["chains"] = arr;
  write_out(out_path, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_gen(std::uint64_t seed, int n, int m, const std::string& family,
            const std::string& out_path) {
  Market market = generate_market(seed, n, m, family_from_string(family));
  write_out(out_path, market_to_json(market).dump(2) + "\n");
  return kExitOk;
}

int cmd_suite_outline(const std::string& out_path) {
  bool all_ok = true;
  Json arr = Json::array();
  for (const char* v : {"10/1", "1/2", "7/3"}) {
    OutlineReport report = replay_outline(parse_frac(v));
    all_ok = all_ok && report.ok;
    arr.push_back(Json{{"v", v}, {"ok", report.ok}, {"log", report.log}});
    std::cout << "outline v=" << v << ": " << (report.ok ? "pass" : "FAIL") << "\n";
  }
  if (!out_path.empty()) write_out(out_path, arr.dump(2) + "\n");
  return all_ok ? kExitOk : kExitViolation;
}

int cmd_suite_theorem1(std::uint64_t base_seed, int count, const std::string& format,
                       const std::string& out_path) {
  Theorem1Summary summary = run_theorem1(base_seed, count);
  for (const Theorem1Row& row : summary.rows) {
    std::cout << row.mechanism << ": "
              << (row.designated_axiom.empty() ? "all axioms pass"
                                               : "fails " + row.designated_axiom)
              << " -> " << (row.as_expected ? "as expected" : "UNEXPECTED") << " ("
              << row.designated_failures << " designated, " << row.other_failures
              << " other)\n";
  }
  if (!out_path.empty())
    write_out(out_path, emit_report(summary.records, format_from_string(format)));
  return summary.ok ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walrasian equilibrium prices, mechanisms, and axiom checks for unit-demand markets"};
  app.require_subcommand(1);

  std::string market_path, pool_path, out_path, mode_flag, format = "json";
  std::string mechanism, mech_a, mech_b, amount = "1/1", v_value = "10/1", seed_bundle;
  std::vector<std::string> market_paths;
  std::uint64_t seed = 1;
  int favored = 0, n = 4, m = 2, count = 100;
  bool maximum = false;

  auto* solve = app.add_subcommand("solve", "compute equilibrium prices for a market file");
  solve->add_option("--market", market_path)->required();
  solve->add_option("--mode", mode_flag);
  solve->add_flag("--max", maximum, "maximum instead of minimum prices");
  solve->add_option("--out", out_path);

  auto* run = app.add_subcommand("run", "evaluate a mechanism on a market file");
  run->add_option("--mechanism", mechanism)->required();
  run->add_option("--market", market_path)->required();
  run->add_option("--amount", amount, "fee or subsidy amount");
  run->add_option("--favored", favored, "dictator's favored agent");
  run->add_option("--mode", mode_flag);
  run->add_option("--out", out_path);

  auto* check = app.add_subcommand("check-axioms", "run every axiom check for a mechanism");
  check->add_option("--mechanism", mechanism)->required();
  check->add_option("--market", market_path)->required();
  check->add_option("--pool", pool_path);
  check->add_option("--seed", seed, "pool seed when --pool is absent");
  check->add_option("--amount", amount);
  check->add_option("--favored", favored);
  check->add_option("--mode", mode_flag);
  check->add_option("--out", out_path);

  auto* compare = app.add_subcommand("compare", "revenue comparison of two mechanisms");
  compare->add_option("--a", mech_a)->required();
  compare->add_option("--b", mech_b)->required();
  compare->add_option("--market", market_paths)->required();
  compare->add_option("--mode", mode_flag);
  compare->add_option("--out", out_path);

  auto* prooflab = app.add_subcommand("prooflab", "proof-construction workbench");
  prooflab->require_subcommand(1);
  auto* outline = prooflab->add_subcommand("replay-outline", "three-agent walkthrough");
  outline->add_option("--v", v_value, "common (0,0) valuation");
  outline->add_option("--mode", mode_flag);
  outline->add_option("--out", out_path);
  auto* iric = prooflab->add_subcommand("iric", "enumerate indifference chains from a seed");
  iric->add_option("--market", market_path)->required();
  iric->add_option("--seed-bundle", seed_bundle, "<object>,<transfer>")->required();
  iric->add_option("--out", out_path);

  auto* gen = app.add_subcommand("gen", "generate a deterministic market file");
  gen->add_option("--seed", seed);
  gen->add_option("--n", n);
  gen->add_option("--m", m);
  std::string family = "mixed";
  gen->add_option("--family", family);
  gen->add_option("--out", out_path);

  auto* suite = app.add_subcommand("suite", "batch suites");
  suite->require_subcommand(1);
  auto* theorem1 = suite->add_subcommand("theorem1", "necessity grid over a fixed batch");
  theorem1->add_option("--seed", seed, "base seed");
  theorem1->add_option("--count", count);
  theorem1->add_option("--format", format);
  theorem1->add_option("--out", out_path);
  auto* outline_suite = suite->add_subcommand("outline", "walkthrough for v in {10, 1/2, 7/3}");
  outline_suite->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return cmd_solve(market_path, mode_flag, maximum, out_path);
    if (*run) return cmd_run(mechanism, market_path, amount, favored, mode_flag, out_path);
    if (*check)
      return cmd_check_axioms(mechanism, market_path, pool_path, seed, amount, favored,
                              mode_flag, out_path);
    if (*compare) return cmd_compare(mech_a, mech_b, market_paths, mode_flag, out_path);
    if (*prooflab) {
      if (*outline) return cmd_prooflab_outline(v_value, mode_flag, out_path);
      if (*iric) return cmd_prooflab_iric(market_path, seed_bundle, out_path);
    }
    if (*gen) return cmd_gen(seed, n, m, family, out_path);
    if (*suite) {
      if (*theorem1) return cmd_suite_theorem1(seed, count, format, out_path);
      if (*outline_suite) return cmd_suite_outline(out_path);
    }
  } catch (const SolverFailureError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const ComputationLimitError& e) {
    std::cerr << "computation limit: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitOk;
}
