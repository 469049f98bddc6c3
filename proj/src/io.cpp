#include "walras/io.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace walras {

namespace {

std::string obj_key(ObjectId a) { return "x" + std::to_string(a); }

}  // namespace

Json preference_to_json(const Preference& pref) {
  Json j;
  if (pref.is_quasilinear()) {
    j["kind"] = "quasilinear";
    Json v = Json::object();
    auto vals = pref.zero_valuations();
    for (ObjectId a = 1; a <= pref.object_count(); ++a)
      v[obj_key(a)] = to_frac(vals[static_cast<std::size_t>(a - 1)]);
    j["v"] = v;
  } else {
    j["kind"] = "piecewise";
    Json bps = Json::object();
    for (ObjectId a = 1; a <= pref.object_count(); ++a) {
      Json list = Json::array();
      for (const auto& [u, val] : pref.map(a).points())
        list.push_back(Json::array({to_frac(u), to_frac(val)}));
      bps[obj_key(a)] = list;
    }
    j["breakpoints"] = bps;
  }
  return j;
}

Preference preference_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "quasilinear") {
    const Json& v = j.at("v");
    std::vector<Rat> values;
    for (ObjectId a = 1; a <= static_cast<int>(v.size()); ++a)
      values.push_back(parse_frac(v.at(obj_key(a)).get<std::string>()));
    return make_quasilinear(values);
  }
  if (kind == "piecewise") {
    const Json& bps = j.at("breakpoints");
    std::vector<PwlBijection> maps;
    for (ObjectId a = 1; a <= static_cast<int>(bps.size()); ++a) {
      std::vector<std::pair<Rat, Rat>> pts;
      for (const Json& pair : bps.at(obj_key(a)))
        pts.emplace_back(parse_frac(pair.at(0).get<std::string>()),
                         parse_frac(pair.at(1).get<std::string>()));
      maps.emplace_back(std::move(pts));
    }
    return Preference(std::move(maps));
  }
  throw std::invalid_argument("unknown preference kind: " + kind);
}

Json market_to_json(const Market& market) {
  Json agents = Json::array();
  for (const Preference& r : market.profile()) agents.push_back(preference_to_json(r));
  return Json{{"agents", agents}};
}

Market market_from_json(const Json& j) {
  std::vector<Preference> profile;
  for (const Json& a : j.at("agents")) profile.push_back(preference_from_json(a));
  if (profile.empty()) throw std::invalid_argument("market needs agents");
  int m = profile.front().object_count();
  if (m < 2) throw std::invalid_argument("need at least two objects");
  return Market(m, std::move(profile));
}

Json prices_to_json(const PriceVector& p) {
  Json out = Json::array();
  for (const Rat& v : p.real_prices()) out.push_back(to_frac(v));
  return out;
}

PriceVector prices_from_json(const Json& j) {
  std::vector<Rat> p;
  for (const Json& v : j) p.push_back(parse_frac(v.get<std::string>()));
  return PriceVector(p);
}

Json bundle_to_json(const Bundle& b) {
  return Json{{"object", b.object}, {"transfer", to_frac(b.transfer)}};
}

Bundle bundle_from_json(const Json& j) {
  return {j.at("object").get<int>(), parse_frac(j.at("transfer").get<std::string>())};
}

Json outcome_to_json(const MechanismOutcome& o) {
  Json arr = Json::array();
  for (const Bundle& b : o.bundles) arr.push_back(bundle_to_json(b));
  return Json{{"assignments", arr}, {"revenue", to_frac(o.revenue())}};
}

Json certificate_to_json(const Certificate& c) {
  Json j{{"ok", c.ok}};
  if (!c.ok) {
    j["kind"] = to_string(*c.kind);
    j["objects"] = *c.violating_set;
  }
  return j;
}

Json equilibrium_to_json(const EquilibriumResult& r) {
  Json j;
  j["prices"] = prices_to_json(r.prices);
  j["allocation"] = r.allocation.assignment;
  j["certificate"] = certificate_to_json(r.certificate);
  j["mode"] = (r.mode == SolveMode::Exact) ? "exact" : "epsilon";
  if (r.mode == SolveMode::Epsilon) j["tolerance"] = to_frac(r.tolerance);
  j["iterations"] = r.iterations;
  return j;
}

Json axiom_report_to_json(const AxiomReport& r) {
  Json j{{"axiom", r.axiom}, {"holds", r.holds}};
  if (!r.note.empty()) j["note"] = r.note;
  if (r.witness) {
    Json w = Json::object();
    if (!r.witness->agents.empty()) w["agents"] = r.witness->agents;
    if (!r.witness->objects.empty()) w["objects"] = r.witness->objects;
    if (r.witness->deviation) w["deviation"] = preference_to_json(*r.witness->deviation);
    if (r.witness->alternative) {
      Json alt = Json::array();
      for (const Bundle& b : *r.witness->alternative) alt.push_back(bundle_to_json(b));
      w["alternative"] = alt;
    }
    j["witness"] = w;
  }
  return j;
}

Json pool_to_json(const DeviationPool& pool) {
  Json arr = Json::array();
  for (const auto& devs : pool.per_agent) {
    Json a = Json::array();
    for (const Preference& p : devs) a.push_back(preference_to_json(p));
    arr.push_back(a);
  }
  return Json{{"per_agent", arr}};
}

DeviationPool pool_from_json(const Json& j) {
  DeviationPool pool;
  for (const Json& a : j.at("per_agent")) {
    std::vector<Preference> devs;
    for (const Json& p : a) devs.push_back(preference_from_json(p));
    pool.per_agent.push_back(std::move(devs));
  }
  return pool;
}

Json scenario_to_json(const Scenario& s) {
  Json mechs = Json::array();
  for (const MechanismSpec& m : s.mechanisms) {
    Json jm{{"name", m.name}};
    if (m.name == "mwep_with_fee" || m.name == "mwep_with_subsidy")
      jm["amount"] = to_frac(m.amount);
    if (m.name == "dictator_then_mwep") jm["favored_agent"] = m.favored_agent;
    mechs.push_back(jm);
  }
  Json j;
  j["market"] = market_to_json(s.market);
  j["mechanisms"] = mechs;
  j["seed"] = s.seed;
  j["mode"] = (s.mode == SolveMode::Exact) ? "exact" : "epsilon";
  if (s.pools) j["pools"] = pool_to_json(*s.pools);
  return j;
}

Scenario scenario_from_json(const Json& j) {
  Scenario s{market_from_json(j.at("market")), {}, 0, SolveMode::Exact, std::nullopt};
  for (const Json& jm : j.at("mechanisms")) {
    MechanismSpec m;
    m.name = jm.at("name").get<std::string>();
    if (jm.contains("amount")) m.amount = parse_frac(jm.at("amount").get<std::string>());
    if (jm.contains("favored_agent")) m.favored_agent = jm.at("favored_agent").get<int>();
    s.mechanisms.push_back(m);
  }
  if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("mode"))
    s.mode = (j.at("mode").get<std::string>() == "epsilon") ? SolveMode::Epsilon
                                                            : SolveMode::Exact;
  if (j.contains("pools")) s.pools = pool_from_json(j.at("pools"));
  return s;
}

std::string scenario_hash(const Scenario& s) {
  const std::string dump = scenario_to_json(s).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

SolveOptions options_for(SolveMode mode) {
  SolveOptions opt;
  opt.mode = mode;
  return opt;
}

RunRecord run_scenario(const Scenario& s) {
  auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.hash = scenario_hash(s);
  rec.seed = s.seed;
  SolveOptions opt = options_for(s.mode);
  Rat tol = (s.mode == SolveMode::Epsilon) ? opt.epsilon * 2 : Rat(0);

  try {
    rec.minimum = min_walrasian_prices(s.market, opt);
    rec.maximum = max_walrasian_prices(s.market, opt);
  } catch (const std::exception& e) {
    rec.solve_error = e.what();
  }

  DeviationPool pool = s.pools ? *s.pools : generate_pool(s.market, s.seed);
  for (const MechanismSpec& spec : s.mechanisms) {
    MechanismRecord mr;
    mr.name = spec.name;
    try {
      Mechanism mech = mechanism_by_name(spec.name, spec.amount, spec.favored_agent, opt);
      mr.outcome = mech.run(s.market);
      mr.axioms.push_back(check_strategy_proof(mech, s.market, pool, tol));
      mr.axioms.push_back(check_ir(mech, s.market, tol));
      mr.axioms.push_back(check_ete(mech, s.market, tol));
      mr.axioms.push_back(check_no_wastage(mech, s.market));
      mr.axioms.push_back(check_no_subsidy(mech, s.market));
    } catch (const std::exception& e) {
      mr.error = e.what();
    }
    rec.mechanisms.push_back(std::move(mr));
  }
  rec.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return rec;
}

Json record_to_json(const RunRecord& r) {
  Json j;
  j["scenario_hash"] = r.hash;
  j["seed"] = r.seed;
  if (r.minimum) j["minimum"] = equilibrium_to_json(*r.minimum);
  if (r.maximum) j["maximum"] = equilibrium_to_json(*r.maximum);
  if (!r.solve_error.empty()) j["solve_error"] = r.solve_error;
  Json mechs = Json::array();
  for (const MechanismRecord& m : r.mechanisms) {
    Json jm{{"name", m.name}};
    if (!m.error.empty()) {
      jm["error"] = m.error;
    } else {
      jm["outcome"] = outcome_to_json(m.outcome);
      Json reports = Json::array();
      for (const AxiomReport& a : m.axioms) reports.push_back(axiom_report_to_json(a));
      jm["axioms"] = reports;
    }
    mechs.push_back(jm);
  }
  j["mechanisms"] = mechs;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

ReportFormat format_from_string(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "text") return ReportFormat::Text;
  throw std::invalid_argument("unknown format: " + s);
}

std::vector<Scenario> theorem1_batch(std::uint64_t base_seed, int count) {
  std::vector<Scenario> out;
  for (int i = 0; i < count; ++i) {
    int n = 3 + i % 4;
    int m = 2 + (i / 4) % (std::min(4, n - 1) - 1);
    Family family = static_cast<Family>(i % 3);
    GenOptions options;
    options.clone_pair = (i % 2 == 0);
    std::uint64_t seed = base_seed + static_cast<std::uint64_t>(i);
    Market market = generate_market(seed, n, m, family, options);
    out.push_back(Scenario{std::move(market),
                           {{"mwep"},
                            {"max_wep"},
                            {"mwep_with_fee", 1},
                            {"dictator_then_mwep", 1, 0},
                            {"no_sale"},
                            {"mwep_with_subsidy", 1}},
                           seed,
                           SolveMode::Exact,
                           std::nullopt});
  }
  return out;
}

Theorem1Summary run_theorem1(std::uint64_t base_seed, int count) {
  Theorem1Summary summary;
  for (const Scenario& s : theorem1_batch(base_seed, count))
    summary.records.push_back(run_scenario(s));

  const std::vector<std::pair<std::string, std::string>> designated = {
      {"mwep", ""},
      {"max_wep", "strategy_proofness"},
      {"mwep_with_fee", "individual_rationality"},
      {"dictator_then_mwep", "equal_treatment_of_equals"},
      {"no_sale", "no_wastage"},
      {"mwep_with_subsidy", "no_subsidy"}};
  summary.ok = true;
  for (const auto& [mech, axiom] : designated) {
    Theorem1Row row{mech, axiom, 0, 0, false};
    for (const RunRecord& r : summary.records)
      for (const MechanismRecord& m : r.mechanisms) {
        if (m.name != mech) continue;
        if (!m.error.empty()) ++row.other_failures;
        for (const AxiomReport& a : m.axioms) {
          if (a.holds) continue;
          if (a.axiom == axiom)
            ++row.designated_failures;
          else
            ++row.other_failures;
        }
      }
    row.as_expected = (row.other_failures == 0) &&
                      (axiom.empty() ? row.designated_failures == 0
                                     : row.designated_failures > 0);
    summary.ok = summary.ok && row.as_expected;
    summary.rows.push_back(std::move(row));
  }
  return summary;
}

std::string emit_report(const std::vector<RunRecord>& records, ReportFormat format) {
  if (format == ReportFormat::Json) {
    Json arr = Json::array();
    for (const RunRecord& r : records) arr.push_back(record_to_json(r));
    return arr.dump(2) + "\n";
  }
  if (format == ReportFormat::Csv) {
    std::ostringstream os;
    os << "scenario_hash,seed,mechanism,axiom,holds,note\n";
    for (const RunRecord& r : records)
      for (const MechanismRecord& m : r.mechanisms) {
        if (!m.error.empty()) {
          os << r.hash << "," << r.seed << "," << m.name << ",error,false," << m.error << "\n";
          continue;
        }
        for (const AxiomReport& a : m.axioms)
          os << r.hash << "," << r.seed << "," << m.name << "," << a.axiom << ","
             << (a.holds ? "true" : "false") << "," << a.note << "\n";
      }
    return os.str();
  }
  std::ostringstream os;
  for (const RunRecord& r : records) {
    os << "scenario " << r.hash << " (seed " << r.seed << ")\n";
    if (r.minimum)
      os << "  p_min = " << prices_to_json(r.minimum->prices).dump() << "\n";
    if (r.maximum)
      os << "  p_max = " << prices_to_json(r.maximum->prices).dump() << "\n";
    if (!r.solve_error.empty()) os << "  solve error: " << r.solve_error << "\n";
    for (const MechanismRecord& m : r.mechanisms) {
      os << "  " << m.name << ":";
      if (!m.error.empty()) {
        os << " error: " << m.error << "\n";
        continue;
      }
      for (const AxiomReport& a : m.axioms)
        os << " " << a.axiom << "=" << (a.holds ? "pass" : "FAIL");
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace walras
