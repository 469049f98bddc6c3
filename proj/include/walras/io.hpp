#pragma once

#include <json.hpp>

#include "walras/generator.hpp"
#include "walras/prooflab.hpp"

namespace walras {

using Json = nlohmann::json;

// Rationals travel as "p/q" strings so every format round-trips exactly.

Json preference_to_json(const Preference& pref);
Preference preference_from_json(const Json& j);

Json market_to_json(const Market& market);
Market market_from_json(const Json& j);

Json prices_to_json(const PriceVector& p);
PriceVector prices_from_json(const Json& j);

Json bundle_to_json(const Bundle& b);
Bundle bundle_from_json(const Json& j);

Json outcome_to_json(const MechanismOutcome& o);
Json certificate_to_json(const Certificate& c);
Json equilibrium_to_json(const EquilibriumResult& r);
Json axiom_report_to_json(const AxiomReport& r);

Json pool_to_json(const DeviationPool& pool);
DeviationPool pool_from_json(const Json& j);

// Named mechanism request inside a scenario.
struct MechanismSpec {
  std::string name;
  Rat amount = 1;       // fee / subsidy
  int favored_agent = 0;
};

struct Scenario {
  Market market;
  std::vector<MechanismSpec> mechanisms;
  std::uint64_t seed = 0;  // pool seed and provenance
  SolveMode mode = SolveMode::Exact;
  std::optional<DeviationPool> pools;  // generated from seed when absent
};

Json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const Json& j);

// FNV-1a over the canonical scenario JSON.
std::string scenario_hash(const Scenario& s);

struct MechanismRecord {
  std::string name;
  MechanismOutcome outcome;
  std::vector<AxiomReport> axioms;  // SP, IR, ETE, NW, NS
  std::string error;                // solver/domain failures land here
};

struct RunRecord {
  std::string hash;
  std::uint64_t seed = 0;
  std::optional<EquilibriumResult> minimum;
  std::optional<EquilibriumResult> maximum;
  std::string solve_error;
  std::vector<MechanismRecord> mechanisms;
  double elapsed_ms = 0;  // excluded from the record hash and equality
};

// Solve (min and max), run every mechanism, check the five axioms per
// mechanism. Errors are captured in the record instead of aborting a batch.
RunRecord run_scenario(const Scenario& s);

Json record_to_json(const RunRecord& r);

enum class ReportFormat { Json, Csv, Text };
ReportFormat format_from_string(const std::string& s);

// Stable field/column ordering; one csv row per (mechanism, axiom).
std::string emit_report(const std::vector<RunRecord>& records, ReportFormat format);

SolveOptions options_for(SolveMode mode);

// The fixed necessity batch: sizes cycle over n in 3..6 and m in
// 2..min(4, n-1), families rotate, and every other scenario carries an
// identical quasilinear pair so equal treatment binds. Each scenario runs
// all six mechanisms.
std::vector<Scenario> theorem1_batch(std::uint64_t base_seed, int count);

struct Theorem1Row {
  std::string mechanism;
  std::string designated_axiom;  // empty: must pass everything
  int designated_failures = 0;
  int other_failures = 0;
  bool as_expected = false;
};

struct Theorem1Summary {
  bool ok = false;
  std::vector<Theorem1Row> rows;
  std::vector<RunRecord> records;
};

// Runs the batch and scores it against the expected pattern: the minimum
// mechanism clean everywhere, each variant failing exactly its designated
// axiom at least once and nothing else anywhere.
Theorem1Summary run_theorem1(std::uint64_t base_seed, int count);

}  // namespace walras
