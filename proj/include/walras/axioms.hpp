#pragma once

#include <optional>
#include <string>

#include "walras/mechanisms.hpp"

namespace walras {

// Data demonstrating a violation; which fields are set depends on the
// axiom. Every witness replays: feeding it back through the definition
// reproduces the violation exactly.
struct AxiomWitness {
  std::vector<int> agents;
  std::vector<ObjectId> objects;
  std::optional<Preference> deviation;
  std::optional<std::vector<Bundle>> alternative;
};

struct AxiomReport {
  std::string axiom;
  bool holds = true;
  std::optional<AxiomWitness> witness;
  std::string note;
};

// Finite stand-in for the quantifier over the preference domain in the
// strategy-proofness check.
struct DeviationPool {
  std::vector<std::vector<Preference>> per_agent;
};

// Truth-telling weakly preferred to every pooled misreport, judged under
// the true preference. A failure is conclusive; a pass is evidence on the
// pool.
AxiomReport check_strategy_proof(const Mechanism& mech, const Market& market,
                                 const DeviationPool& pool, const Rat& tol = 0);

// Every agent weakly prefers its bundle to (0,0).
AxiomReport check_ir(const Mechanism& mech, const Market& market, const Rat& tol = 0);

// Agents with equal preferences receive mutually indifferent bundles.
AxiomReport check_ete(const Mechanism& mech, const Market& market, const Rat& tol = 0);

// Every real object is assigned to some agent.
AxiomReport check_no_wastage(const Mechanism& mech, const Market& market);

// No agent pays a negative transfer.
AxiomReport check_no_subsidy(const Mechanism& mech, const Market& market);

// No agent strictly prefers another agent's bundle.
AxiomReport check_no_envy(const Mechanism& mech, const Market& market, const Rat& tol = 0);

// The outcome maximizes the attainable transfer sum among allocations that
// keep every agent at least as well off; equal-sum indifferent
// reassignments do not count as violations.
AxiomReport check_pareto_efficient(const Mechanism& mech, const Market& market,
                                   const Rat& tol = 0);

// Every agent weakly prefers its bundle to its bundle in each supporting
// allocation at the minimum equilibrium prices.
AxiomReport check_domination(const Mechanism& mech, const Market& market,
                             const SolveOptions& opt = {});

// Re-runs the violated definition against the stored witness.
bool replay_witness(const AxiomReport& report, const Mechanism& mech, const Market& market,
                    const Rat& tol = 0);

struct RevenueComparison {
  Rat revenue_a;
  Rat revenue_b;
};

std::vector<RevenueComparison> compare_revenue(const Mechanism& a, const Mechanism& b,
                                               const std::vector<Market>& markets);

}  // namespace walras
