#include "walras/axioms.hpp"

#include <algorithm>

#include "walras/allocation_search.hpp"
#include "walras/assignment.hpp"

namespace walras {

namespace {

constexpr std::size_t kZminEnumerationCap = 5000;

AxiomReport pass(std::string axiom, std::string note = "") {
  return {std::move(axiom), true, std::nullopt, std::move(note)};
}

AxiomReport fail(std::string axiom, AxiomWitness witness, std::string note = "") {
  return {std::move(axiom), false, std::move(witness), std::move(note)};
}

// Maximum transfer sum over object allocations keeping every agent at its
// outcome level: the assignment value of weights V^{R_i}(a, f_i(R)).
struct ParetoSearch {
  Rat best_total;
  std::vector<ObjectId> best_allocation;
};

ParetoSearch pareto_optimum(const Market& market, const MechanismOutcome& outcome) {
  const int n = market.agent_count();
  const int m = market.object_count();
  std::vector<std::vector<Rat>> w(static_cast<std::size_t>(n));
  std::vector<Rat> outside(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Bundle& held = outcome.bundles[static_cast<std::size_t>(i)];
    for (ObjectId a = 1; a <= m; ++a)
      w[static_cast<std::size_t>(i)].push_back(market.pref(i).valuation(a, held));
    outside[static_cast<std::size_t>(i)] = market.pref(i).to_null(held.object, held.transfer);
  }

  if (n <= 6 && m <= 4) {
    // Direct search over allocations.
    ParetoSearch out;
    std::vector<ObjectId> cur(static_cast<std::size_t>(n), kNullObject);
    bool first = true;
    auto rec = [&](auto&& self, int agent, unsigned used, Rat sum) -> void {
      if (agent == n) {
        if (first || sum > out.best_total) {
          out.best_total = sum;
          out.best_allocation = cur;
          first = false;
        }
        return;
      }
      cur[static_cast<std::size_t>(agent)] = kNullObject;
      self(self, agent + 1, used, sum + outside[static_cast<std::size_t>(agent)]);
      for (ObjectId a = 1; a <= m; ++a) {
        unsigned bit = 1u << (a - 1);
        if (used & bit) continue;
        cur[static_cast<std::size_t>(agent)] = a;
        self(self, agent + 1, used | bit,
             sum + w[static_cast<std::size_t>(agent)][static_cast<std::size_t>(a - 1)]);
      }
      cur[static_cast<std::size_t>(agent)] = kNullObject;
    };
    rec(rec, 0, 0, Rat(0));
    return out;
  }

  UnitDemandAssignment res = max_weight_unit_demand(w, outside);
  ParetoSearch out;
  out.best_total = res.total;
  out.best_allocation.assign(res.object_of_agent.begin(), res.object_of_agent.end());
  return out;
}

}  // namespace

AxiomReport check_strategy_proof(const Mechanism& mech, const Market& market,
                                 const DeviationPool& pool, const Rat& tol) {
  if (static_cast<int>(pool.per_agent.size()) != market.agent_count())
    throw std::invalid_argument("pool must cover every agent");
  std::size_t pool_size = 0;
  MechanismOutcome truthful = mech.run(market);
  for (int i = 0; i < market.agent_count(); ++i) {
    const auto& deviations = pool.per_agent[static_cast<std::size_t>(i)];
    if (deviations.empty()) throw std::invalid_argument("pool must be nonempty for each agent");
    pool_size = std::max(pool_size, deviations.size());
    for (const Preference& lie : deviations) {
      MechanismOutcome deviated = mech.run(market.with_preference(i, lie));
      const Bundle& t = truthful.bundles[static_cast<std::size_t>(i)];
      const Bundle& d = deviated.bundles[static_cast<std::size_t>(i)];
      if (market.pref(i).compare(t, d, tol) == Order::Worse) {
        AxiomWitness w;
        w.agents = {i};
        w.deviation = lie;
        w.alternative = std::vector<Bundle>{t, d};
        return fail("strategy_proofness", std::move(w));
      }
    }
  }
  return pass("strategy_proofness",
              "pass on pool (up to " + std::to_string(pool_size) + " deviations per agent)");
}

AxiomReport check_ir(const Mechanism& mech, const Market& market, const Rat& tol) {
  MechanismOutcome outcome = mech.run(market);
  for (int i = 0; i < market.agent_count(); ++i) {
    const Bundle& b = outcome.bundles[static_cast<std::size_t>(i)];
    if (market.pref(i).compare(b, Bundle{kNullObject, 0}, tol) == Order::Worse) {
      AxiomWitness w;
      w.agents = {i};
      w.alternative = std::vector<Bundle>{b};
      return fail("individual_rationality", std::move(w));
    }
  }
  return pass("individual_rationality");
}

AxiomReport check_ete(const Mechanism& mech, const Market& market, const Rat& tol) {
  MechanismOutcome outcome = mech.run(market);
  bool any_pair = false;
  for (int i = 0; i < market.agent_count(); ++i) {
    for (int j = i + 1; j < market.agent_count(); ++j) {
      if (!(market.pref(i) == market.pref(j))) continue;
      any_pair = true;
      const Bundle& bi = outcome.bundles[static_cast<std::size_t>(i)];
      const Bundle& bj = outcome.bundles[static_cast<std::size_t>(j)];
      if (market.pref(i).compare(bi, bj, tol) != Order::Indifferent) {
        AxiomWitness w;
        w.agents = {i, j};
        w.alternative = std::vector<Bundle>{bi, bj};
        return fail("equal_treatment_of_equals", std::move(w));
      }
    }
  }
  return pass("equal_treatment_of_equals", any_pair ? "" : "no equal pair (vacuous)");
}

AxiomReport check_no_wastage(const Mechanism& mech, const Market& market) {
  MechanismOutcome outcome = mech.run(market);
  std::vector<char> assigned(static_cast<std::size_t>(market.object_count()) + 1, 0);
  for (const Bundle& b : outcome.bundles) assigned[static_cast<std::size_t>(b.object)] = 1;
  for (ObjectId a = 1; a <= market.object_count(); ++a)
    if (!assigned[static_cast<std::size_t>(a)]) {
      AxiomWitness w;
      w.objects = {a};
      return fail("no_wastage", std::move(w));
    }
  return pass("no_wastage");
}

AxiomReport check_no_subsidy(const Mechanism& mech, const Market& market) {
  MechanismOutcome outcome = mech.run(market);
  for (int i = 0; i < market.agent_count(); ++i) {
    if (outcome.bundles[static_cast<std::size_t>(i)].transfer < 0) {
      AxiomWitness w;
      w.agents = {i};
      w.alternative = std::vector<Bundle>{outcome.bundles[static_cast<std::size_t>(i)]};
      return fail("no_subsidy", std::move(w));
    }
  }
  return pass("no_subsidy");
}

AxiomReport check_no_envy(const Mechanism& mech, const Market& market, const Rat& tol) {
  MechanismOutcome outcome = mech.run(market);
  for (int i = 0; i < market.agent_count(); ++i) {
    for (int j = 0; j < market.agent_count(); ++j) {
      if (i == j) continue;
      const Bundle& bi = outcome.bundles[static_cast<std::size_t>(i)];
      const Bundle& bj = outcome.bundles[static_cast<std::size_t>(j)];
      if (market.pref(i).compare(bi, bj, tol) == Order::Worse) {
        AxiomWitness w;
        w.agents = {i, j};
        w.alternative = std::vector<Bundle>{bi, bj};
        return fail("no_envy", std::move(w));
      }
    }
  }
  return pass("no_envy");
}

AxiomReport check_pareto_efficient(const Mechanism& mech, const Market& market, const Rat& tol) {
  MechanismOutcome outcome = mech.run(market);
  ParetoSearch search = pareto_optimum(market, outcome);
  Rat current = outcome.revenue();
  if (search.best_total > current + tol) {
    AxiomWitness w;
    w.objects = search.best_allocation;
    std::vector<Bundle> alt;
    for (int i = 0; i < market.agent_count(); ++i) {
      ObjectId a = search.best_allocation[static_cast<std::size_t>(i)];
      const Bundle& held = outcome.bundles[static_cast<std::size_t>(i)];
      alt.push_back({a, market.pref(i).valuation(a, held)});
    }
    w.alternative = std::move(alt);
    return fail("pareto_efficiency", std::move(w),
                "attainable transfer sum " + to_frac(search.best_total) + " > " +
                    to_frac(current));
  }
  return pass("pareto_efficiency");
}

AxiomReport check_domination(const Mechanism& mech, const Market& market,
                             const SolveOptions& opt) {
  MechanismOutcome outcome = mech.run(market);
  EquilibriumResult eq = min_walrasian_prices(market, opt);
  Rat tol = (eq.mode == SolveMode::Epsilon) ? eq.tolerance * 2 : Rat(0);
  auto supports = enumerate_supporting_allocations(market, eq.prices, tol, kZminEnumerationCap);
  for (const ObjectAllocation& z : supports) {
    for (int i = 0; i < market.agent_count(); ++i) {
      ObjectId a = z.assignment[static_cast<std::size_t>(i)];
      Bundle zb{a, eq.prices.at(a)};
      if (market.pref(i).compare(outcome.bundles[static_cast<std::size_t>(i)], zb, tol) ==
          Order::Worse) {
        AxiomWitness w;
        w.agents = {i};
        w.objects = z.assignment;
        w.alternative = std::vector<Bundle>{outcome.bundles[static_cast<std::size_t>(i)], zb};
        return fail("equilibrium_domination", std::move(w));
      }
    }
  }
  return pass("equilibrium_domination");
}

bool replay_witness(const AxiomReport& report, const Mechanism& mech, const Market& market,
                    const Rat& tol) {
  if (report.holds || !report.witness) return false;
  const AxiomWitness& w = *report.witness;
  MechanismOutcome outcome = mech.run(market);

  if (report.axiom == "strategy_proofness") {
    if (w.agents.empty() || !w.deviation) return false;
    int i = w.agents[0];
    MechanismOutcome deviated = mech.run(market.with_preference(i, *w.deviation));
    return market.pref(i).compare(outcome.bundles[static_cast<std::size_t>(i)],
                                  deviated.bundles[static_cast<std::size_t>(i)],
                                  tol) == Order::Worse;
  }
  if (report.axiom == "individual_rationality") {
    int i = w.agents.at(0);
    return market.pref(i).compare(outcome.bundles[static_cast<std::size_t>(i)],
                                  Bundle{kNullObject, 0}, tol) == Order::Worse;
  }
  if (report.axiom == "equal_treatment_of_equals") {
    int i = w.agents.at(0), j = w.agents.at(1);
    return market.pref(i) == market.pref(j) &&
           market.pref(i).compare(outcome.bundles[static_cast<std::size_t>(i)],
                                  outcome.bundles[static_cast<std::size_t>(j)],
                                  tol) != Order::Indifferent;
  }
  if (report.axiom == "no_wastage") {
    ObjectId a = w.objects.at(0);
    for (const Bundle& b : outcome.bundles)
      if (b.object == a) return false;
    return true;
  }
  if (report.axiom == "no_subsidy") {
    int i = w.agents.at(0);
    return outcome.bundles[static_cast<std::size_t>(i)].transfer < 0;
  }
  if (report.axiom == "no_envy") {
    int i = w.agents.at(0), j = w.agents.at(1);
    return market.pref(i).compare(outcome.bundles[static_cast<std::size_t>(i)],
                                  outcome.bundles[static_cast<std::size_t>(j)],
                                  tol) == Order::Worse;
  }
  if (report.axiom == "pareto_efficiency") {
    if (!w.alternative) return false;
    // The alternative must weakly improve every agent and strictly raise
    // the transfer sum (transfers were chosen at indifference levels).
    ObjectAllocation alt;
    Rat sum = 0;
    for (const Bundle& b : *w.alternative) {
      alt.assignment.push_back(b.object);
      sum += b.transfer;
    }
    if (!alt.valid(market.object_count())) return false;
    for (int i = 0; i < market.agent_count(); ++i) {
      if (market.pref(i).compare((*w.alternative)[static_cast<std::size_t>(i)],
                                 outcome.bundles[static_cast<std::size_t>(i)],
                                 tol) == Order::Worse)
        return false;
    }
    return sum > outcome.revenue() + tol;
  }
  if (report.axiom == "equilibrium_domination") {
    if (!w.alternative || w.alternative->size() != 2) return false;
    int i = w.agents.at(0);
    return market.pref(i).compare(outcome.bundles[static_cast<std::size_t>(i)],
                                  (*w.alternative)[1], tol) == Order::Worse;
  }
  return false;
}

std::vector<RevenueComparison> compare_revenue(const Mechanism& a, const Mechanism& b,
                                               const std::vector<Market>& markets) {
  std::vector<RevenueComparison> out;
  out.reserve(markets.size());
  for (const Market& market : markets)
    out.push_back({a.run(market).revenue(), b.run(market).revenue()});
  return out;
}

}  // namespace walras
