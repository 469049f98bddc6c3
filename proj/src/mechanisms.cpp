#include "walras/mechanisms.hpp"

#include <algorithm>

#include "walras/assignment.hpp"

namespace walras {

ObjectAllocation MechanismOutcome::allocation() const {
  ObjectAllocation a;
  a.assignment.reserve(bundles.size());
  for (const Bundle& b : bundles) a.assignment.push_back(b.object);
  return a;
}

Rat MechanismOutcome::revenue() const {
  Rat total = 0;
  for (const Bundle& b : bundles) total += b.transfer;
  return total;
}

namespace {

MechanismOutcome outcome_at_prices(const EquilibriumResult& eq) {
  MechanismOutcome out;
  out.bundles.reserve(eq.allocation.assignment.size());
  for (ObjectId a : eq.allocation.assignment) out.bundles.push_back({a, eq.prices.at(a)});
  return out;
}

MechanismOutcome shift_transfers(MechanismOutcome out, const Rat& delta) {
  for (Bundle& b : out.bundles) b.transfer += delta;
  return out;
}

// Welfare-maximizing object allocation for quasilinear values, lexicographic
// tie-break over assignment vectors (objects ascending, null last), with an
// optional excluded agent (assigned the null object and ignored). Search by
// enumeration for small markets, Hungarian probes above.
struct WelfareProblem {
  const std::vector<std::vector<Rat>>& values;  // values[i][a-1]
  int n;
  int m;
};

Rat best_completion(const WelfareProblem& w, const std::vector<int>& active, std::size_t from,
                    unsigned used) {
  std::vector<std::vector<Rat>> rows;
  std::vector<Rat> outside;
  for (std::size_t k = from; k < active.size(); ++k) {
    std::vector<Rat> row;
    for (int a = 1; a <= w.m; ++a)
      row.push_back((used & (1u << (a - 1)))
                        ? Rat(-1)
                        : w.values[static_cast<std::size_t>(active[k])]
                                  [static_cast<std::size_t>(a - 1)]);
    rows.push_back(std::move(row));
    outside.push_back(0);
  }
  if (rows.empty()) return 0;
  return max_weight_unit_demand(rows, outside).total;
}

std::pair<ObjectAllocation, Rat> max_welfare(const WelfareProblem& w, int excluded) {
  std::vector<int> active;
  for (int i = 0; i < w.n; ++i)
    if (i != excluded) active.push_back(i);

  ObjectAllocation alloc;
  alloc.assignment.assign(static_cast<std::size_t>(w.n), kNullObject);
  Rat achieved = 0;
  unsigned used = 0;
  Rat target = best_completion(w, active, 0, 0);
  for (std::size_t k = 0; k < active.size(); ++k) {
    int i = active[k];
    // Real objects ascending, then the null option.
    bool placed = false;
    for (int a = 1; a <= w.m && !placed; ++a) {
      unsigned bit = 1u << (a - 1);
      if (used & bit) continue;
      Rat va = w.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(a - 1)];
      if (achieved + va + best_completion(w, active, k + 1, used | bit) == target) {
        alloc.assignment[static_cast<std::size_t>(i)] = a;
        achieved += va;
        used |= bit;
        placed = true;
      }
    }
    if (!placed && achieved + best_completion(w, active, k + 1, used) != target)
      throw std::logic_error("welfare search lost the optimum");
  }
  return {alloc, target};
}

}  // namespace

Mechanism make_mwep(const SolveOptions& opt) {
  return Mechanism("mwep", [opt](const Market& market) {
    return outcome_at_prices(min_walrasian_prices(market, opt));
  });
}

Mechanism make_max_wep(const SolveOptions& opt) {
  return Mechanism("max_wep", [opt](const Market& market) {
    return outcome_at_prices(max_walrasian_prices(market, opt));
  });
}

Mechanism make_mwep_with_fee(const Rat& fee, const SolveOptions& opt) {
  if (fee <= 0) throw std::invalid_argument("fee must be positive");
  return Mechanism("mwep_with_fee", [fee, opt](const Market& market) {
    return shift_transfers(outcome_at_prices(min_walrasian_prices(market, opt)), fee);
  });
}

Mechanism make_mwep_with_subsidy(const Rat& subsidy, const SolveOptions& opt) {
  if (subsidy <= 0) throw std::invalid_argument("subsidy must be positive");
  return Mechanism("mwep_with_subsidy", [subsidy, opt](const Market& market) {
    return shift_transfers(outcome_at_prices(min_walrasian_prices(market, opt)), -subsidy);
  });
}

Mechanism make_dictator_then_mwep(int favored_agent, const SolveOptions& opt) {
  return Mechanism("dictator_then_mwep", [favored_agent, opt](const Market& market) {
    const int n = market.agent_count();
    const int m = market.object_count();
    if (favored_agent < 0 || favored_agent >= n)
      throw std::invalid_argument("favored agent out of range");

    // Best free bundle among the real objects, smallest index on ties.
    const Preference& fav = market.pref(favored_agent);
    ObjectId pick = 1;
    Rat best = fav.to_null(1, 0);
    for (ObjectId a = 2; a <= m; ++a) {
      Rat u = fav.to_null(a, 0);
      if (u < best) {
        best = u;
        pick = a;
      }
    }

    std::vector<ObjectId> keep;
    for (ObjectId a = 1; a <= m; ++a)
      if (a != pick) keep.push_back(a);
    std::vector<Preference> sub_profile;
    std::vector<int> sub_agents;
    for (int i = 0; i < n; ++i) {
      if (i == favored_agent) continue;
      sub_profile.push_back(market.pref(i).restricted_to(keep));
      sub_agents.push_back(i);
    }
    Market sub(m - 1, std::move(sub_profile));
    EquilibriumResult eq = min_walrasian_prices(sub, opt);

    MechanismOutcome out;
    out.bundles.assign(static_cast<std::size_t>(n), Bundle{kNullObject, 0});
    out.bundles[static_cast<std::size_t>(favored_agent)] = {pick, 0};
    for (std::size_t k = 0; k < sub_agents.size(); ++k) {
      ObjectId sub_obj = eq.allocation.assignment[k];
      ObjectId orig = (sub_obj == kNullObject) ? kNullObject
                                               : keep[static_cast<std::size_t>(sub_obj - 1)];
      out.bundles[static_cast<std::size_t>(sub_agents[k])] = {orig, eq.prices.at(sub_obj)};
    }
    return out;
  });
}

Mechanism make_no_sale() {
  return Mechanism("no_sale", [](const Market& market) {
    MechanismOutcome out;
    out.bundles.assign(static_cast<std::size_t>(market.agent_count()), Bundle{kNullObject, 0});
    return out;
  });
}

Mechanism make_vcg_quasilinear() {
  return Mechanism("vcg_quasilinear", [](const Market& market) {
    const int n = market.agent_count();
    const int m = market.object_count();
    std::vector<std::vector<Rat>> values;
    for (int i = 0; i < n; ++i) {
      if (!market.pref(i).is_quasilinear())
        throw DomainError("vcg_quasilinear requires a quasilinear profile");
      values.push_back(market.pref(i).zero_valuations());
    }
    WelfareProblem w{values, n, m};
    auto [alloc, welfare] = max_welfare(w, -1);

    MechanismOutcome out;
    out.bundles.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      ObjectId a = alloc.assignment[static_cast<std::size_t>(i)];
      Rat own = (a == kNullObject)
                    ? Rat(0)
                    : values[static_cast<std::size_t>(i)][static_cast<std::size_t>(a - 1)];
      Rat others_without_me = max_welfare(w, i).second;
      Rat others_with_me = welfare - own;
      out.bundles.push_back({a, others_without_me - others_with_me});
    }
    return out;
  });
}

Mechanism mechanism_by_name(const std::string& name, const Rat& amount, int favored_agent,
                            const SolveOptions& opt) {
  if (name == "mwep") return make_mwep(opt);
  if (name == "max_wep") return make_max_wep(opt);
  if (name == "mwep_with_fee") return make_mwep_with_fee(amount, opt);
  if (name == "mwep_with_subsidy") return make_mwep_with_subsidy(amount, opt);
  if (name == "dictator_then_mwep") return make_dictator_then_mwep(favored_agent, opt);
  if (name == "no_sale") return make_no_sale();
  if (name == "vcg_quasilinear") return make_vcg_quasilinear();
  throw std::invalid_argument("unknown mechanism: " + name);
}

std::vector<std::string> mechanism_names() {
  return {"mwep",    "max_wep",           "mwep_with_fee", "mwep_with_subsidy",
          "dictator_then_mwep", "no_sale", "vcg_quasilinear"};
}

}  // namespace walras
