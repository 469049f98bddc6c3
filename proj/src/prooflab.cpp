#include "walras/prooflab.hpp"

#include <algorithm>

namespace walras {

Rat valuation_ceiling(const Market& market) {
  Rat top = market.pref(0).from_null(1, 0);
  for (int i = 0; i < market.agent_count(); ++i)
    for (ObjectId a = 1; a <= market.object_count(); ++a)
      top = std::max(top, market.pref(i).from_null(a, 0));
  return top + 1;
}

namespace {

bool strictly_better_than_zero(const Preference& pref, const Bundle& b) {
  return pref.compare(b, Bundle{kNullObject, 0}) == Order::Better;
}

void extend_chains(const Market& market, IndifferenceChain& cur,
                   std::vector<IndifferenceChain>& out) {
  out.push_back(cur);
  if (static_cast<int>(cur.agents.size()) >= market.object_count()) return;
  int last_agent = cur.agents.back();
  const Bundle& last = cur.bundles.back();
  for (ObjectId a = 1; a <= market.object_count(); ++a) {
    if (std::find(cur.objects.begin(), cur.objects.end(), a) != cur.objects.end()) continue;
    Bundle next{a, market.pref(last_agent).valuation(a, last)};
    for (int j = 0; j < market.agent_count(); ++j) {
      if (std::find(cur.agents.begin(), cur.agents.end(), j) != cur.agents.end()) continue;
      if (!strictly_better_than_zero(market.pref(j), next)) continue;
      cur.agents.push_back(j);
      cur.objects.push_back(a);
      cur.bundles.push_back(next);
      extend_chains(market, cur, out);
      cur.agents.pop_back();
      cur.objects.pop_back();
      cur.bundles.pop_back();
    }
  }
}

}  // namespace

std::vector<IndifferenceChain> enumerate_chains(const Market& market, const Bundle& seed) {
  if (market.object_count() > 6)
    throw std::invalid_argument("chain enumeration limited to 6 objects");
  if (seed.object == kNullObject || seed.object > market.object_count())
    throw std::invalid_argument("chain seed must be a real object");
  std::vector<IndifferenceChain> out;
  for (int i = 0; i < market.agent_count(); ++i) {
    if (!strictly_better_than_zero(market.pref(i), seed)) continue;
    IndifferenceChain chain{{i}, {seed.object}, {seed}};
    extend_chains(market, chain, out);
  }
  return out;
}

bool chain_is_valid(const Market& market, const Bundle& seed, const IndifferenceChain& chain) {
  const std::size_t k = chain.agents.size();
  if (k == 0 || k > static_cast<std::size_t>(market.object_count())) return false;
  if (chain.objects.size() != k || chain.bundles.size() != k) return false;
  // Distinctness of agents and of objects.
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (chain.agents[i] == chain.agents[j] || chain.objects[i] == chain.objects[j])
        return false;
  if (!(chain.bundles[0] == seed) || chain.objects[0] != seed.object) return false;
  for (std::size_t j = 0; j < k; ++j) {
    if (chain.bundles[j].object != chain.objects[j]) return false;
    if (!strictly_better_than_zero(market.pref(chain.agents[j]), chain.bundles[j])) return false;
  }
  for (std::size_t j = 0; j + 1 < k; ++j) {
    if (market.pref(chain.agents[j]).compare(chain.bundles[j], chain.bundles[j + 1]) !=
        Order::Indifferent)
      return false;
  }
  return true;
}

Rat chain_transfer_limit(const Market& market, const Bundle& seed,
                         const IndifferenceChain& chain) {
  if (!chain_is_valid(market, seed, chain))
    throw std::invalid_argument("chain is not valid from the seed");
  // Clause j binds where bundle j meets agent j's (0,0) indifference level.
  // Walking that payment back through the (increasing) indifference solves
  // gives the seed transfer at which it happens; the minimum over clauses
  // is the supremum of admissible seed transfers.
  std::optional<Rat> limit;
  for (std::size_t j = 0; j < chain.agents.size(); ++j) {
    Rat y = market.pref(chain.agents[j]).from_null(chain.objects[j], 0);
    for (std::size_t l = j; l-- > 0;)
      y = market.pref(chain.agents[l]).valuation(chain.objects[l],
                                                 Bundle{chain.objects[l + 1], y});
    if (!limit || y < *limit) limit = y;
  }
  return *limit;
}

Rat seed_transfer_limit(const Market& market, const Bundle& seed, const Rat& ceiling) {
  auto chains = enumerate_chains(market, seed);
  if (chains.empty()) return ceiling;
  std::optional<Rat> d;
  for (const IndifferenceChain& c : chains) {
    Rat limit = chain_transfer_limit(market, seed, c);
    if (!d || limit < *d) d = limit;
  }
  return *d;
}

ConversionConditions check_conversion_conditions(const Preference& pref, ObjectId held_object,
                                                 const Rat& held_transfer, ObjectId next_object,
                                                 const Rat& cap, const Rat& ceiling) {
  const int m = pref.object_count();
  ConversionConditions cc;

  PriceVector favored_prices = PriceVector::zero(m);
  favored_prices.set(held_object, held_transfer);
  auto d = demand_set(pref, favored_prices);
  cc.favoring_ok = (d.size() == 1 && d[0] == held_object);

  cc.zero_valuations_ok = true;
  for (ObjectId a = 1; a <= m; ++a) {
    Rat v = pref.from_null(a, 0);
    if (a == held_object) {
      if (!(v < cap)) cc.zero_valuations_ok = false;
    } else if (a == next_object) {
      if (!(v > ceiling)) cc.zero_valuations_ok = false;
    } else {
      if (!(v < ceiling)) cc.zero_valuations_ok = false;
    }
  }

  cc.cross_valuations_ok = true;
  for (ObjectId a = 1; a <= m; ++a) {
    if (a == held_object || a == next_object) continue;
    if (!(pref.valuation(next_object, Bundle{a, 0}) > ceiling)) cc.cross_valuations_ok = false;
  }
  return cc;
}

ConversionReport build_step1_sequence(const Market& base, const Mechanism& mech,
                                      int start_agent, ObjectId start_object,
                                      const SolveOptions& opt) {
  const int m = base.object_count();
  ConversionReport report;
  report.ceiling = valuation_ceiling(base);
  report.profiles.push_back(base);

  Market current = base;
  std::vector<int> converted;
  for (int k = 1; k <= m; ++k) {
    // Objects in cyclic order from the start object.
    ObjectId xk = (start_object - 1 + k - 1) % m + 1;
    ObjectId xnext = (start_object - 1 + k) % m + 1;

    MechanismOutcome outcome = mech.run(current);
    int receiver = -1;
    for (int i = 0; i < base.agent_count(); ++i)
      if (outcome.bundles[static_cast<std::size_t>(i)].object == xk) receiver = i;
    if (receiver < 0) {
      report.event = "no agent received object " + std::to_string(xk) + " (no-wastage failed)";
      return report;
    }
    if (k == 1 && receiver != start_agent) {
      report.event = "start agent does not hold the start object";
      return report;
    }
    if (std::find(converted.begin(), converted.end(), receiver) != converted.end()) {
      report.event = "object " + std::to_string(xk) + " went to an already-converted agent " +
                     std::to_string(receiver);
      return report;
    }

    Bundle favored = outcome.bundles[static_cast<std::size_t>(receiver)];
    // Transfer limits always come from the base profile.
    Rat cap = seed_transfer_limit(base, favored, report.ceiling);

    ConversionStep step;
    step.agent = receiver;
    step.object = xk;
    step.favored = favored;
    step.cap = cap;
    try {
      Preference replacement =
          make_conversion_preference(m, xk, favored.transfer, xnext, cap, report.ceiling);
      step.conditions = check_conversion_conditions(replacement, xk, favored.transfer, xnext,
                                                    cap, report.ceiling);
      Market next = current.with_preference(receiver, replacement);
      MechanismOutcome after = mech.run(next);
      step.bundle_stable =
          after.bundles[static_cast<std::size_t>(receiver)] == favored;
      current = std::move(next);
    } catch (const std::exception& e) {
      report.steps.push_back(step);
      report.event = std::string("construction failed at object ") + std::to_string(xk) + ": " +
                     e.what();
      return report;
    }
    report.steps.push_back(step);
    report.profiles.push_back(current);
    converted.push_back(receiver);
  }
  report.completed = true;
  return report;
}

Market outline_market(const Rat& v) {
  if (v <= 0) throw std::invalid_argument("valuation must be positive");
  // Distinct preferences agreeing at (0,0): each is a plain shift by v on
  // the price range the auction visits, with a kink buried below it at a
  // per-agent depth.
  std::vector<Preference> profile;
  for (int i = 0; i < 3; ++i) {
    Rat depth = v + i + 1;
    std::vector<PwlBijection> maps;
    for (int a = 0; a < 2; ++a)
      maps.emplace_back(std::vector<std::pair<Rat, Rat>>{
          {-depth - 1, -depth - 1 + v / 2}, {-depth, -depth + v}});
    profile.emplace_back(std::move(maps));
  }
  return Market(2, std::move(profile));
}

OutlineReport replay_outline(const Rat& v, const SolveOptions& opt) {
  OutlineReport report{false, v, PriceVector::zero(2), PriceVector::zero(2), {}};
  Market base = outline_market(v);
  Mechanism mwep = make_mwep(opt);
  Rat ceiling = valuation_ceiling(base);
  report.log.push_back("ceiling = " + to_frac(ceiling));

  EquilibriumResult eq = min_walrasian_prices(base, opt);
  report.base_prices = eq.prices;
  bool base_ok = eq.certificate.ok && eq.prices.at(1) == v && eq.prices.at(2) == v;
  report.log.push_back("base minimum prices = (" + to_frac(eq.prices.at(1)) + ", " +
                       to_frac(eq.prices.at(2)) + ")" + (base_ok ? " [ok]" : " [MISMATCH]"));

  // The unassigned agent sits at (0,0) indifferent to both priced objects.
  MechanismOutcome base_outcome = mwep.run(base);
  int unassigned = -1;
  for (int i = 0; i < 3; ++i)
    if (base_outcome.bundles[static_cast<std::size_t>(i)].object == kNullObject) unassigned = i;
  bool indiff_ok = unassigned >= 0;
  if (indiff_ok) {
    const Preference& r = base.pref(unassigned);
    indiff_ok =
        base_outcome.bundles[static_cast<std::size_t>(unassigned)] == Bundle{kNullObject, 0} &&
        r.compare(Bundle{kNullObject, 0}, Bundle{1, v}) == Order::Indifferent &&
        r.compare(Bundle{kNullObject, 0}, Bundle{2, v}) == Order::Indifferent;
  }
  report.log.push_back(std::string("unassigned agent holds (0,0), indifferent to both: ") +
                       (indiff_ok ? "yes" : "NO"));

  ConversionReport conv = build_step1_sequence(base, mwep, 0, 1, opt);
  bool conv_ok = conv.completed;
  for (const ConversionStep& s : conv.steps) {
    report.log.push_back("converted agent " + std::to_string(s.agent) + " on object " +
                         std::to_string(s.object) + ", cap " + to_frac(s.cap) +
                         (s.conditions.all() ? " [conditions ok]" : " [conditions FAILED]") +
                         (s.bundle_stable ? " [bundle stable]" : " [bundle moved]"));
    conv_ok = conv_ok && s.conditions.all() && s.bundle_stable;
  }
  if (!conv.event.empty()) report.log.push_back("event: " + conv.event);

  bool conv_prices_ok = false;
  if (conv.completed) {
    EquilibriumResult eq2 = min_walrasian_prices(conv.profiles.back(), opt);
    report.converted_prices = eq2.prices;
    conv_prices_ok = eq2.certificate.ok && eq2.prices.at(1) == v && eq2.prices.at(2) == v;
    report.log.push_back("converted minimum prices = (" + to_frac(eq2.prices.at(1)) + ", " +
                         to_frac(eq2.prices.at(2)) + ")" +
                         (conv_prices_ok ? " [ok]" : " [MISMATCH]"));
  }

  report.ok = base_ok && indiff_ok && conv_ok && conv_prices_ok;
  return report;
}

}  // namespace walras
