#pragma once

#include <string>

#include "walras/mechanisms.hpp"

namespace walras {

// Chain of k <= m distinct agents and k distinct real objects whose
// bundles start at a seed, are strictly better than (0,0) for their agent,
// and are consecutive-indifferent: bundles[j+1] solves agent j's
// indifference with bundles[j].
struct IndifferenceChain {
  std::vector<int> agents;
  std::vector<ObjectId> objects;
  std::vector<Bundle> bundles;
};

// Strict upper bound (max + 1) on every agent's valuation of every real
// object at (0,0).
Rat valuation_ceiling(const Market& market);

// Depth-first enumeration of every chain from the seed bundle (all lengths,
// prefixes included). Markets with more than 6 objects are rejected.
std::vector<IndifferenceChain> enumerate_chains(const Market& market, const Bundle& seed);

// Re-verifies the three chain clauses from scratch.
bool chain_is_valid(const Market& market, const Bundle& seed, const IndifferenceChain& chain);

// Supremum of seed transfers t' at which the chain stays valid from
// (seed.object, t'). Strictly above the seed transfer; the supremum itself
// is the first point where a strict clause degrades to indifference.
Rat chain_transfer_limit(const Market& market, const Bundle& seed,
                         const IndifferenceChain& chain);

// Minimum chain_transfer_limit over every chain from the seed, or the
// ceiling when no chain exists. Never exceeds the ceiling.
Rat seed_transfer_limit(const Market& market, const Bundle& seed, const Rat& ceiling);

struct ConversionConditions {
  bool favoring_ok = false;         // demands exactly the held object at its price
  bool zero_valuations_ok = false;  // (0,0)-valuations: held < cap, next > ceiling, rest < ceiling
  bool cross_valuations_ok = false; // next's valuation above ceiling from other free bundles
  bool all() const { return favoring_ok && zero_valuations_ok && cross_valuations_ok; }
};

ConversionConditions check_conversion_conditions(const Preference& pref, ObjectId held_object,
                                                 const Rat& held_transfer, ObjectId next_object,
                                                 const Rat& cap, const Rat& ceiling);

struct ConversionStep {
  int agent = -1;
  ObjectId object = kNullObject;
  Bundle favored;
  Rat cap;
  ConversionConditions conditions;
  bool bundle_stable = false;  // agent keeps its bundle after conversion
};

struct ConversionReport {
  bool completed = false;
  std::string event;  // nonempty when the construction had to stop
  Rat ceiling;
  std::vector<ConversionStep> steps;
  std::vector<Market> profiles;  // R^0 .. R^k
};

// Converts one agent per object, in cyclic object order from start_object:
// at each step the current receiver of the next object gets a conversion
// preference built from its bundle, the seed transfer limit, and the
// ceiling. Receivers that were already converted are reported as an event
// rather than treated as a bug.
ConversionReport build_step1_sequence(const Market& base, const Mechanism& mech,
                                      int start_agent, ObjectId start_object,
                                      const SolveOptions& opt = {});

struct OutlineReport {
  bool ok = false;
  Rat v;
  PriceVector base_prices;
  PriceVector converted_prices;
  std::vector<std::string> log;
};

// Three agents, two objects, distinct preferences whose (0,0)-valuations
// all equal v: checks p_min = (v, v), converts the first two receivers, and
// checks the converted profile's minimum prices are still (v, v).
OutlineReport replay_outline(const Rat& v, const SolveOptions& opt = {});

// Builds the walkthrough base profile (distinct preferences, identical
// (0,0)-valuations v on both objects).
Market outline_market(const Rat& v);

}  // namespace walras
