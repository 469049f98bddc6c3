#include <doctest.h>

#include "walras/prooflab.hpp"

using namespace walras;

namespace {

Market identical_quasilinear(int n, std::vector<Rat> values) {
  std::vector<Preference> profile(static_cast<std::size_t>(n), make_quasilinear(values));
  return Market(static_cast<int>(values.size()), std::move(profile));
}

}  // namespace

TEST_CASE("valuation ceiling") {
  CHECK(valuation_ceiling(identical_quasilinear(3, {Rat(10), Rat(10)})) == Rat(11));
  CHECK(valuation_ceiling(identical_quasilinear(3, {Rat(10), Rat(2)})) == Rat(11));
  CHECK(valuation_ceiling(identical_quasilinear(3, {Rat(1, 3), Rat(1, 4)})) > 0);
}

TEST_CASE("chain enumeration and re-verification") {
  Market market = identical_quasilinear(3, {Rat(10), Rat(10)});

  // Seed transfer above every valuation: clause 2 fails immediately.
  CHECK(enumerate_chains(market, {1, Rat(12)}).empty());

  // Seed strictly attractive for everyone.
  auto chains = enumerate_chains(market, {1, Rat(5)});
  CHECK(!chains.empty());
  for (const IndifferenceChain& c : chains) CHECK(chain_is_valid(market, {1, Rat(5)}, c));

  // Singleton chains exist exactly when some agent strictly gains.
  bool has_singleton = false;
  for (const IndifferenceChain& c : chains) has_singleton |= (c.agents.size() == 1);
  CHECK(has_singleton);

  // All agents indifferent at their valuation: no chain.
  CHECK(enumerate_chains(market, {1, Rat(10)}).empty());
}

TEST_CASE("chain transfer limits") {
  Market market = identical_quasilinear(3, {Rat(10), Rat(10)});
  Bundle seed{1, Rat(5)};
  auto chains = enumerate_chains(market, seed);
  REQUIRE(!chains.empty());
  for (const IndifferenceChain& c : chains) {
    Rat d = chain_transfer_limit(market, seed, c);
    CHECK(d > seed.transfer);
    // Singleton: clause 2 binds exactly at the (0,0) valuation.
    if (c.agents.size() == 1) CHECK(d == Rat(10));
    // Valid strictly below the limit, invalid past it.
    Rat below = (seed.transfer + d) / 2;
    IndifferenceChain rebuilt = c;
    rebuilt.bundles[0] = {seed.object, below};
    for (std::size_t j = 0; j + 1 < rebuilt.agents.size(); ++j)
      rebuilt.bundles[j + 1] = {rebuilt.objects[j + 1],
                                market.pref(rebuilt.agents[j])
                                    .valuation(rebuilt.objects[j + 1], rebuilt.bundles[j])};
    CHECK(chain_is_valid(market, {seed.object, below}, rebuilt));

    IndifferenceChain past = c;
    past.bundles[0] = {seed.object, d + 1};
    for (std::size_t j = 0; j + 1 < past.agents.size(); ++j)
      past.bundles[j + 1] = {past.objects[j + 1],
                             market.pref(past.agents[j])
                                 .valuation(past.objects[j + 1], past.bundles[j])};
    CHECK(!chain_is_valid(market, {seed.object, d + 1}, past));
  }

  // Raising the seed transfer raises every chained transfer.
  IndifferenceChain longest = chains[0];
  for (const IndifferenceChain& c : chains)
    if (c.agents.size() > longest.agents.size()) longest = c;
  if (longest.agents.size() >= 2) {
    Rat t2_low = market.pref(longest.agents[0]).valuation(longest.objects[1], {1, Rat(5)});
    Rat t2_high = market.pref(longest.agents[0]).valuation(longest.objects[1], {1, Rat(6)});
    CHECK(t2_low < t2_high);
  }
}

TEST_CASE("seed transfer limit never exceeds the ceiling") {
  Market market = identical_quasilinear(3, {Rat(10), Rat(10)});
  Rat ceiling = valuation_ceiling(market);
  // No chain: the limit is the ceiling itself.
  CHECK(seed_transfer_limit(market, {1, Rat(10)}, ceiling) == ceiling);
  // With chains: bounded by the ceiling.
  CHECK(seed_transfer_limit(market, {1, Rat(5)}, ceiling) <= ceiling);
  CHECK(seed_transfer_limit(market, {1, Rat(5)}, ceiling) == Rat(10));
}

TEST_CASE("conversion sequence for the minimum-price mechanism") {
  Market market = outline_market(Rat(10));
  ConversionReport report = build_step1_sequence(market, make_mwep(), 0, 1);
  CHECK(report.completed);
  CHECK(report.event.empty());
  REQUIRE(report.steps.size() == 2);
  CHECK(report.profiles.size() == 3);
  for (const ConversionStep& s : report.steps) {
    CHECK(s.conditions.favoring_ok);
    CHECK(s.conditions.zero_valuations_ok);
    CHECK(s.conditions.cross_valuations_ok);
    CHECK(s.bundle_stable);
  }
  CHECK(report.steps[0].agent != report.steps[1].agent);
  CHECK(report.steps[0].object == 1);
  CHECK(report.steps[1].object == 2);
}

TEST_CASE("lemma checks for the minimum-price mechanism") {
  // Null-holders pay zero.
  for (Rat v : {Rat(10), Rat(7, 3)}) {
    Market market = outline_market(v);
    MechanismOutcome out = make_mwep().run(market);
    for (const Bundle& b : out.bundles)
      if (b.object == kNullObject) CHECK(b.transfer == 0);

    // Replacing an assigned agent's preference by a favoring preference for
    // its bundle leaves its bundle unchanged.
    for (int i = 0; i < market.agent_count(); ++i) {
      const Bundle& b = out.bundles[static_cast<std::size_t>(i)];
      if (b.object == kNullObject) continue;
      Preference fav = make_favoring(market.object_count(), b.object, b.transfer);
      MechanismOutcome swapped = make_mwep().run(market.with_preference(i, fav));
      CHECK(swapped.bundles[static_cast<std::size_t>(i)] == b);
    }
  }
}

TEST_CASE("outline replay") {
  for (Rat v : {Rat(10), Rat(1, 2), Rat(7, 3)}) {
    OutlineReport report = replay_outline(v);
    INFO("v = ", to_frac(v));
    for (const std::string& line : report.log) INFO(line);
    CHECK(report.ok);
    CHECK(report.base_prices == PriceVector({v, v}));
    CHECK(report.converted_prices == PriceVector({v, v}));
  }
}

TEST_CASE("chain enumeration guards") {
  Market market = identical_quasilinear(3, {Rat(10), Rat(10)});
  CHECK_THROWS_AS(enumerate_chains(market, {0, Rat(1)}), std::invalid_argument);
  IndifferenceChain bogus{{0}, {1}, {{1, Rat(5)}}};
  CHECK_THROWS_AS(chain_transfer_limit(market, {1, Rat(12)}, bogus), std::invalid_argument);
}
