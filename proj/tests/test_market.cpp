#include <doctest.h>

#include "oracles.hpp"
#include "walras/allocation_search.hpp"
#include "walras/equilibrium.hpp"
#include "walras/generator.hpp"

using namespace walras;

namespace {

Market identical_quasilinear(int n, std::vector<Rat> values) {
  std::vector<Preference> profile(static_cast<std::size_t>(n), make_quasilinear(values));
  return Market(static_cast<int>(values.size()), std::move(profile));
}

}  // namespace

TEST_CASE("demand sets") {
  Market market = identical_quasilinear(3, {Rat(10), Rat(2)});
  CHECK(demand_set(market.pref(0), PriceVector({Rat(10), Rat(2)})) ==
        std::vector<ObjectId>{0, 1, 2});
  CHECK(demand_set(market.pref(0), PriceVector({Rat(3), Rat(3)})) == std::vector<ObjectId>{1});
  Preference fav = make_favoring(2, 1, Rat(3));
  CHECK(demand_set(fav, PriceVector({Rat(3), Rat(0)})) == std::vector<ObjectId>{1});
}

TEST_CASE("overdemand detector against subset enumeration") {
  Market market = identical_quasilinear(3, {Rat(10), Rat(2)});

  auto od = find_overdemanded(market, PriceVector::zero(2));
  REQUIRE(od.has_value());
  CHECK(*od == std::vector<ObjectId>{1});

  // Three agents demanding {x1}, {x2}, {x1,x2}: only the pair set is
  // overdemanded.
  std::vector<Preference> profile = {make_quasilinear({Rat(10), Rat(1)}),
                                     make_quasilinear({Rat(1), Rat(10)}),
                                     make_quasilinear({Rat(5), Rat(5)})};
  Market mixed(2, std::move(profile));
  auto od2 = find_overdemanded(mixed, PriceVector::zero(2));
  REQUIRE(od2.has_value());
  CHECK(*od2 == std::vector<ObjectId>{1, 2});
  auto oracle2 = oracles::all_overdemanded(mixed, PriceVector::zero(2));
  REQUIRE(oracle2.size() == 1);
  CHECK(oracle2[0] == *od2);

  // Randomized agreement with the enumeration oracle, including
  // inclusion-minimality of the returned set.
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Market m = generate_market(seed, 4 + seed % 2, 2 + seed % 2, Family::Mixed);
    PriceVector p = PriceVector::zero(m.object_count());
    for (ObjectId a = 1; a <= m.object_count(); ++a) p.set(a, Rat(seed % (a + 3), 1));
    auto got = find_overdemanded(m, p);
    auto all = oracles::all_overdemanded(m, p);
    CHECK(got.has_value() == !all.empty());
    if (got) {
      CHECK(std::find(all.begin(), all.end(), *got) != all.end());
      for (const auto& other : all) {
        if (other.size() >= got->size()) continue;
        bool strict_subset = std::includes(got->begin(), got->end(), other.begin(), other.end());
        CHECK(!strict_subset);
      }
    }
  }
}

TEST_CASE("weak underdemand detector") {
  Market market = identical_quasilinear(3, {Rat(10), Rat(2)});

  // Nobody demands x1 at a huge price.
  auto wu = find_weakly_underdemanded(market, PriceVector({Rat(100), Rat(0)}));
  REQUIRE(wu.has_value());
  CHECK(*wu == std::vector<ObjectId>{1});

  // All prices zero: vacuous by the positivity clause.
  CHECK(!find_weakly_underdemanded(market, PriceVector::zero(2)).has_value());

  // At the minimum equilibrium prices: none.
  CHECK(!find_weakly_underdemanded(market, PriceVector({Rat(10), Rat(2)})).has_value());

  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    Market m = generate_market(seed, 4, 3, Family::Mixed);
    PriceVector p = PriceVector::zero(3);
    for (ObjectId a = 1; a <= 3; ++a) p.set(a, Rat((seed + a) % 5, 1));
    auto got = find_weakly_underdemanded(m, p);
    auto all = oracles::all_weakly_underdemanded(m, p);
    CHECK(got.has_value() == !all.empty());
    if (got) CHECK(std::find(all.begin(), all.end(), *got) != all.end());
  }
}

TEST_CASE("certification at and around the outline prices") {
  Market market = identical_quasilinear(3, {Rat(10), Rat(10)});

  Certificate at = certify_equilibrium(market, PriceVector({Rat(10), Rat(10)}));
  CHECK(at.ok);

  Certificate below = certify_equilibrium(market, PriceVector::zero(2));
  REQUIRE(!below.ok);
  CHECK(*below.kind == ViolationKind::Overdemanded);
  CHECK(!oracles::all_overdemanded(market, PriceVector::zero(2)).empty());

  Certificate above = certify_equilibrium(market, PriceVector({Rat(20), Rat(20)}));
  REQUIRE(!above.ok);
  CHECK(*above.kind == ViolationKind::WeaklyUnderdemanded);
  CHECK(!oracles::all_weakly_underdemanded(market, PriceVector({Rat(20), Rat(20)})).empty());
}

TEST_CASE("walrasian definition check") {
  Market market = identical_quasilinear(3, {Rat(10), Rat(10)});
  PriceVector p({Rat(10), Rat(10)});
  CHECK(is_walrasian_equilibrium(market, ObjectAllocation{{1, 2, 0}}, p));
  // A positively-priced object left unassigned.
  CHECK(!is_walrasian_equilibrium(market, ObjectAllocation{{1, 0, 0}}, p));
  // Demand clause fails at zero prices for the null-holder.
  CHECK(!is_walrasian_equilibrium(market, ObjectAllocation{{1, 2, 0}}, PriceVector::zero(2)));
  // Duplicate real object is invalid.
  CHECK(!is_walrasian_equilibrium(market, ObjectAllocation{{1, 1, 0}}, p));
}

TEST_CASE("demand-connected sequences") {
  Market market = identical_quasilinear(3, {Rat(10), Rat(10)});
  PriceVector p({Rat(10), Rat(10)});
  ObjectAllocation alloc{{1, 2, 0}};

  // Start at the null-holder: singleton.
  CHECK(demand_connected_sequence(market, alloc, p, 2) == std::vector<int>{2});

  auto path = demand_connected_sequence(market, alloc, p, 0);
  REQUIRE(path.size() >= 2);
  CHECK(path.front() == 0);
  CHECK(alloc.assignment[static_cast<std::size_t>(path.back())] == kNullObject);
  // Re-verify the shared-demand clause along the path.
  for (std::size_t k = 1; k < path.size(); ++k) {
    auto d = demand_set(market.pref(path[k]), p);
    ObjectId prev = alloc.assignment[static_cast<std::size_t>(path[k - 1])];
    ObjectId own = alloc.assignment[static_cast<std::size_t>(path[k])];
    CHECK(std::find(d.begin(), d.end(), prev) != d.end());
    CHECK(std::find(d.begin(), d.end(), own) != d.end());
  }
  for (std::size_t i = 0; i < path.size(); ++i)
    for (std::size_t j = i + 1; j < path.size(); ++j) CHECK(path[i] != path[j]);

  // Four agents, two objects: chains stay short.
  Market four = identical_quasilinear(4, {Rat(10), Rat(10)});
  EquilibriumResult eq = min_walrasian_prices(four);
  auto chain = demand_connected_sequence(four, eq.allocation, eq.prices, 0);
  CHECK(chain.size() <= 3);
}

TEST_CASE("market construction bounds") {
  CHECK_THROWS_AS(identical_quasilinear(2, {Rat(1), Rat(1)}), std::invalid_argument);
  CHECK_THROWS_AS(Market(2, {}), std::invalid_argument);
}
