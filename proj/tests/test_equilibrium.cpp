#include <doctest.h>

#include "oracles.hpp"
#include "walras/allocation_search.hpp"
#include "walras/equilibrium.hpp"
#include "walras/generator.hpp"
#include "walras/prooflab.hpp"

using namespace walras;

namespace {

Market identical_quasilinear(int n, std::vector<Rat> values) {
  std::vector<Preference> profile(static_cast<std::size_t>(n), make_quasilinear(values));
  return Market(static_cast<int>(values.size()), std::move(profile));
}

}  // namespace

TEST_CASE("outline instance solves to (v, v)") {
  for (Rat v : {Rat(10), Rat(1, 2), Rat(7, 3)}) {
    Market market = outline_market(v);
    EquilibriumResult eq = min_walrasian_prices(market);
    CHECK(eq.mode == SolveMode::Exact);
    CHECK(eq.certificate.ok);
    CHECK(eq.prices.at(1) == v);
    CHECK(eq.prices.at(2) == v);
    CHECK(is_walrasian_equilibrium(market, eq.allocation, eq.prices));
  }
}

TEST_CASE("identical quasilinear agents pay their values") {
  Market market = identical_quasilinear(3, {Rat(10), Rat(2)});
  EquilibriumResult eq = min_walrasian_prices(market);
  CHECK(eq.prices == PriceVector({Rat(10), Rat(2)}));
  CHECK(eq.certificate.ok);
  CHECK(eq.allocation == ObjectAllocation{{1, 2, 0}});
  CHECK(grid_oracle_min_prices(market, 1, Rat(15)) == eq.prices);
}

TEST_CASE("asymmetric quasilinear instance matches pivot prices") {
  std::vector<Preference> profile = {make_quasilinear({Rat(10), Rat(2)}),
                                     make_quasilinear({Rat(8), Rat(5)}),
                                     make_quasilinear({Rat(3), Rat(1)})};
  Market market(2, std::move(profile));
  EquilibriumResult eq = min_walrasian_prices(market);
  CHECK(eq.prices == PriceVector({Rat(4), Rat(1)}));
  CHECK(grid_oracle_min_prices(market, 1, Rat(12)) == eq.prices);

  EquilibriumResult mx = max_walrasian_prices(market);
  CHECK(mx.prices == PriceVector({Rat(10), Rat(5)}));
  CHECK(mx.certificate.ok);
  CHECK(grid_oracle_max_prices(market, 1, Rat(12)) == mx.prices);
}

TEST_CASE("minimum prices are positive and certified on generated markets") {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    Family family = static_cast<Family>(seed % 3);
    int n = 3 + static_cast<int>(seed % 4);
    int m = 2 + static_cast<int>(seed % std::min(3, n - 2));
    Market market = generate_market(seed, n, m, family);
    EquilibriumResult eq = min_walrasian_prices(market);
    CHECK(eq.certificate.ok);
    for (ObjectId a = 1; a <= m; ++a) CHECK(eq.prices.at(a) > 0);
    CHECK(is_walrasian_equilibrium(market, eq.allocation, eq.prices));

    EquilibriumResult mx = max_walrasian_prices(market);
    CHECK(mx.certificate.ok);
    for (ObjectId a = 1; a <= m; ++a) CHECK(mx.prices.at(a) >= eq.prices.at(a));
    CHECK(is_walrasian_equilibrium(market, mx.allocation, mx.prices));
  }
}

TEST_CASE("grid oracle agrees with the exact auction on small markets") {
  for (std::uint64_t seed = 300; seed < 312; ++seed) {
    Market market = generate_market(seed, 4, 2, Family::Quasilinear);
    EquilibriumResult eq = min_walrasian_prices(market);
    PriceVector grid = grid_oracle_min_prices(market, 1, valuation_ceiling(market));
    CHECK(grid == eq.prices);
    PriceVector grid_max = grid_oracle_max_prices(market, 1, valuation_ceiling(market));
    CHECK(grid_max == max_walrasian_prices(market).prices);
  }
}

TEST_CASE("grid oracle fails when the step misses the equilibrium") {
  // Equilibrium at (1/2, 1/2) is invisible on the integer grid.
  Market market = outline_market(Rat(1, 2));
  CHECK_THROWS_AS(grid_oracle_min_prices(market, 1, Rat(5)), OracleFailureError);
}

TEST_CASE("epsilon mode agrees with exact mode") {
  SolveOptions eps;
  eps.mode = SolveMode::Epsilon;
  for (std::uint64_t seed = 400; seed < 408; ++seed) {
    Market market = generate_market(seed, 4, 2, Family::Mixed);
    EquilibriumResult exact = min_walrasian_prices(market);
    EquilibriumResult approx = min_walrasian_prices(market, eps);
    CHECK(approx.mode == SolveMode::Epsilon);
    CHECK(certify_equilibrium(market, approx.prices, eps.epsilon).ok);
    for (ObjectId a = 1; a <= 2; ++a) {
      Rat diff = exact.prices.at(a) - approx.prices.at(a);
      if (diff < 0) diff = -diff;
      CHECK(diff <= 2);  // epsilon path walks a coarse staircase
    }
  }
}

TEST_CASE("supporting allocation selection") {
  Market market = identical_quasilinear(3, {Rat(10), Rat(10)});
  PriceVector p({Rat(10), Rat(10)});
  ObjectAllocation z = select_zmin_allocation(market, p);
  CHECK(z == ObjectAllocation{{1, 2, 0}});

  // Unique supporting matching is returned as-is.
  std::vector<Preference> profile = {make_quasilinear({Rat(10), Rat(2)}),
                                     make_quasilinear({Rat(8), Rat(5)}),
                                     make_quasilinear({Rat(3), Rat(1)})};
  Market asym(2, std::move(profile));
  EquilibriumResult eq = min_walrasian_prices(asym);
  auto all = enumerate_supporting_allocations(asym, eq.prices);
  REQUIRE(all.size() == 1);
  CHECK(select_zmin_allocation(asym, eq.prices) == all[0]);

  // Tie between two supporting matchings: agent 0 takes its
  // smaller-indexed demanded object.
  std::vector<Preference> tied = {make_quasilinear({Rat(6), Rat(6)}),
                                  make_quasilinear({Rat(6), Rat(6)}),
                                  make_quasilinear({Rat(1), Rat(1)})};
  Market tie_market(2, std::move(tied));
  EquilibriumResult tie_eq = min_walrasian_prices(tie_market);
  ObjectAllocation pick = select_zmin_allocation(tie_market, tie_eq.prices);
  CHECK(pick.assignment[0] == 1);

  // Every agent is indifferent across its bundles in the supporting set.
  auto supports = enumerate_supporting_allocations(tie_market, tie_eq.prices);
  CHECK(supports.size() >= 2);
  for (const auto& za : supports)
    for (const auto& zb : supports)
      for (int i = 0; i < 3; ++i) {
        Bundle ba{za.assignment[static_cast<std::size_t>(i)],
                  tie_eq.prices.at(za.assignment[static_cast<std::size_t>(i)])};
        Bundle bb{zb.assignment[static_cast<std::size_t>(i)],
                  tie_eq.prices.at(zb.assignment[static_cast<std::size_t>(i)])};
        CHECK(tie_market.pref(i).compare(ba, bb) == Order::Indifferent);
      }
}

TEST_CASE("certificate ok implies a walrasian allocation exists") {
  for (std::uint64_t seed = 500; seed < 520; ++seed) {
    Market market = generate_market(seed, 4, 3, Family::Mixed);
    EquilibriumResult eq = min_walrasian_prices(market);
    REQUIRE(eq.certificate.ok);
    CHECK(has_supporting_allocation(market, eq.prices));
    CHECK(oracles::walrasian_by_enumeration(market, eq.prices));
  }
}
