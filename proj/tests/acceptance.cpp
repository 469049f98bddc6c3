// Acceptance suite: every criterion prints one pass/fail line; the exit
// code is the number of failed criteria.

#include <chrono>
#include <iostream>
#include <vector>

#include "walras/allocation_search.hpp"
#include "walras/io.hpp"

using namespace walras;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail = "") {
  std::cout << "criterion " << index << " (" << name << "): " << (ok ? "PASS" : "FAIL");
  if (!detail.empty()) std::cout << " - " << detail;
  std::cout << "\n" << std::flush;
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Shared market sample: n <= 6, m <= 4, families rotating.
std::vector<Market> sample_markets(std::uint64_t base_seed, int count, int max_m = 4) {
  std::vector<Market> out;
  for (int i = 0; i < count; ++i) {
    std::uint64_t seed = base_seed + static_cast<std::uint64_t>(i);
    int n = 3 + i % 4;
    int m = 2 + i % std::min(max_m - 1, n - 2 > 0 ? n - 2 : 1);
    if (m >= n) m = n - 1;
    Family family = static_cast<Family>(i % 3);
    out.push_back(generate_market(seed, n, m, family));
  }
  return out;
}

void criterion1_outline() {
  bool ok = true;
  std::string detail;
  for (Rat v : {Rat(10), Rat(1, 2), Rat(7, 3)}) {
    auto t0 = std::chrono::steady_clock::now();
    OutlineReport rep = replay_outline(v);
    double sec = seconds_since(t0);
    bool this_ok = rep.ok && rep.base_prices == PriceVector({v, v}) &&
                   rep.converted_prices == PriceVector({v, v}) && sec < 1.0;
    if (!this_ok) {
      ok = false;
      detail = "v = " + to_frac(v) + " failed";
      for (const std::string& line : rep.log) detail += "; " + line;
    }
  }
  report(1, "outline reproduction", ok, detail);
}

void criterion2_positive_prices() {
  bool ok = true;
  std::string detail;
  auto markets = sample_markets(510000, 200);
  for (std::size_t i = 0; i < markets.size() && ok; ++i) {
    EquilibriumResult eq = min_walrasian_prices(markets[i]);
    if (eq.mode != SolveMode::Exact) {
      ok = false;
      detail = "instance " + std::to_string(i) + " fell back to epsilon mode";
      break;
    }
    for (ObjectId a = 1; a <= markets[i].object_count(); ++a)
      if (!(eq.prices.at(a) > 0)) {
        ok = false;
        detail = "instance " + std::to_string(i) + " has a nonpositive price";
      }
  }
  report(2, "minimum prices strictly positive on 200 markets", ok, detail);
}

void criterion3_certification() {
  bool ok = true;
  std::string detail;
  auto markets = sample_markets(520000, 50);
  SolveOptions eps;
  eps.mode = SolveMode::Epsilon;
  for (std::size_t i = 0; i < markets.size() && ok; ++i) {
    const Market& market = markets[i];
    EquilibriumResult eq = min_walrasian_prices(market);
    if (!certify_equilibrium(market, eq.prices).ok) {
      ok = false;
      detail = "exact certificate failed on instance " + std::to_string(i);
      break;
    }
    // Epsilon mode certifies within the stated slack.
    EquilibriumResult approx = min_walrasian_prices(market, eps);
    if (!certify_equilibrium(market, approx.prices, eps.epsilon).ok) {
      ok = false;
      detail = "epsilon certificate failed on instance " + std::to_string(i);
      break;
    }
    // Any +-1 perturbation of any coordinate must fail (floored at zero).
    for (ObjectId a = 1; a <= market.object_count() && ok; ++a) {
      for (int sign : {+1, -1}) {
        PriceVector q = eq.prices;
        Rat moved = q.at(a) + sign;
        q.set(a, moved < 0 ? Rat(0) : moved);
        if (q == eq.prices) continue;
        if (certify_equilibrium(market, q).ok) {
          ok = false;
          detail = "perturbed prices certified on instance " + std::to_string(i);
        }
      }
    }
  }
  report(3, "certificates pass at p_min and fail at perturbations", ok, detail);
}

void criterion4_grid_oracle() {
  bool ok = true;
  std::string detail;
  // 20 integer-valued instances with a unit grid.
  for (int i = 0; i < 20 && ok; ++i) {
    std::uint64_t seed = 530000 + static_cast<std::uint64_t>(i);
    int n = 3 + i % 3;
    int m = 2 + i % 2;
    Market market = generate_market(seed, n, m, Family::Quasilinear);
    EquilibriumResult eq = min_walrasian_prices(market);
    PriceVector grid = grid_oracle_min_prices(market, 1, valuation_ceiling(market));
    if (!(grid == eq.prices)) {
      ok = false;
      detail = "integer instance " + std::to_string(i) + " mismatch";
    }
  }
  // 10 half-integer instances, grid refined to the value denominator.
  for (int i = 0; i < 10 && ok; ++i) {
    std::uint64_t seed = 540000 + static_cast<std::uint64_t>(i);
    GenOptions options;
    options.denominator = 2;
    Market market = generate_market(seed, 3 + i % 2, 2, Family::Quasilinear, options);
    EquilibriumResult eq = min_walrasian_prices(market);
    Rat step(1, 2);
    PriceVector grid = grid_oracle_min_prices(market, step, valuation_ceiling(market));
    for (ObjectId a = 1; a <= 2; ++a) {
      Rat diff = grid.at(a) - eq.prices.at(a);
      if (diff < 0) diff = -diff;
      if (diff > step) {
        ok = false;
        detail = "half-integer instance " + std::to_string(i) + " off by more than the step";
      }
    }
  }
  report(4, "grid oracle minimality on 30 instances", ok, detail);
}

Theorem1Summary& theorem1() {
  static Theorem1Summary summary = run_theorem1(20240001, 100);
  return summary;
}

void criterion5_necessity() {
  const Theorem1Summary& summary = theorem1();
  std::string detail;
  for (const Theorem1Row& row : summary.rows)
    if (!row.as_expected)
      detail += row.mechanism + " (designated " + std::to_string(row.designated_failures) +
                ", other " + std::to_string(row.other_failures) + ") ";
  report(5, "necessity grid over the 100-scenario batch", summary.ok, detail);
}

void criterion6_pareto() {
  bool ok = true;
  std::string detail;
  Mechanism mwep = make_mwep();
  Mechanism no_sale = make_no_sale();
  for (const Scenario& s : theorem1_batch(20240001, 100)) {
    if (!check_pareto_efficient(mwep, s.market).holds) {
      ok = false;
      detail = "mwep outcome not efficient at seed " + std::to_string(s.seed);
      break;
    }
    if (check_pareto_efficient(no_sale, s.market).holds) {
      ok = false;
      detail = "no_sale outcome efficient at seed " + std::to_string(s.seed);
      break;
    }
  }
  report(6, "efficiency of mwep and inefficiency of no_sale on the batch", ok, detail);
}

void criterion7_vcg() {
  bool ok = true;
  std::string detail;
  Mechanism vcg = make_vcg_quasilinear();
  Mechanism mwep = make_mwep();
  for (int i = 0; i < 50 && ok; ++i) {
    std::uint64_t seed = 550000 + static_cast<std::uint64_t>(i);
    int n = 3 + i % 3;          // up to 5 agents
    int m = 2 + i % std::min(2, n - 2 + 1);  // up to 3 objects
    if (m >= n) m = n - 1;
    Market market = generate_market(seed, n, m, Family::Quasilinear);
    MechanismOutcome a = vcg.run(market);
    MechanismOutcome b = mwep.run(market);
    for (int k = 0; k < n; ++k)
      if (a.bundles[static_cast<std::size_t>(k)].transfer !=
          b.bundles[static_cast<std::size_t>(k)].transfer) {
        ok = false;
        detail = "transfer mismatch at seed " + std::to_string(seed) + " agent " +
                 std::to_string(k);
      }
  }
  report(7, "vcg transfers equal mwep transfers on 50 quasilinear markets", ok, detail);
}

void criterion8_revenue() {
  bool ok = true;
  std::string detail;
  Mechanism mwep = make_mwep();
  Mechanism max_wep = make_max_wep();
  Mechanism subsidized = make_mwep_with_subsidy(1);
  for (const Scenario& s : theorem1_batch(20240001, 100)) {
    Rat rev_min = mwep.run(s.market).revenue();
    Rat rev_max = max_wep.run(s.market).revenue();
    Rat rev_sub = subsidized.run(s.market).revenue();
    if (!(rev_max >= rev_min && rev_min >= 0)) {
      ok = false;
      detail = "ordering violated at seed " + std::to_string(s.seed);
      break;
    }
    if (rev_min - rev_sub != Rat(s.market.agent_count())) {
      ok = false;
      detail = "subsidy gap is not n at seed " + std::to_string(s.seed);
      break;
    }
  }
  report(8, "revenue ordering across the batch", ok, detail);
}

void criterion9_prooflab() {
  bool ok = true;
  std::string detail;
  Mechanism mwep = make_mwep();
  for (int i = 0; i < 30 && ok; ++i) {
    std::uint64_t seed = 560000 + static_cast<std::uint64_t>(i);
    int n = 3 + i % 4;
    int m = 2 + i % std::min(3, n - 2 > 0 ? n - 2 : 1);
    if (m >= n) m = n - 1;
    Market market = generate_market(seed, n, m, static_cast<Family>(i % 3));
    Rat ceiling = valuation_ceiling(market);

    // Chains from a mid-range seed bundle on object 1.
    Rat mid = market.pref(0).from_null(1, 0) / 2;
    Bundle seed_bundle{1, mid};
    auto chains = enumerate_chains(market, seed_bundle);
    for (const IndifferenceChain& c : chains) {
      if (!chain_is_valid(market, seed_bundle, c)) {
        ok = false;
        detail = "chain failed re-verification at seed " + std::to_string(seed);
        break;
      }
      Rat d = chain_transfer_limit(market, seed_bundle, c);
      if (!(d > seed_bundle.transfer)) {
        ok = false;
        detail = "transfer limit not above the seed at seed " + std::to_string(seed);
        break;
      }
      IndifferenceChain past = c;
      past.bundles[0] = {1, d + 1};
      for (std::size_t j = 0; j + 1 < past.agents.size(); ++j)
        past.bundles[j + 1] = {past.objects[j + 1],
                               market.pref(past.agents[j])
                                   .valuation(past.objects[j + 1], past.bundles[j])};
      if (chain_is_valid(market, {1, d + 1}, past)) {
        ok = false;
        detail = "chain still valid past its limit at seed " + std::to_string(seed);
        break;
      }
    }
    if (!ok) break;
    if (seed_transfer_limit(market, seed_bundle, ceiling) > ceiling) {
      ok = false;
      detail = "seed transfer limit above the ceiling at seed " + std::to_string(seed);
      break;
    }

    // Null-holders pay zero; favoring replacements keep bundles.
    MechanismOutcome out = mwep.run(market);
    for (int k = 0; k < n && ok; ++k) {
      const Bundle& b = out.bundles[static_cast<std::size_t>(k)];
      if (b.object == kNullObject) {
        if (b.transfer != 0) {
          ok = false;
          detail = "null-holder pays nonzero at seed " + std::to_string(seed);
        }
        continue;
      }
      Preference fav = make_favoring(m, b.object, b.transfer);
      MechanismOutcome swapped = mwep.run(market.with_preference(k, fav));
      if (!(swapped.bundles[static_cast<std::size_t>(k)] == b)) {
        ok = false;
        detail = "favoring replacement moved a bundle at seed " + std::to_string(seed);
      }
    }
  }
  report(9, "prooflab invariants across 30 seeds", ok, detail);
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion1_outline();
  criterion2_positive_prices();
  criterion3_certification();
  criterion4_grid_oracle();
  criterion5_necessity();
  criterion6_pareto();
  criterion7_vcg();
  criterion8_revenue();
  criterion9_prooflab();
  std::cout << "total: " << (9 - failures) << "/9 in " << seconds_since(t0) << " s\n";
  return failures;
}
