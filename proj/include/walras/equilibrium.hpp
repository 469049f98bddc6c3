#pragma once

#include <stdexcept>

#include "walras/market.hpp"

namespace walras {

enum class SolveMode { Exact, Epsilon };

struct SolveOptions {
  SolveMode mode = SolveMode::Exact;
  Rat epsilon = Rat(1, 1000000);
  int iteration_cap = 100000;
};

struct EquilibriumResult {
  PriceVector prices;
  ObjectAllocation allocation;
  Certificate certificate;
  SolveMode mode = SolveMode::Exact;
  Rat tolerance = 0;
  int iterations = 0;
};

struct ComputationLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverFailureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleFailureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ascending auction from p = 0: while an inclusion-minimal overdemanded set
// exists, raise its prices by the exact common amount at which some
// confined agent first becomes indifferent to an option outside the set.
// Certified by certify_equilibrium on termination; falls back to the
// epsilon auction if the exact path fails to certify.
EquilibriumResult min_walrasian_prices(const Market& market, const SolveOptions& opt = {});

// Descending auction from a price vector strictly above every agent's
// willingness; lowers maximum-cardinality strictly underdemanded sets.
// Certified by certify_maximum on termination.
EquilibriumResult max_walrasian_prices(const Market& market, const SolveOptions& opt = {});

// Exhaustive scan of {0, step, ..., <= bound}^m collecting price vectors
// that support a Walrasian equilibrium by the definitional check. Returns
// the componentwise minimum of the certified set. Independent of the
// auction and of the overdemand/underdemand detectors.
PriceVector grid_oracle_min_prices(const Market& market, const Rat& step, const Rat& bound);
PriceVector grid_oracle_max_prices(const Market& market, const Rat& step, const Rat& bound);

// Deterministic supporting-allocation choice at certified minimum prices:
// lexicographically smallest by agent index then object index, covering
// every positively-priced object.
ObjectAllocation select_zmin_allocation(const Market& market, const PriceVector& p_min,
                                        const Rat& tol = 0);

}  // namespace walras
