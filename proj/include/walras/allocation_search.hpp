#pragma once

#include <vector>

#include "walras/market.hpp"

namespace walras {

// Searches over object allocations constrained by demand sets at p: every
// agent must hold a demanded object (null included only when demanded) and
// every positively-priced object must be assigned.

bool has_supporting_allocation(const Market& market, const PriceVector& p, const Rat& tol = 0);

// Lexicographically smallest supporting assignment vector: agents in index
// order each take the smallest-indexed demanded real object that still
// admits a completion, with the null object ordered last. Throws if none
// exists.
ObjectAllocation lex_min_supporting_allocation(const Market& market, const PriceVector& p,
                                               const Rat& tol = 0);

// All supporting allocations in lexicographic order, up to `cap`.
std::vector<ObjectAllocation> enumerate_supporting_allocations(const Market& market,
                                                               const PriceVector& p,
                                                               const Rat& tol = 0,
                                                               std::size_t cap = 10000);

}  // namespace walras
