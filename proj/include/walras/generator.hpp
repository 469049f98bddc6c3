#pragma once

#include <cstdint>

#include "walras/axioms.hpp"

namespace walras {

enum class Family { Quasilinear, Piecewise, Mixed };

Family family_from_string(const std::string& s);
std::string to_string(Family f);

struct GenOptions {
  long max_value = 12;     // object values drawn from [1, max_value]
  long denominator = 1;    // value grid 1/denominator
  bool clone_pair = false; // copy agent 0's (quasilinear) preference to agent 1
};

// Deterministic pseudo-random market; same (seed, n, m, family, options)
// always yields the same profile. Requires n > m >= 2.
Market generate_market(std::uint64_t seed, int n, int m, Family family,
                       const GenOptions& options = {});

// Deterministic deviation pool: quasilinear_count value-based misreports
// (scaled, reversed, tiny, large, random) plus piecewise_count favoring and
// kinked misreports per agent.
DeviationPool generate_pool(const Market& market, std::uint64_t seed,
                            int quasilinear_count = 12, int piecewise_count = 8);

}  // namespace walras
