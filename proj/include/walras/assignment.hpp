#pragma once

#include <vector>

#include "walras/rational.hpp"

namespace walras {

struct AssignmentResult {
  std::vector<int> column_of_row;  // one column per row, columns distinct
  Rat total = 0;
};

// Maximum-weight assignment of every row to a distinct column (requires
// cols >= rows). Exact rational potentials, O(rows^2 * cols).
AssignmentResult max_weight_assignment(const std::vector<std::vector<Rat>>& weights);

// Unit-demand welfare problem: weights[i][a] for real objects a = 1..m at
// column a-1, plus an agent-specific outside value. Internally pads one
// outside column per agent. Returns the chosen object per agent (0 =
// outside) and the maximum total.
struct UnitDemandAssignment {
  std::vector<int> object_of_agent;  // 0 = outside option
  Rat total = 0;
};
UnitDemandAssignment max_weight_unit_demand(const std::vector<std::vector<Rat>>& object_weights,
                                            const std::vector<Rat>& outside_weights);

}  // namespace walras
