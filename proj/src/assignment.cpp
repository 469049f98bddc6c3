#include "walras/assignment.hpp"

#include <optional>
#include <stdexcept>

namespace walras {

// Potential-based shortest augmenting paths (Kuhn-Munkres in the compact
// formulation), minimizing negated weights. Rows and columns are 1-based
// internally with index 0 as the sentinel slot.
AssignmentResult max_weight_assignment(const std::vector<std::vector<Rat>>& weights) {
  const int rows = static_cast<int>(weights.size());
  if (rows == 0) return {};
  const int cols = static_cast<int>(weights[0].size());
  if (cols < rows) throw std::invalid_argument("assignment needs cols >= rows");
  for (const auto& row : weights)
    if (static_cast<int>(row.size()) != cols)
      throw std::invalid_argument("ragged weight matrix");

  auto cost = [&](int r, int c) { return -weights[static_cast<std::size_t>(r - 1)]
                                              [static_cast<std::size_t>(c - 1)]; };

  std::vector<Rat> row_pot(static_cast<std::size_t>(rows) + 1, Rat(0));
  std::vector<Rat> col_pot(static_cast<std::size_t>(cols) + 1, Rat(0));
  std::vector<int> row_of_col(static_cast<std::size_t>(cols) + 1, 0);
  std::vector<int> prev_col(static_cast<std::size_t>(cols) + 1, 0);

  for (int r = 1; r <= rows; ++r) {
    row_of_col[0] = r;
    int c0 = 0;
    std::vector<std::optional<Rat>> min_cost(static_cast<std::size_t>(cols) + 1);
    std::vector<char> used(static_cast<std::size_t>(cols) + 1, 0);
    do {
      used[static_cast<std::size_t>(c0)] = 1;
      int r0 = row_of_col[static_cast<std::size_t>(c0)];
      std::optional<Rat> delta;
      int c1 = 0;
      for (int c = 1; c <= cols; ++c) {
        if (used[static_cast<std::size_t>(c)]) continue;
        Rat cur = cost(r0, c) - row_pot[static_cast<std::size_t>(r0)] -
                  col_pot[static_cast<std::size_t>(c)];
        if (!min_cost[static_cast<std::size_t>(c)] || cur < *min_cost[static_cast<std::size_t>(c)]) {
          min_cost[static_cast<std::size_t>(c)] = cur;
          prev_col[static_cast<std::size_t>(c)] = c0;
        }
        if (!delta || *min_cost[static_cast<std::size_t>(c)] < *delta) {
          delta = *min_cost[static_cast<std::size_t>(c)];
          c1 = c;
        }
      }
      for (int c = 0; c <= cols; ++c) {
        if (used[static_cast<std::size_t>(c)]) {
          row_pot[static_cast<std::size_t>(row_of_col[static_cast<std::size_t>(c)])] += *delta;
          col_pot[static_cast<std::size_t>(c)] -= *delta;
        } else if (min_cost[static_cast<std::size_t>(c)]) {
          *min_cost[static_cast<std::size_t>(c)] -= *delta;
        }
      }
      c0 = c1;
    } while (row_of_col[static_cast<std::size_t>(c0)] != 0);
    while (c0 != 0) {
      int c1 = prev_col[static_cast<std::size_t>(c0)];
      row_of_col[static_cast<std::size_t>(c0)] = row_of_col[static_cast<std::size_t>(c1)];
      c0 = c1;
    }
  }

  AssignmentResult out;
  out.column_of_row.assign(static_cast<std::size_t>(rows), -1);
  for (int c = 1; c <= cols; ++c) {
    int r = row_of_col[static_cast<std::size_t>(c)];
    if (r > 0) out.column_of_row[static_cast<std::size_t>(r - 1)] = c - 1;
  }
  for (int r = 0; r < rows; ++r)
    out.total += weights[static_cast<std::size_t>(r)]
                        [static_cast<std::size_t>(out.column_of_row[static_cast<std::size_t>(r)])];
  return out;
}

UnitDemandAssignment max_weight_unit_demand(const std::vector<std::vector<Rat>>& object_weights,
                                            const std::vector<Rat>& outside_weights) {
  const int n = static_cast<int>(object_weights.size());
  if (static_cast<int>(outside_weights.size()) != n)
    throw std::invalid_argument("one outside weight per agent required");
  if (n == 0) return {};
  const int m = static_cast<int>(object_weights[0].size());
  std::vector<std::vector<Rat>> padded(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    padded[static_cast<std::size_t>(i)] = object_weights[static_cast<std::size_t>(i)];
    for (int k = 0; k < n; ++k)
      padded[static_cast<std::size_t>(i)].push_back(outside_weights[static_cast<std::size_t>(i)]);
  }
  AssignmentResult res = max_weight_assignment(padded);
  UnitDemandAssignment out;
  out.total = res.total;
  out.object_of_agent.assign(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    int c = res.column_of_row[static_cast<std::size_t>(i)];
    out.object_of_agent[static_cast<std::size_t>(i)] = (c < m) ? c + 1 : 0;
  }
  return out;
}

}  // namespace walras
