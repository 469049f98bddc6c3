#pragma once

#include <optional>
#include <vector>

namespace walras {

// Left-to-right adjacency of a bipartite graph.
struct Bipartite {
  int left = 0;
  int right = 0;
  std::vector<std::vector<int>> adj;  // adj[l] = sorted right neighbours
};

// Kuhn's augmenting-path matching. Returns match_of_left (right index or
// -1); deterministic given the adjacency order.
std::vector<int> max_matching(const Bipartite& g);

// If no matching saturates the left side, the set of left vertices
// reachable from an unsaturated vertex by alternating paths; its
// neighbourhood is then smaller than the set itself.
std::optional<std::vector<int>> hall_violator(const Bipartite& g);

}  // namespace walras
