#include "walras/matching.hpp"

#include <algorithm>

namespace walras {

namespace {

bool augment(const Bipartite& g, int l, std::vector<char>& seen, std::vector<int>& match_l,
             std::vector<int>& match_r) {
  for (int r : g.adj[static_cast<std::size_t>(l)]) {
    if (seen[static_cast<std::size_t>(r)]) continue;
    seen[static_cast<std::size_t>(r)] = 1;
    if (match_r[static_cast<std::size_t>(r)] < 0 ||
        augment(g, match_r[static_cast<std::size_t>(r)], seen, match_l, match_r)) {
      match_l[static_cast<std::size_t>(l)] = r;
      match_r[static_cast<std::size_t>(r)] = l;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<int> max_matching(const Bipartite& g) {
  std::vector<int> match_l(static_cast<std::size_t>(g.left), -1);
  std::vector<int> match_r(static_cast<std::size_t>(g.right), -1);
  for (int l = 0; l < g.left; ++l) {
    std::vector<char> seen(static_cast<std::size_t>(g.right), 0);
    augment(g, l, seen, match_l, match_r);
  }
  return match_l;
}

std::optional<std::vector<int>> hall_violator(const Bipartite& g) {
  std::vector<int> match_l = max_matching(g);
  std::vector<int> match_r(static_cast<std::size_t>(g.right), -1);
  for (int l = 0; l < g.left; ++l)
    if (match_l[static_cast<std::size_t>(l)] >= 0)
      match_r[static_cast<std::size_t>(match_l[static_cast<std::size_t>(l)])] = l;

  int unsat = -1;
  for (int l = 0; l < g.left; ++l)
    if (match_l[static_cast<std::size_t>(l)] < 0) {
      unsat = l;
      break;
    }
  if (unsat < 0) return std::nullopt;

  // Alternating BFS from the unsaturated vertex: left->right along any
  // edge, right->left along matched edges.
  std::vector<char> left_seen(static_cast<std::size_t>(g.left), 0);
  std::vector<char> right_seen(static_cast<std::size_t>(g.right), 0);
  std::vector<int> queue{unsat};
  left_seen[static_cast<std::size_t>(unsat)] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int l = queue[qi];
    for (int r : g.adj[static_cast<std::size_t>(l)]) {
      if (right_seen[static_cast<std::size_t>(r)]) continue;
      right_seen[static_cast<std::size_t>(r)] = 1;
      int l2 = match_r[static_cast<std::size_t>(r)];
      if (l2 >= 0 && !left_seen[static_cast<std::size_t>(l2)]) {
        left_seen[static_cast<std::size_t>(l2)] = 1;
        queue.push_back(l2);
      }
    }
  }
  std::vector<int> out;
  for (int l = 0; l < g.left; ++l)
    if (left_seen[static_cast<std::size_t>(l)]) out.push_back(l);
  return out;
}

}  // namespace walras
