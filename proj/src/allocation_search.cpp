#include "walras/allocation_search.hpp"

#include <stdexcept>

namespace walras {

namespace {

struct SearchContext {
  int n = 0;
  int m = 0;
  unsigned positive_mask = 0;                 // bit a-1 per positively-priced object
  std::vector<std::vector<ObjectId>> demands;  // sorted, may include 0
  // memo[agent * 2^m + used_mask]: 0 unknown, 1 feasible, 2 infeasible
  std::vector<char> memo;

  bool feasible_from(int agent, unsigned used) {
    if (agent == n) return (used & positive_mask) == positive_mask;
    char& slot = memo[static_cast<std::size_t>(agent) * (1u << m) + used];
    if (slot) return slot == 1;
    bool ok = false;
    for (ObjectId a : demands[static_cast<std::size_t>(agent)]) {
      if (a == kNullObject) {
        if (feasible_from(agent + 1, used)) {
          ok = true;
          break;
        }
      } else {
        unsigned bit = 1u << (a - 1);
        if (!(used & bit) && feasible_from(agent + 1, used | bit)) {
          ok = true;
          break;
        }
      }
    }
    slot = ok ? 1 : 2;
    return ok;
  }
};

SearchContext make_context(const Market& market, const PriceVector& p, const Rat& tol) {
  if (market.object_count() > 20)
    throw std::invalid_argument("allocation search limited to 20 objects");
  SearchContext ctx;
  ctx.n = market.agent_count();
  ctx.m = market.object_count();
  for (ObjectId a = 1; a <= ctx.m; ++a)
    if (p.at(a) > 0) ctx.positive_mask |= 1u << (a - 1);
  ctx.demands = demand_profile(market, p, tol);
  // Selection order: real objects ascending, null last.
  for (auto& d : ctx.demands)
    if (!d.empty() && d.front() == kNullObject) {
      d.erase(d.begin());
      d.push_back(kNullObject);
    }
  ctx.memo.assign(static_cast<std::size_t>(ctx.n + 1) * (1u << ctx.m), 0);
  return ctx;
}

}  // namespace

bool has_supporting_allocation(const Market& market, const PriceVector& p, const Rat& tol) {
  SearchContext ctx = make_context(market, p, tol);
  return ctx.feasible_from(0, 0);
}

ObjectAllocation lex_min_supporting_allocation(const Market& market, const PriceVector& p,
                                               const Rat& tol) {
  SearchContext ctx = make_context(market, p, tol);
  if (!ctx.feasible_from(0, 0))
    throw std::runtime_error("no supporting allocation at the given prices");
  ObjectAllocation out;
  unsigned used = 0;
  for (int i = 0; i < ctx.n; ++i) {
    bool placed = false;
    for (ObjectId a : ctx.demands[static_cast<std::size_t>(i)]) {  // sorted: 0 first
      unsigned bit = (a == kNullObject) ? 0u : 1u << (a - 1);
      if (bit && (used & bit)) continue;
      if (ctx.feasible_from(i + 1, used | bit)) {
        out.assignment.push_back(a);
        used |= bit;
        placed = true;
        break;
      }
    }
    if (!placed) throw std::logic_error("feasibility memo inconsistent");
  }
  return out;
}

std::vector<ObjectAllocation> enumerate_supporting_allocations(const Market& market,
                                                               const PriceVector& p,
                                                               const Rat& tol, std::size_t cap) {
  SearchContext ctx = make_context(market, p, tol);
  std::vector<ObjectAllocation> out;
  std::vector<ObjectId> cur;
  auto rec = [&](auto&& self, int agent, unsigned used) -> void {
    if (out.size() >= cap) return;
    if (agent == ctx.n) {
      if ((used & ctx.positive_mask) == ctx.positive_mask) out.push_back({cur});
      return;
    }
    if (!ctx.feasible_from(agent, used)) return;
    for (ObjectId a : ctx.demands[static_cast<std::size_t>(agent)]) {
      unsigned bit = (a == kNullObject) ? 0u : 1u << (a - 1);
      if (bit && (used & bit)) continue;
      cur.push_back(a);
      self(self, agent + 1, used | bit);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace walras
