#include "walras/equilibrium.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "walras/allocation_search.hpp"

namespace walras {

namespace {

// Internal signal: the exact auction ran out of branches or budget; the
// caller falls back to the epsilon auction.
struct ExactPathExhausted {};

bool in_set(const std::vector<ObjectId>& sorted_set, ObjectId a) {
  return std::binary_search(sorted_set.begin(), sorted_set.end(), a);
}

bool subset_of(const std::vector<ObjectId>& d, const std::vector<ObjectId>& sorted_set) {
  for (ObjectId a : d)
    if (!in_set(sorted_set, a)) return false;
  return true;
}

bool intersects(const std::vector<ObjectId>& d, const std::vector<ObjectId>& sorted_set) {
  for (ObjectId a : d)
    if (in_set(sorted_set, a)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Exact auctions.
//
// Prices move along slope-proportional directions so that chosen agent
// indifferences are preserved exactly, stepping from one structural event
// to the next (an agent reaching an outside option, a tie forming, a
// breakpoint passing). When several agents are tied with incompatible
// slope ratios no direction preserves every tie; each maximal consistent
// choice of ties to enforce is a branch, and the solver searches branches
// depth-first until the terminal certificate accepts.
// ---------------------------------------------------------------------------

struct Branch {
  std::map<ObjectId, Rat> direction;
  int dirty = 0;       // structural-damage score used for ordering
  int enforced = 0;    // number of ties kept
  unsigned mask = 0;   // enforcement pattern, for determinism
};

// Price direction from enforced tie constraints: every enforced agent's
// tied objects move at equal utility rates (d_b / s_b equal); objects
// without constraints move at rate 1. Returns nullopt when a co-demand
// cycle has mismatched slope products.
std::optional<std::map<ObjectId, Rat>> solve_direction(
    const std::vector<ObjectId>& set, const std::vector<std::vector<ObjectId>>& ties,
    const std::vector<std::vector<Rat>>& tie_slopes) {
  std::map<ObjectId, Rat> d;
  for (ObjectId root : set) {
    if (d.count(root)) continue;
    d[root] = 1;
    std::vector<ObjectId> queue{root};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      ObjectId a = queue[qi];
      for (std::size_t t = 0; t < ties.size(); ++t) {
        const auto& tied = ties[t];
        if (std::find(tied.begin(), tied.end(), a) == tied.end()) continue;
        for (ObjectId b : tied) {
          if (b == a) continue;
          Rat required = d[a] * tie_slopes[t][static_cast<std::size_t>(b - 1)] /
                         tie_slopes[t][static_cast<std::size_t>(a - 1)];
          auto it = d.find(b);
          if (it == d.end()) {
            d[b] = required;
            queue.push_back(b);
          } else if (it->second != required) {
            return std::nullopt;
          }
        }
      }
    }
  }
  return d;
}

struct AscendingContext {
  const Market& market;
  const PriceVector& p;
  const std::vector<std::vector<ObjectId>>& demands;
  const std::vector<ObjectId>& s;

  std::vector<int> confined;              // agents with demand inside s
  std::vector<int> tied;                  // confined agents with >= 2 demanded
  std::vector<std::vector<Rat>> slopes;   // per agent (full), 1 outside use
};

AscendingContext make_ascending_context(const Market& market, const PriceVector& p,
                                        const std::vector<std::vector<ObjectId>>& demands,
                                        const std::vector<ObjectId>& s) {
  AscendingContext ctx{market, p, demands, s, {}, {}, {}};
  const int n = market.agent_count();
  const int m = market.object_count();
  ctx.slopes.assign(static_cast<std::size_t>(n),
                    std::vector<Rat>(static_cast<std::size_t>(m), Rat(1)));
  for (int i = 0; i < n; ++i) {
    if (!subset_of(demands[static_cast<std::size_t>(i)], s)) continue;
    ctx.confined.push_back(i);
    for (ObjectId a : s)
      ctx.slopes[static_cast<std::size_t>(i)][static_cast<std::size_t>(a - 1)] =
          market.pref(i).map(a).slope_above(market.pref(i).to_null(a, p.at(a)));
    if (demands[static_cast<std::size_t>(i)].size() >= 2) ctx.tied.push_back(i);
  }
  return ctx;
}

// Refined demand sets an instant into a raise along `d`: confined agents
// with enforced ties keep them, others keep only their slowest-rising
// objects; agents anchored outside drop the raised members.
std::vector<std::vector<ObjectId>> refine_ascending(const AscendingContext& ctx,
                                                    const std::map<ObjectId, Rat>& d,
                                                    const std::vector<int>& enforced) {
  std::vector<std::vector<ObjectId>> refined = ctx.demands;
  for (std::size_t i = 0; i < refined.size(); ++i) {
    int agent = static_cast<int>(i);
    bool is_confined =
        std::find(ctx.confined.begin(), ctx.confined.end(), agent) != ctx.confined.end();
    if (!is_confined) {
      std::vector<ObjectId> kept;
      for (ObjectId a : refined[i])
        if (!in_set(ctx.s, a)) kept.push_back(a);
      refined[i] = std::move(kept);
      continue;
    }
    if (std::find(enforced.begin(), enforced.end(), agent) != enforced.end()) continue;
    if (refined[i].size() < 2) continue;
    std::optional<Rat> best;
    for (ObjectId a : refined[i]) {
      Rat rate = d.at(a) / ctx.slopes[i][static_cast<std::size_t>(a - 1)];
      if (!best || rate < *best) best = rate;
    }
    std::vector<ObjectId> kept;
    for (ObjectId a : refined[i]) {
      Rat rate = d.at(a) / ctx.slopes[i][static_cast<std::size_t>(a - 1)];
      if (rate == *best) kept.push_back(a);
    }
    refined[i] = std::move(kept);
  }
  return refined;
}

// Number of weakly underdemanded sets in a refined profile, counting every
// raised object as positively priced.
int count_weak_underdemand(const Market& market, const PriceVector& p,
                           const std::vector<std::vector<ObjectId>>& refined,
                           const std::vector<ObjectId>& raised) {
  const int m = market.object_count();
  std::vector<ObjectId> positive;
  for (ObjectId a = 1; a <= m; ++a)
    if (p.at(a) > 0 || in_set(raised, a)) positive.push_back(a);
  const int k = static_cast<int>(positive.size());
  int count = 0;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<ObjectId> subset;
    for (int j = 0; j < k; ++j)
      if (mask & (1u << j)) subset.push_back(positive[static_cast<std::size_t>(j)]);
    int demanders = 0;
    for (const auto& di : refined)
      if (intersects(di, subset)) ++demanders;
    if (demanders <= static_cast<int>(subset.size())) ++count;
  }
  return count;
}

std::vector<Branch> ascending_branches(const AscendingContext& ctx) {
  std::vector<Branch> out;
  const std::size_t t = ctx.tied.size();
  if (t > 8) throw SolverFailureError("too many simultaneous ties");
  std::vector<std::string> seen;
  for (unsigned keep = (1u << t); keep-- > 0;) {
    std::vector<std::vector<ObjectId>> ties;
    std::vector<std::vector<Rat>> tie_slopes;
    std::vector<int> enforced;
    for (std::size_t j = 0; j < t; ++j) {
      if (!(keep & (1u << j))) continue;
      int agent = ctx.tied[j];
      enforced.push_back(agent);
      ties.push_back(ctx.demands[static_cast<std::size_t>(agent)]);
      tie_slopes.push_back(ctx.slopes[static_cast<std::size_t>(agent)]);
    }
    auto d = solve_direction(ctx.s, ties, tie_slopes);
    if (!d) continue;
    std::string key;
    for (const auto& [a, v] : *d) key += std::to_string(a) + ":" + to_frac(v) + ";";
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    auto refined = refine_ascending(ctx, *d, enforced);
    Branch b;
    b.direction = std::move(*d);
    b.dirty = count_weak_underdemand(ctx.market, ctx.p, refined, ctx.s);
    b.enforced = static_cast<int>(enforced.size());
    b.mask = keep;
    out.push_back(std::move(b));
  }
  std::stable_sort(out.begin(), out.end(), [](const Branch& x, const Branch& y) {
    if (x.dirty != y.dirty) return x.dirty < y.dirty;
    if (x.enforced != y.enforced) return x.enforced > y.enforced;
    return x.mask > y.mask;
  });
  return out;
}

// First structural event along the direction: for every confined agent,
// reaching an outside option (E1) or catching a slower-rising raised
// object (E2), and any of its raised maps passing a breakpoint (E3).
Rat ascending_lambda(const AscendingContext& ctx, const std::map<ObjectId, Rat>& d) {
  const int m = ctx.market.object_count();
  std::optional<Rat> lambda;
  auto consider = [&](const Rat& candidate) {
    if (candidate > 0 && (!lambda || candidate < *lambda)) lambda = candidate;
  };
  for (int i : ctx.confined) {
    const Preference& r = ctx.market.pref(i);
    const auto& di = ctx.demands[static_cast<std::size_t>(i)];
    std::vector<Rat> u(static_cast<std::size_t>(m) + 1, Rat(0));
    for (ObjectId a = 1; a <= m; ++a) u[static_cast<std::size_t>(a)] = r.to_null(a, ctx.p.at(a));
    Rat level = u[static_cast<std::size_t>(di.front())];

    std::optional<Rat> c;
    for (ObjectId a : di) {
      Rat rate = d.at(a) / ctx.slopes[static_cast<std::size_t>(i)][static_cast<std::size_t>(a - 1)];
      if (!c || rate < *c) c = rate;
    }

    Rat out = 0;
    for (ObjectId b = 1; b <= m; ++b)
      if (!in_set(ctx.s, b)) out = std::min(out, u[static_cast<std::size_t>(b)]);
    if (*c > 0) consider((out - level) / *c);

    for (ObjectId b : ctx.s) {
      Rat rate_b =
          d.at(b) / ctx.slopes[static_cast<std::size_t>(i)][static_cast<std::size_t>(b - 1)];
      if (*c > rate_b) consider((u[static_cast<std::size_t>(b)] - level) / (*c - rate_b));
      if (auto bp = r.map(b).next_value_above(ctx.p.at(b)))
        consider((*bp - ctx.p.at(b)) / d.at(b));
    }
  }
  if (!lambda) throw SolverFailureError("ascending auction found no event");
  return *lambda;
}

// --------------------------- descending side -------------------------------

struct DescendingContext {
  const Market& market;
  const PriceVector& p;
  const std::vector<std::vector<ObjectId>>& demands;
  const std::vector<ObjectId>& u;  // underdemanded set being lowered

  std::vector<int> tied;  // agents with >= 2 demanded objects inside u
  std::vector<std::vector<Rat>> slopes;
};

DescendingContext make_descending_context(const Market& market, const PriceVector& p,
                                          const std::vector<std::vector<ObjectId>>& demands,
                                          const std::vector<ObjectId>& uset) {
  DescendingContext ctx{market, p, demands, uset, {}, {}};
  const int n = market.agent_count();
  const int m = market.object_count();
  ctx.slopes.assign(static_cast<std::size_t>(n),
                    std::vector<Rat>(static_cast<std::size_t>(m), Rat(1)));
  for (int i = 0; i < n; ++i) {
    int inside = 0;
    for (ObjectId a : uset) {
      ctx.slopes[static_cast<std::size_t>(i)][static_cast<std::size_t>(a - 1)] =
          market.pref(i).map(a).slope_below(market.pref(i).to_null(a, p.at(a)));
      if (in_set(demands[static_cast<std::size_t>(i)], a)) ++inside;
    }
    if (inside >= 2) ctx.tied.push_back(i);
  }
  return ctx;
}

std::vector<std::vector<ObjectId>> refine_descending(const DescendingContext& ctx,
                                                     const std::map<ObjectId, Rat>& d,
                                                     const std::vector<int>& enforced) {
  std::vector<std::vector<ObjectId>> refined = ctx.demands;
  for (std::size_t i = 0; i < refined.size(); ++i) {
    int agent = static_cast<int>(i);
    std::vector<ObjectId> inside;
    for (ObjectId a : refined[i])
      if (in_set(ctx.u, a)) inside.push_back(a);
    if (inside.empty()) continue;  // anchored outside; unchanged
    if (std::find(enforced.begin(), enforced.end(), agent) != enforced.end()) {
      refined[i] = std::move(inside);  // falling members beat constant ties
      continue;
    }
    std::optional<Rat> best;
    for (ObjectId a : inside) {
      Rat rate = d.at(a) / ctx.slopes[i][static_cast<std::size_t>(a - 1)];
      if (!best || rate > *best) best = rate;
    }
    std::vector<ObjectId> kept;
    for (ObjectId a : inside) {
      Rat rate = d.at(a) / ctx.slopes[i][static_cast<std::size_t>(a - 1)];
      if (rate == *best) kept.push_back(a);
    }
    refined[i] = std::move(kept);
  }
  return refined;
}

int count_weak_overdemand(const Market& market,
                          const std::vector<std::vector<ObjectId>>& refined) {
  const int m = market.object_count();
  int count = 0;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<ObjectId> subset;
    for (int a = 1; a <= m; ++a)
      if (mask & (1u << (a - 1))) subset.push_back(a);
    int confined = 0;
    for (const auto& di : refined)
      if (!di.empty() && subset_of(di, subset)) ++confined;
    if (confined >= static_cast<int>(subset.size())) ++count;
  }
  return count;
}

std::vector<Branch> descending_branches(const DescendingContext& ctx) {
  std::vector<Branch> out;
  const std::size_t t = ctx.tied.size();
  if (t > 8) throw SolverFailureError("too many simultaneous ties");
  std::vector<std::string> seen;
  for (unsigned keep = (1u << t); keep-- > 0;) {
    std::vector<std::vector<ObjectId>> ties;
    std::vector<std::vector<Rat>> tie_slopes;
    std::vector<int> enforced;
    for (std::size_t j = 0; j < t; ++j) {
      if (!(keep & (1u << j))) continue;
      int agent = ctx.tied[j];
      enforced.push_back(agent);
      std::vector<ObjectId> inside;
      for (ObjectId a : ctx.demands[static_cast<std::size_t>(agent)])
        if (in_set(ctx.u, a)) inside.push_back(a);
      ties.push_back(std::move(inside));
      tie_slopes.push_back(ctx.slopes[static_cast<std::size_t>(agent)]);
    }
    auto d = solve_direction(ctx.u, ties, tie_slopes);
    if (!d) continue;
    std::string key;
    for (const auto& [a, v] : *d) key += std::to_string(a) + ":" + to_frac(v) + ";";
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    auto refined = refine_descending(ctx, *d, enforced);
    Branch b;
    b.direction = std::move(*d);
    b.dirty = count_weak_overdemand(ctx.market, refined);
    b.enforced = static_cast<int>(enforced.size());
    b.mask = keep;
    out.push_back(std::move(b));
  }
  std::stable_sort(out.begin(), out.end(), [](const Branch& x, const Branch& y) {
    if (x.dirty != y.dirty) return x.dirty < y.dirty;
    if (x.enforced != y.enforced) return x.enforced > y.enforced;
    return x.mask > y.mask;
  });
  return out;
}

// Events while lowering: any agent caught by a faster-falling object (its
// own level falls at its fastest demanded rate inside the set, 0 when
// anchored outside), breakpoint passages, and price floors.
Rat descending_lambda(const DescendingContext& ctx, const std::map<ObjectId, Rat>& d) {
  const int n = ctx.market.agent_count();
  const int m = ctx.market.object_count();
  std::optional<Rat> lambda;
  auto consider = [&](const Rat& candidate) {
    if (candidate > 0 && (!lambda || candidate < *lambda)) lambda = candidate;
  };
  for (int i = 0; i < n; ++i) {
    const Preference& r = ctx.market.pref(i);
    const auto& di = ctx.demands[static_cast<std::size_t>(i)];
    std::vector<Rat> u(static_cast<std::size_t>(m) + 1, Rat(0));
    Rat level = 0;
    for (ObjectId a = 1; a <= m; ++a) {
      u[static_cast<std::size_t>(a)] = r.to_null(a, ctx.p.at(a));
      level = std::min(level, u[static_cast<std::size_t>(a)]);
    }
    Rat c = 0;
    for (ObjectId a : di)
      if (in_set(ctx.u, a)) {
        Rat rate =
            d.at(a) / ctx.slopes[static_cast<std::size_t>(i)][static_cast<std::size_t>(a - 1)];
        if (rate > c) c = rate;
      }
    for (ObjectId b : ctx.u) {
      Rat rate_b =
          d.at(b) / ctx.slopes[static_cast<std::size_t>(i)][static_cast<std::size_t>(b - 1)];
      if (rate_b > c) consider((u[static_cast<std::size_t>(b)] - level) / (rate_b - c));
      if (auto bp = r.map(b).next_value_below(ctx.p.at(b)))
        consider((ctx.p.at(b) - *bp) / d.at(b));
    }
  }
  for (ObjectId a : ctx.u) consider(ctx.p.at(a) / d.at(a));
  if (!lambda) throw SolverFailureError("descending auction found no event");
  return *lambda;
}

std::optional<std::vector<ObjectId>> largest_underdemanded(
    const Market& market, const PriceVector& p,
    const std::vector<std::vector<ObjectId>>& demands) {
  std::vector<ObjectId> positive;
  for (ObjectId a = 1; a <= market.object_count(); ++a)
    if (p.at(a) > 0) positive.push_back(a);
  const int k = static_cast<int>(positive.size());
  std::optional<std::vector<ObjectId>> best;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<ObjectId> subset;
    for (int j = 0; j < k; ++j)
      if (mask & (1u << j)) subset.push_back(positive[static_cast<std::size_t>(j)]);
    if (best && subset.size() <= best->size()) continue;
    int demanders = 0;
    for (const auto& di : demands)
      if (intersects(di, subset)) ++demanders;
    if (demanders < static_cast<int>(subset.size())) best = subset;
  }
  return best;
}

// ----------------------------- DFS drivers ---------------------------------

struct ChoicePoint {
  PriceVector p;
  std::vector<Branch> options;
  std::size_t next = 1;
};

EquilibriumResult finish(const Market& market, PriceVector p, Certificate cert, SolveMode mode,
                         Rat tol, int iterations) {
  EquilibriumResult res{std::move(p), {}, std::move(cert), mode, std::move(tol), iterations};
  res.allocation = lex_min_supporting_allocation(market, res.prices, res.tolerance);
  return res;
}

PriceVector start_above(const Market& market) {
  std::vector<Rat> start;
  for (ObjectId a = 1; a <= market.object_count(); ++a) {
    Rat top = market.pref(0).from_null(a, 0);
    for (int i = 1; i < market.agent_count(); ++i)
      top = std::max(top, market.pref(i).from_null(a, 0));
    start.push_back(top + 1);
  }
  return PriceVector(start);
}

EquilibriumResult exact_min(const Market& market, const SolveOptions& opt) {
  std::vector<ChoicePoint> stack;
  PriceVector p = PriceVector::zero(market.object_count());
  int steps = 0;
  while (true) {
    bool backtrack = false;
    auto demands = demand_profile(market, p);
    auto s = find_overdemanded(market, p);
    if (!s) {
      Certificate cert = certify_equilibrium(market, p);
      if (cert.ok) return finish(market, p, cert, SolveMode::Exact, 0, steps);
      backtrack = true;
    } else {
      if (++steps > opt.iteration_cap) throw ExactPathExhausted{};
      AscendingContext ctx = make_ascending_context(market, p, demands, *s);
      std::vector<Branch> options = ascending_branches(ctx);
      if (options.empty()) {
        backtrack = true;
      } else {
        if (options.size() > 1) stack.push_back({p, options, 1});
        Rat lambda = ascending_lambda(ctx, options[0].direction);
        for (ObjectId a : *s) p.set(a, p.at(a) + options[0].direction.at(a) * lambda);
      }
    }
    while (backtrack) {
      if (stack.empty()) throw ExactPathExhausted{};
      ChoicePoint& top = stack.back();
      if (top.next >= top.options.size()) {
        stack.pop_back();
        continue;
      }
      if (++steps > opt.iteration_cap) throw ExactPathExhausted{};
      p = top.p;
      const Branch& branch = top.options[top.next++];
      auto demands2 = demand_profile(market, p);
      auto s2 = find_overdemanded(market, p);
      AscendingContext ctx = make_ascending_context(market, p, demands2, *s2);
      Rat lambda = ascending_lambda(ctx, branch.direction);
      for (ObjectId a : *s2) p.set(a, p.at(a) + branch.direction.at(a) * lambda);
      backtrack = false;
    }
  }
}

EquilibriumResult exact_max(const Market& market, const SolveOptions& opt) {
  std::vector<ChoicePoint> stack;
  PriceVector p = start_above(market);
  int steps = 0;
  while (true) {
    bool backtrack = false;
    auto demands = demand_profile(market, p);
    auto u = largest_underdemanded(market, p, demands);
    if (!u) {
      Certificate cert = certify_maximum(market, p);
      if (cert.ok) return finish(market, p, cert, SolveMode::Exact, 0, steps);
      backtrack = true;
    } else {
      if (++steps > opt.iteration_cap) throw ExactPathExhausted{};
      DescendingContext ctx = make_descending_context(market, p, demands, *u);
      std::vector<Branch> options = descending_branches(ctx);
      if (options.empty()) {
        backtrack = true;
      } else {
        if (options.size() > 1) stack.push_back({p, options, 1});
        Rat lambda = descending_lambda(ctx, options[0].direction);
        for (ObjectId a : *u) p.set(a, p.at(a) - options[0].direction.at(a) * lambda);
      }
    }
    while (backtrack) {
      if (stack.empty()) throw ExactPathExhausted{};
      ChoicePoint& top = stack.back();
      if (top.next >= top.options.size()) {
        stack.pop_back();
        continue;
      }
      if (++steps > opt.iteration_cap) throw ExactPathExhausted{};
      p = top.p;
      const Branch& branch = top.options[top.next++];
      auto demands2 = demand_profile(market, p);
      auto u2 = largest_underdemanded(market, p, demands2);
      DescendingContext ctx = make_descending_context(market, p, demands2, *u2);
      Rat lambda = descending_lambda(ctx, branch.direction);
      for (ObjectId a : *u2) p.set(a, p.at(a) - branch.direction.at(a) * lambda);
      backtrack = false;
    }
  }
}

// --------------------------- epsilon auctions -------------------------------
// Fixed-step moves of the largest workable subset of the violating set; the
// step is halved when no subset works.

EquilibriumResult epsilon_min(const Market& market, const SolveOptions& opt) {
  const Rat& eps = opt.epsilon;
  PriceVector p = PriceVector::zero(market.object_count());
  Rat delta = 1;
  for (int it = 0; it < opt.iteration_cap; ++it) {
    Certificate cert = certify_equilibrium(market, p, eps);
    if (cert.ok) return finish(market, p, cert, SolveMode::Epsilon, eps, it);
    if (cert.kind != ViolationKind::Overdemanded)
      throw SolverFailureError("epsilon auction reached weak underdemand from below");
    const std::vector<ObjectId>& v = *cert.violating_set;
    const int k = static_cast<int>(v.size());
    bool moved = false;
    for (int size = k; size >= 1 && !moved; --size) {
      for (unsigned mask = 1; mask < (1u << k) && !moved; ++mask) {
        if (std::popcount(mask) != size) continue;
        PriceVector next = p;
        for (int j = 0; j < k; ++j)
          if (mask & (1u << j)) {
            ObjectId a = v[static_cast<std::size_t>(j)];
            next.set(a, next.at(a) + delta);
          }
        if (!find_weakly_underdemanded(market, next, eps)) {
          p = next;
          moved = true;
        }
      }
    }
    if (!moved) {
      delta /= 2;
      if (delta < eps / 8) throw SolverFailureError("epsilon auction stalled below tolerance");
    }
  }
  throw ComputationLimitError("epsilon auction exceeded the iteration cap");
}

EquilibriumResult epsilon_max(const Market& market, const SolveOptions& opt) {
  const Rat& eps = opt.epsilon;
  PriceVector p = start_above(market);
  Rat delta = 1;
  for (int it = 0; it < opt.iteration_cap; ++it) {
    Certificate cert = certify_maximum(market, p, eps);
    if (cert.ok) return finish(market, p, cert, SolveMode::Epsilon, eps, it);
    if (cert.kind != ViolationKind::Underdemanded)
      throw SolverFailureError("epsilon auction reached weak overdemand from above");
    const std::vector<ObjectId>& v = *cert.violating_set;
    const int k = static_cast<int>(v.size());
    bool moved = false;
    for (int size = k; size >= 1 && !moved; --size) {
      for (unsigned mask = 1; mask < (1u << k) && !moved; ++mask) {
        if (std::popcount(mask) != size) continue;
        PriceVector next = p;
        bool floored = false;
        for (int j = 0; j < k; ++j)
          if (mask & (1u << j)) {
            ObjectId a = v[static_cast<std::size_t>(j)];
            if (next.at(a) < delta) {
              floored = true;
              break;
            }
            next.set(a, next.at(a) - delta);
          }
        if (floored) continue;
        if (!find_weakly_overdemanded(market, next, eps)) {
          p = next;
          moved = true;
        }
      }
    }
    if (!moved) {
      delta /= 2;
      if (delta < eps / 8) throw SolverFailureError("epsilon auction stalled below tolerance");
    }
  }
  throw ComputationLimitError("epsilon auction exceeded the iteration cap");
}

}  // namespace

EquilibriumResult min_walrasian_prices(const Market& market, const SolveOptions& opt) {
  if (opt.mode == SolveMode::Epsilon) return epsilon_min(market, opt);
  try {
    return exact_min(market, opt);
  } catch (const ExactPathExhausted&) {
  }
  return epsilon_min(market, opt);
}

EquilibriumResult max_walrasian_prices(const Market& market, const SolveOptions& opt) {
  if (opt.mode == SolveMode::Epsilon) return epsilon_max(market, opt);
  try {
    return exact_max(market, opt);
  } catch (const ExactPathExhausted&) {
  }
  return epsilon_max(market, opt);
}

namespace {

std::vector<PriceVector> certified_grid_points(const Market& market, const Rat& step,
                                               const Rat& bound) {
  if (market.object_count() > 3)
    throw std::invalid_argument("grid oracle limited to 3 real objects");
  if (step <= 0 || bound <= 0) throw std::invalid_argument("grid step and bound must be positive");
  const int m = market.object_count();
  long levels = 0;
  for (Rat v = 0; v <= bound; v += step) ++levels;
  std::vector<PriceVector> certified;
  std::vector<long> idx(static_cast<std::size_t>(m), 0);
  while (true) {
    std::vector<Rat> coords;
    coords.reserve(static_cast<std::size_t>(m));
    for (long k : idx) coords.push_back(step * k);
    PriceVector p(coords);
    if (has_supporting_allocation(market, p)) certified.push_back(p);
    int pos = 0;
    while (pos < m && ++idx[static_cast<std::size_t>(pos)] == levels) {
      idx[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == m) break;
  }
  return certified;
}

}  // namespace

PriceVector grid_oracle_min_prices(const Market& market, const Rat& step, const Rat& bound) {
  auto certified = certified_grid_points(market, step, bound);
  if (certified.empty()) throw OracleFailureError("no grid point supports an equilibrium");
  std::vector<Rat> meet = certified.front().real_prices();
  for (const PriceVector& q : certified)
    for (std::size_t a = 0; a < meet.size(); ++a)
      meet[a] = std::min(meet[a], q.real_prices()[a]);
  PriceVector p(meet);
  // Equilibrium prices form a lattice, so the meet must itself certify.
  if (std::find(certified.begin(), certified.end(), p) == certified.end())
    throw OracleFailureError("certified grid set has no componentwise minimum");
  return p;
}

PriceVector grid_oracle_max_prices(const Market& market, const Rat& step, const Rat& bound) {
  auto certified = certified_grid_points(market, step, bound);
  if (certified.empty()) throw OracleFailureError("no grid point supports an equilibrium");
  std::vector<Rat> join = certified.front().real_prices();
  for (const PriceVector& q : certified)
    for (std::size_t a = 0; a < join.size(); ++a)
      join[a] = std::max(join[a], q.real_prices()[a]);
  PriceVector p(join);
  if (std::find(certified.begin(), certified.end(), p) == certified.end())
    throw OracleFailureError("certified grid set has no componentwise maximum");
  return p;
}

ObjectAllocation select_zmin_allocation(const Market& market, const PriceVector& p_min,
                                        const Rat& tol) {
  return lex_min_supporting_allocation(market, p_min, tol);
}

}  // namespace walras
