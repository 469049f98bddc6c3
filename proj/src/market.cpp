#include "walras/market.hpp"

#include <algorithm>
#include <stdexcept>

#include "walras/matching.hpp"

namespace walras {

const Rat PriceVector::kZero = Rat(0);

PriceVector::PriceVector(std::vector<Rat> real_prices) : p_(std::move(real_prices)) {
  if (p_.empty()) throw std::invalid_argument("price vector needs at least one real object");
  for (const Rat& v : p_)
    if (v < 0) throw std::invalid_argument("prices must be nonnegative");
}

PriceVector PriceVector::zero(int object_count) {
  return PriceVector(std::vector<Rat>(static_cast<std::size_t>(object_count), Rat(0)));
}

const Rat& PriceVector::at(ObjectId a) const {
  if (a == kNullObject) return kZero;
  if (a < 0 || a > object_count()) throw std::invalid_argument("object id out of range");
  return p_[static_cast<std::size_t>(a - 1)];
}

void PriceVector::set(ObjectId a, Rat value) {
  if (a <= 0 || a > object_count()) throw std::invalid_argument("object id out of range");
  if (value < 0) throw std::invalid_argument("prices must be nonnegative");
  p_[static_cast<std::size_t>(a - 1)] = std::move(value);
}

bool ObjectAllocation::valid(int object_count) const {
  std::vector<char> used(static_cast<std::size_t>(object_count) + 1, 0);
  for (ObjectId a : assignment) {
    if (a < 0 || a > object_count) return false;
    if (a != kNullObject) {
      if (used[static_cast<std::size_t>(a)]) return false;
      used[static_cast<std::size_t>(a)] = 1;
    }
  }
  return true;
}

Market::Market(int object_count, std::vector<Preference> profile)
    : m_(object_count), profile_(std::move(profile)) {
  if (m_ < 1) throw std::invalid_argument("need at least one real object");
  if (static_cast<int>(profile_.size()) <= m_)
    throw std::invalid_argument("need more agents than objects");
  for (const Preference& r : profile_)
    if (r.object_count() != m_)
      throw std::invalid_argument("preference covers a different object set");
}

Market Market::with_preference(int agent, Preference replacement) const {
  std::vector<Preference> profile = profile_;
  profile.at(static_cast<std::size_t>(agent)) = std::move(replacement);
  return Market(m_, std::move(profile));
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Overdemanded: return "overdemanded";
    case ViolationKind::WeaklyUnderdemanded: return "weakly_underdemanded";
    case ViolationKind::Underdemanded: return "underdemanded";
    case ViolationKind::WeaklyOverdemanded: return "weakly_overdemanded";
  }
  return "?";
}

std::vector<ObjectId> demand_set(const Preference& pref, const PriceVector& p, const Rat& tol) {
  const int m = pref.object_count();
  std::vector<Rat> equiv(static_cast<std::size_t>(m) + 1);
  Rat best = 0;  // null option
  equiv[0] = 0;
  for (ObjectId a = 1; a <= m; ++a) {
    equiv[static_cast<std::size_t>(a)] = pref.to_null(a, p.at(a));
    best = std::min(best, equiv[static_cast<std::size_t>(a)]);
  }
  std::vector<ObjectId> out;
  for (ObjectId a = 0; a <= m; ++a)
    if (equiv[static_cast<std::size_t>(a)] <= best + tol) out.push_back(a);
  return out;
}

std::vector<std::vector<ObjectId>> demand_profile(const Market& market, const PriceVector& p,
                                                  const Rat& tol) {
  std::vector<std::vector<ObjectId>> ds;
  ds.reserve(static_cast<std::size_t>(market.agent_count()));
  for (int i = 0; i < market.agent_count(); ++i)
    ds.push_back(demand_set(market.pref(i), p, tol));
  return ds;
}

namespace {

bool contains(const std::vector<ObjectId>& sorted, ObjectId a) {
  return std::binary_search(sorted.begin(), sorted.end(), a);
}

// Subsets of `universe` in (cardinality, lexicographic) order.
template <typename Fn>
void for_each_subset_by_size(const std::vector<ObjectId>& universe, Fn&& fn) {
  const int k = static_cast<int>(universe.size());
  for (int size = 1; size <= k; ++size) {
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      std::vector<ObjectId> subset;
      subset.reserve(static_cast<std::size_t>(size));
      for (int i : idx) subset.push_back(universe[static_cast<std::size_t>(i)]);
      if (fn(subset)) return;
      int pos = size - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == k - size + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < size; ++i)
        idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
}

int count_demanders(const std::vector<std::vector<ObjectId>>& ds,
                    const std::vector<ObjectId>& set) {
  int c = 0;
  for (const auto& d : ds) {
    for (ObjectId a : set)
      if (contains(d, a)) {
        ++c;
        break;
      }
  }
  return c;
}

int count_confined(const std::vector<std::vector<ObjectId>>& ds,
                   const std::vector<ObjectId>& set) {
  int c = 0;
  for (const auto& d : ds) {
    bool inside = true;
    for (ObjectId a : d)
      if (!contains(set, a)) {
        inside = false;
        break;
      }
    if (inside) ++c;
  }
  return c;
}

void check_subset_limit(int m) {
  if (m > 12) throw std::invalid_argument("subset-based detector limited to 12 objects");
}

}  // namespace

std::optional<std::vector<ObjectId>> find_overdemanded(const Market& market,
                                                       const PriceVector& p, const Rat& tol) {
  auto ds = demand_profile(market, p, tol);
  // Existence screen: agents whose demand excludes the null object must be
  // matchable to distinct demanded objects; a Hall violator certifies that
  // some overdemanded set exists.
  std::vector<int> zero_free;
  for (int i = 0; i < market.agent_count(); ++i)
    if (!contains(ds[static_cast<std::size_t>(i)], kNullObject)) zero_free.push_back(i);

  Bipartite g;
  g.left = static_cast<int>(zero_free.size());
  g.right = market.object_count();
  g.adj.resize(static_cast<std::size_t>(g.left));
  for (int l = 0; l < g.left; ++l)
    for (ObjectId a : ds[static_cast<std::size_t>(zero_free[static_cast<std::size_t>(l)])])
      g.adj[static_cast<std::size_t>(l)].push_back(a - 1);

  if (!hall_violator(g)) return std::nullopt;

  // The violator's neighbourhood need not be inclusion-minimal (an
  // alternating path can drag extra objects in), so scan subsets in
  // (cardinality, lexicographic) order; the first hit is minimal.
  check_subset_limit(market.object_count());
  std::vector<ObjectId> universe;
  for (ObjectId a = 1; a <= market.object_count(); ++a) universe.push_back(a);
  std::optional<std::vector<ObjectId>> found;
  for_each_subset_by_size(universe, [&](const std::vector<ObjectId>& s) {
    if (count_confined(ds, s) > static_cast<int>(s.size())) {
      found = s;
      return true;
    }
    return false;
  });
  return found;
}

std::optional<std::vector<ObjectId>> find_weakly_underdemanded(const Market& market,
                                                               const PriceVector& p,
                                                               const Rat& tol) {
  check_subset_limit(market.object_count());
  auto ds = demand_profile(market, p, tol);
  std::vector<ObjectId> positive;
  for (ObjectId a = 1; a <= market.object_count(); ++a)
    if (p.at(a) > 0) positive.push_back(a);
  std::optional<std::vector<ObjectId>> found;
  for_each_subset_by_size(positive, [&](const std::vector<ObjectId>& s) {
    if (count_demanders(ds, s) <= static_cast<int>(s.size())) {
      found = s;
      return true;
    }
    return false;
  });
  return found;
}

std::optional<std::vector<ObjectId>> find_underdemanded(const Market& market,
                                                        const PriceVector& p, const Rat& tol) {
  check_subset_limit(market.object_count());
  auto ds = demand_profile(market, p, tol);
  std::vector<ObjectId> positive;
  for (ObjectId a = 1; a <= market.object_count(); ++a)
    if (p.at(a) > 0) positive.push_back(a);
  std::optional<std::vector<ObjectId>> found;
  for_each_subset_by_size(positive, [&](const std::vector<ObjectId>& s) {
    if (count_demanders(ds, s) < static_cast<int>(s.size())) {
      found = s;
      return true;
    }
    return false;
  });
  return found;
}

std::optional<std::vector<ObjectId>> find_weakly_overdemanded(const Market& market,
                                                              const PriceVector& p,
                                                              const Rat& tol) {
  check_subset_limit(market.object_count());
  auto ds = demand_profile(market, p, tol);
  std::vector<ObjectId> universe;
  for (ObjectId a = 1; a <= market.object_count(); ++a) universe.push_back(a);
  std::optional<std::vector<ObjectId>> found;
  for_each_subset_by_size(universe, [&](const std::vector<ObjectId>& s) {
    if (count_confined(ds, s) >= static_cast<int>(s.size())) {
      found = s;
      return true;
    }
    return false;
  });
  return found;
}

Certificate certify_equilibrium(const Market& market, const PriceVector& p, const Rat& tol) {
  Certificate cert;
  if (auto over = find_overdemanded(market, p, tol)) {
    cert.violating_set = *over;
    cert.kind = ViolationKind::Overdemanded;
    return cert;
  }
  if (auto under = find_weakly_underdemanded(market, p, tol)) {
    cert.violating_set = *under;
    cert.kind = ViolationKind::WeaklyUnderdemanded;
    return cert;
  }
  cert.ok = true;
  return cert;
}

Certificate certify_maximum(const Market& market, const PriceVector& p, const Rat& tol) {
  Certificate cert;
  if (auto under = find_underdemanded(market, p, tol)) {
    cert.violating_set = *under;
    cert.kind = ViolationKind::Underdemanded;
    return cert;
  }
  if (auto over = find_weakly_overdemanded(market, p, tol)) {
    cert.violating_set = *over;
    cert.kind = ViolationKind::WeaklyOverdemanded;
    return cert;
  }
  cert.ok = true;
  return cert;
}

bool is_walrasian_equilibrium(const Market& market, const ObjectAllocation& allocation,
                              const PriceVector& p, const Rat& tol) {
  if (static_cast<int>(allocation.assignment.size()) != market.agent_count()) return false;
  if (!allocation.valid(market.object_count())) return false;
  std::vector<char> assigned(static_cast<std::size_t>(market.object_count()) + 1, 0);
  for (int i = 0; i < market.agent_count(); ++i) {
    ObjectId a = allocation.assignment[static_cast<std::size_t>(i)];
    assigned[static_cast<std::size_t>(a)] = 1;
    auto d = demand_set(market.pref(i), p, tol);
    if (!contains(d, a)) return false;
  }
  for (ObjectId a = 1; a <= market.object_count(); ++a)
    if (!assigned[static_cast<std::size_t>(a)] && p.at(a) > 0) return false;
  return true;
}

std::vector<int> demand_connected_sequence(const Market& market,
                                           const ObjectAllocation& allocation,
                                           const PriceVector& p, int start_agent) {
  if (start_agent < 0 || start_agent >= market.agent_count())
    throw std::invalid_argument("start agent out of range");
  auto ds = demand_profile(market, p);
  auto held = [&](int i) { return allocation.assignment[static_cast<std::size_t>(i)]; };
  if (held(start_agent) == kNullObject) return {start_agent};

  // BFS over agents; an edge goes from agent c to agent k when k demands
  // the object held by c (k's own object is demanded by equilibrium).
  std::vector<int> parent(static_cast<std::size_t>(market.agent_count()), -2);
  parent[static_cast<std::size_t>(start_agent)] = -1;
  std::vector<int> queue{start_agent};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int c = queue[qi];
    for (int k = 0; k < market.agent_count(); ++k) {
      if (parent[static_cast<std::size_t>(k)] != -2) continue;
      if (!contains(ds[static_cast<std::size_t>(k)], held(c))) continue;
      parent[static_cast<std::size_t>(k)] = c;
      if (held(k) == kNullObject) {
        std::vector<int> path{k};
        for (int cur = c; cur != -1; cur = parent[static_cast<std::size_t>(cur)])
          path.push_back(cur);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(k);
    }
  }
  throw std::runtime_error(
      "no demand-connected sequence: (allocation, p) is not a certified minimum equilibrium");
}

}  // namespace walras
