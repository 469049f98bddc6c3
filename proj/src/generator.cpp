#include "walras/generator.hpp"

#include <random>

namespace walras {

Family family_from_string(const std::string& s) {
  if (s == "quasilinear") return Family::Quasilinear;
  if (s == "piecewise") return Family::Piecewise;
  if (s == "mixed") return Family::Mixed;
  throw std::invalid_argument("unknown family: " + s);
}

std::string to_string(Family f) {
  switch (f) {
    case Family::Quasilinear: return "quasilinear";
    case Family::Piecewise: return "piecewise";
    case Family::Mixed: return "mixed";
  }
  return "?";
}

namespace {

// mt19937_64 output is pinned by the standard; taking remainders keeps the
// streams portable across library implementations.
long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::vector<Rat> random_values(std::mt19937_64& rng, int m, const GenOptions& o) {
  std::vector<Rat> v;
  for (int a = 0; a < m; ++a)
    v.push_back(Rat(draw(rng, o.denominator, o.max_value * o.denominator), o.denominator));
  return v;
}

Preference random_quasilinear(std::mt19937_64& rng, int m, const GenOptions& o) {
  return make_quasilinear(random_values(rng, m, o));
}

// Kinked map anchored at (0, value): one or two segments below zero with
// slopes above one, unit tails elsewhere. Income effects live on the price
// range the auctions actually visit.
Preference random_piecewise(std::mt19937_64& rng, int m, const GenOptions& o) {
  std::vector<PwlBijection> maps;
  for (int a = 0; a < m; ++a) {
    Rat value(draw(rng, 2 * o.denominator, o.max_value * o.denominator), o.denominator);
    int kinks = static_cast<int>(draw(rng, 1, 2));
    std::vector<std::pair<Rat, Rat>> pts{{Rat(0), value}};
    Rat u = 0;
    Rat val = value;
    for (int k = 0; k < kinks; ++k) {
      Rat du = value / 4;
      Rat s = (draw(rng, 0, 1) == 0) ? Rat(9, 8) : Rat(5, 4);
      u -= du;
      val -= s * du;
      pts.push_back({u, val});
    }
    maps.emplace_back(std::move(pts));
  }
  return Preference(std::move(maps));
}

}  // namespace

Market generate_market(std::uint64_t seed, int n, int m, Family family,
                       const GenOptions& options) {
  if (m < 2) throw std::invalid_argument("need at least two objects");
  if (n <= m) throw std::invalid_argument("need more agents than objects");
  std::mt19937_64 rng(seed);
  std::vector<Preference> profile;
  for (int i = 0; i < n; ++i) {
    bool quasi;
    switch (family) {
      case Family::Quasilinear: quasi = true; break;
      case Family::Piecewise: quasi = false; break;
      case Family::Mixed:
        // The last agent is always kinked so the family is honest.
        quasi = (i != n - 1) && draw(rng, 0, 1) == 0;
        break;
    }
    if (options.clone_pair && i <= 1) quasi = true;
    profile.push_back(quasi ? random_quasilinear(rng, m, options)
                            : random_piecewise(rng, m, options));
  }
  if (options.clone_pair) profile[1] = profile[0];
  return Market(m, std::move(profile));
}

DeviationPool generate_pool(const Market& market, std::uint64_t seed, int quasilinear_count,
                            int piecewise_count) {
  const int m = market.object_count();
  DeviationPool pool;
  for (int i = 0; i < market.agent_count(); ++i) {
    std::mt19937_64 rng(seed * 1000003 + static_cast<std::uint64_t>(i));
    std::vector<Preference> devs;
    std::vector<Rat> own = market.pref(i).zero_valuations();

    // Structured misreports first: shrunk, inflated, reversed, flat-tiny,
    // flat-high.
    std::vector<Rat> scaled;
    for (const Rat& v : own) scaled.push_back(v / 2);
    devs.push_back(make_quasilinear(scaled));
    scaled.clear();
    for (const Rat& v : own) scaled.push_back(v * 2);
    devs.push_back(make_quasilinear(scaled));
    devs.push_back(make_quasilinear(std::vector<Rat>(own.rbegin(), own.rend())));
    devs.push_back(make_quasilinear(std::vector<Rat>(static_cast<std::size_t>(m), Rat(1, 4))));
    Rat top = own[0];
    for (const Rat& v : own) top = std::max(top, v);
    devs.push_back(make_quasilinear(std::vector<Rat>(static_cast<std::size_t>(m), top + 3)));
    while (static_cast<int>(devs.size()) < quasilinear_count)
      devs.push_back(random_quasilinear(rng, m, {}));

    int added = 0;
    for (ObjectId a = 1; a <= m && added < piecewise_count; ++a, ++added)
      devs.push_back(make_favoring(m, a, 0));
    for (ObjectId a = 1; a <= m && added < piecewise_count; ++a, ++added)
      devs.push_back(make_favoring(m, a, 1));
    while (added < piecewise_count) {
      devs.push_back(random_piecewise(rng, m, {}));
      ++added;
    }
    pool.per_agent.push_back(std::move(devs));
  }
  return pool;
}

}  // namespace walras
