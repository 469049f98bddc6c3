#include "walras/preference.hpp"

#include <algorithm>
#include <stdexcept>

namespace walras {

namespace {

// Slope between consecutive breakpoints as an exact rational.
Rat slope(const std::pair<Rat, Rat>& a, const std::pair<Rat, Rat>& b) {
  return (b.second - a.second) / (b.first - a.first);
}

std::vector<std::pair<Rat, Rat>> canonicalize(std::vector<std::pair<Rat, Rat>> pts) {
  if (pts.empty()) throw std::invalid_argument("piecewise map needs at least one breakpoint");
  std::sort(pts.begin(), pts.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].first == pts[i - 1].first)
      throw std::invalid_argument("duplicate breakpoint argument");
    if (pts[i].second <= pts[i - 1].second)
      throw std::invalid_argument("piecewise map must be strictly increasing");
  }
  // Drop interior points collinear with their neighbours.
  std::vector<std::pair<Rat, Rat>> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (out.size() >= 2 && slope(out[out.size() - 2], out.back()) == slope(out.back(), pts[i]))
      out.pop_back();
    out.push_back(pts[i]);
  }
  // Extreme points whose adjacent segment has unit slope coincide with the
  // tail extrapolation and are redundant.
  while (out.size() >= 2 && slope(out[0], out[1]) == 1) out.erase(out.begin());
  while (out.size() >= 2 && slope(out[out.size() - 2], out.back()) == 1) out.pop_back();
  // A single breakpoint means the whole map is a unit-slope shift; anchor
  // it at argument 0 so equal maps compare equal.
  if (out.size() == 1) out[0] = {Rat(0), out[0].second - out[0].first};
  return out;
}

}  // namespace

PwlBijection::PwlBijection(std::vector<std::pair<Rat, Rat>> points)
    : pts_(canonicalize(std::move(points))) {
  if (!dominates_identity())
    throw std::invalid_argument("map must stay above the identity (desirability)");
}

Rat PwlBijection::value_at(const Rat& arg) const {
  if (arg <= pts_.front().first) return pts_.front().second - (pts_.front().first - arg);
  if (arg >= pts_.back().first) return pts_.back().second + (arg - pts_.back().first);
  auto it = std::upper_bound(pts_.begin(), pts_.end(), arg,
                             [](const Rat& v, const auto& p) { return v < p.first; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  return lo.second + (arg - lo.first) * (hi.second - lo.second) / (hi.first - lo.first);
}

Rat PwlBijection::arg_at(const Rat& value) const {
  if (value <= pts_.front().second) return pts_.front().first - (pts_.front().second - value);
  if (value >= pts_.back().second) return pts_.back().first + (value - pts_.back().second);
  auto it = std::upper_bound(pts_.begin(), pts_.end(), value,
                             [](const Rat& v, const auto& p) { return v < p.second; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  return lo.first + (value - lo.second) * (hi.first - lo.first) / (hi.second - lo.second);
}

Rat PwlBijection::slope_above(const Rat& arg) const {
  if (arg >= pts_.back().first) return 1;
  if (arg < pts_.front().first) return 1;
  auto it = std::upper_bound(pts_.begin(), pts_.end(), arg,
                             [](const Rat& v, const auto& p) { return v < p.first; });
  return slope(*(it - 1), *it);
}

Rat PwlBijection::slope_below(const Rat& arg) const {
  if (arg <= pts_.front().first) return 1;
  if (arg > pts_.back().first) return 1;
  auto it = std::lower_bound(pts_.begin(), pts_.end(), arg,
                             [](const auto& p, const Rat& v) { return p.first < v; });
  return slope(*(it - 1), *it);
}

std::optional<Rat> PwlBijection::next_value_above(const Rat& value) const {
  for (const auto& pt : pts_)
    if (pt.second > value) return pt.second;
  return std::nullopt;
}

std::optional<Rat> PwlBijection::next_value_below(const Rat& value) const {
  for (auto it = pts_.rbegin(); it != pts_.rend(); ++it)
    if (it->second < value) return it->second;
  return std::nullopt;
}

bool PwlBijection::dominates_identity() const {
  for (const auto& [u, v] : pts_)
    if (v <= u) return false;
  return true;
}

Preference::Preference(std::vector<PwlBijection> maps) : maps_(std::move(maps)) {
  if (maps_.empty()) throw std::invalid_argument("preference needs at least one real object");
}

Rat Preference::to_null(ObjectId object, const Rat& pay) const {
  if (object == kNullObject) return pay;
  return map(object).arg_at(pay);
}

Rat Preference::from_null(ObjectId object, const Rat& u) const {
  if (object == kNullObject) return u;
  return map(object).value_at(u);
}

Rat Preference::valuation(ObjectId target, const Bundle& anchor) const {
  return from_null(target, to_null(anchor.object, anchor.transfer));
}

Order Preference::compare(const Bundle& x, const Bundle& y, const Rat& tol) const {
  Rat ux = to_null(x.object, x.transfer);
  Rat uy = to_null(y.object, y.transfer);
  Rat d = ux - uy;
  if (d < -tol) return Order::Better;
  if (d > tol) return Order::Worse;
  return Order::Indifferent;
}

const PwlBijection& Preference::map(ObjectId object) const {
  if (object <= 0 || object > object_count())
    throw std::invalid_argument("object id out of range");
  return maps_[static_cast<std::size_t>(object - 1)];
}

bool Preference::is_quasilinear() const {
  for (const auto& m : maps_)
    if (m.points().size() != 1) return false;
  return true;
}

std::vector<Rat> Preference::zero_valuations() const {
  std::vector<Rat> v;
  v.reserve(maps_.size());
  for (const auto& m : maps_) v.push_back(m.value_at(0));
  return v;
}

Preference Preference::restricted_to(const std::vector<ObjectId>& keep) const {
  std::vector<PwlBijection> maps;
  maps.reserve(keep.size());
  for (ObjectId a : keep) maps.push_back(map(a));
  return Preference(std::move(maps));
}

Preference make_quasilinear(const std::vector<Rat>& values) {
  if (values.empty()) throw std::invalid_argument("need at least one object value");
  std::vector<PwlBijection> maps;
  maps.reserve(values.size());
  for (const Rat& v : values) {
    if (v <= 0) throw std::invalid_argument("quasilinear object values must be positive");
    maps.emplace_back(std::vector<std::pair<Rat, Rat>>{{Rat(0), v}});
  }
  return Preference(std::move(maps));
}

Preference make_favoring(int object_count, ObjectId target, const Rat& threshold,
                         const FavoringMargins& margins) {
  if (target <= 0 || target > object_count)
    throw std::invalid_argument("favoring target must be a real object");
  if (threshold < 0) throw std::invalid_argument("favoring threshold must be nonnegative");
  if (margins.depth <= 0 || margins.off_value >= 0 || margins.off_value <= -margins.depth)
    throw std::invalid_argument("infeasible favoring margins");
  // One indifference vector pinned at null-equivalent -depth: payment
  // `threshold` on the target, a negative payment everywhere else. Unit
  // slopes elsewhere keep the construction minimal.
  std::vector<PwlBijection> maps;
  for (ObjectId a = 1; a <= object_count; ++a) {
    Rat at_depth = (a == target) ? threshold : margins.off_value;
    maps.emplace_back(std::vector<std::pair<Rat, Rat>>{{-margins.depth, at_depth}});
  }
  return Preference(std::move(maps));
}

Preference make_conversion_preference(int object_count, ObjectId held_object,
                                      const Rat& held_transfer, ObjectId next_object,
                                      const Rat& cap, const Rat& ceiling) {
  if (object_count < 2) throw std::invalid_argument("conversion needs at least two objects");
  if (held_object <= 0 || held_object > object_count || next_object <= 0 ||
      next_object > object_count || held_object == next_object)
    throw std::invalid_argument("held and next must be distinct real objects");
  if (held_transfer < 0) throw std::invalid_argument("held transfer must be nonnegative");
  if (cap <= held_transfer)
    throw std::invalid_argument("cap must exceed the held transfer");
  if (cap > ceiling) throw std::invalid_argument("cap must not exceed the ceiling");

  // Slack below strict bounds; the paper-style conditions only need
  // strictness, a fixed slack of min(1, gap)/2 keeps the output canonical.
  Rat held_gap = cap - held_transfer;
  Rat held_at_zero = held_transfer + std::min(Rat(1), held_gap) / 2;
  Rat w = std::min(Rat(1), ceiling) / 2;  // other objects' value at t0 = 0

  std::vector<PwlBijection> maps;
  for (ObjectId a = 1; a <= object_count; ++a) {
    if (a == held_object) {
      maps.emplace_back(std::vector<std::pair<Rat, Rat>>{{Rat(-1), held_transfer},
                                                         {Rat(0), held_at_zero}});
    } else if (a == next_object) {
      // Rises from below zero on the favored vector to above the ceiling
      // already at the null-equivalent of any other object's free bundle.
      Rat knee = (object_count == 2) ? Rat(0) : -w;
      maps.emplace_back(
          std::vector<std::pair<Rat, Rat>>{{Rat(-1), Rat(-1, 2)}, {knee, ceiling + 1}});
    } else {
      maps.emplace_back(std::vector<std::pair<Rat, Rat>>{{Rat(0), w}});
    }
  }
  return Preference(std::move(maps));
}

Preference make_rich_witness(ObjectId target, const std::vector<Rat>& p_hat,
                             const std::vector<Rat>& p) {
  const int m = static_cast<int>(p_hat.size());
  if (static_cast<int>(p.size()) != m || m < 1)
    throw std::invalid_argument("price vectors must cover the same real objects");
  if (target <= 0 || target > m) throw std::invalid_argument("target must be a real object");
  for (ObjectId a = 1; a <= m; ++a) {
    const Rat& hat = p_hat[static_cast<std::size_t>(a - 1)];
    if (a == target ? hat <= 0 : hat != 0)
      throw std::invalid_argument("p_hat must price exactly the target positively");
    if (p[static_cast<std::size_t>(a - 1)] <= hat)
      throw std::invalid_argument("p must exceed p_hat on every real object");
  }
  std::vector<PwlBijection> maps;
  for (ObjectId a = 1; a <= m; ++a) {
    const Rat& pa = p[static_cast<std::size_t>(a - 1)];
    if (a == target) {
      const Rat& hat = p_hat[static_cast<std::size_t>(a - 1)];
      maps.emplace_back(
          std::vector<std::pair<Rat, Rat>>{{Rat(-1), hat}, {Rat(0), (hat + pa) / 2}});
    } else {
      maps.emplace_back(std::vector<std::pair<Rat, Rat>>{{Rat(-1), Rat(-1, 2)},
                                                         {Rat(0), std::min(Rat(1), pa) / 2}});
    }
  }
  return Preference(std::move(maps));
}

}  // namespace walras
