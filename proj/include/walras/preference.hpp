#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "walras/rational.hpp"

namespace walras {

// Objects are indexed 0..m where 0 is the null object (assignable to any
// number of agents). Real objects are 1..m.
using ObjectId = int;
inline constexpr ObjectId kNullObject = 0;

// A consumption bundle: an object together with the payment made for it.
struct Bundle {
  ObjectId object = kNullObject;
  Rat transfer = 0;

  friend bool operator==(const Bundle&, const Bundle&) = default;
};

enum class Order { Better, Indifferent, Worse };

// Strictly increasing piecewise-linear bijection of the real line, stored as
// breakpoints with unit-slope extrapolation beyond the extremes. Both
// coordinates of the breakpoint list are strictly increasing; the list is
// kept canonical (no collinear interior points, no unit-slope extreme
// points, a lone breakpoint anchored at argument 0).
class PwlBijection {
 public:
  explicit PwlBijection(std::vector<std::pair<Rat, Rat>> points);

  const std::vector<std::pair<Rat, Rat>>& points() const { return pts_; }

  Rat value_at(const Rat& arg) const;
  Rat arg_at(const Rat& value) const;  // exact inverse

  // One-sided slopes at an argument (the tails have slope 1).
  Rat slope_above(const Rat& arg) const;
  Rat slope_below(const Rat& arg) const;

  // Nearest breakpoint in value (payment) coordinates strictly beyond the
  // given payment, if any.
  std::optional<Rat> next_value_above(const Rat& value) const;
  std::optional<Rat> next_value_below(const Rat& value) const;

  // value_at(u) > u everywhere. Affine pieces and unit tails make the
  // breakpoint check sufficient.
  bool dominates_identity() const;

  friend bool operator==(const PwlBijection&, const PwlBijection&) = default;

 private:
  std::vector<std::pair<Rat, Rat>> pts_;
};

// A complete preference over (object, payment) bundles satisfying money
// monotonicity, desirability of objects, continuity, and possibility of
// compensation. Encoded by one map per real object a: the payment on a that
// is indifferent to paying t0 for the null object. Bundles compare through
// their null-equivalents: (a,s) is weakly preferred to (b,t) iff
// to_null(a,s) <= to_null(b,t).
class Preference {
 public:
  // maps[a-1] is the indifference-payment map of real object a.
  explicit Preference(std::vector<PwlBijection> maps);

  int object_count() const { return static_cast<int>(maps_.size()); }

  // Null-equivalent of paying `pay` for `object` (identity for the null).
  Rat to_null(ObjectId object, const Rat& pay) const;
  // Payment on `object` indifferent to paying `u` for the null object.
  Rat from_null(ObjectId object, const Rat& u) const;

  // The unique payment making `target` indifferent to `anchor`.
  Rat valuation(ObjectId target, const Bundle& anchor) const;

  // Order of x against y; tolerance widens the indifference band (used by
  // the epsilon mode only; exact mode passes 0).
  Order compare(const Bundle& x, const Bundle& y, const Rat& tol = 0) const;

  const PwlBijection& map(ObjectId object) const;

  // Structural equality of canonical breakpoint lists; decides R_i = R_j.
  friend bool operator==(const Preference&, const Preference&) = default;

  // True iff every map is a pure shift (single canonical breakpoint), i.e.
  // the preference admits a valuation function v with utility v(a) - t.
  bool is_quasilinear() const;
  // Valuations at (0,0); for quasilinear preferences this is v itself.
  std::vector<Rat> zero_valuations() const;

  // Restriction to the objects `keep` (in their given order, reindexed
  // 1..keep.size()); used for subeconomies.
  Preference restricted_to(const std::vector<ObjectId>& keep) const;

 private:
  std::vector<PwlBijection> maps_;
};

// v(a) > 0 per real object; the map of a is t0 + v(a).
Preference make_quasilinear(const std::vector<Rat>& values);

// Optional knobs for make_favoring. `depth` is how far below the null line
// the favored indifference vector sits; `off_value` is the payment the
// other objects take on that vector (must be negative and above -depth).
struct FavoringMargins {
  Rat depth = 1;
  Rat off_value = Rat(-1, 2);
};

// Preference demanding exactly {target} at the price vector with
// p_target = threshold and every other price 0. Every other object's
// valuation at (target, threshold) is negative.
Preference make_favoring(int object_count, ObjectId target, const Rat& threshold,
                         const FavoringMargins& margins = {});

// Favoring preference for `held` = (held_object, held_transfer) that also
// caps the held object's (0,0)-valuation below `cap`, pushes next_object's
// valuation above `ceiling` (from (0,0) and from every other object's free
// bundle), and keeps the remaining objects' (0,0)-valuations below
// `ceiling`. Used to convert one agent per object in the profile sequence.
Preference make_conversion_preference(int object_count, ObjectId held_object,
                                      const Rat& held_transfer, ObjectId next_object,
                                      const Rat& cap, const Rat& ceiling);

// Witness of domain richness: demands exactly {target} at p_hat (where only
// target is positively priced) and exactly {0} at p (componentwise above
// p_hat on real objects).
Preference make_rich_witness(ObjectId target, const std::vector<Rat>& p_hat,
                             const std::vector<Rat>& p);

}  // namespace walras
