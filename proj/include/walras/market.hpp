#pragma once

#include <optional>
#include <string>
#include <vector>

#include "walras/preference.hpp"

namespace walras {

// Nonnegative prices for the real objects 1..m; the null object always
// costs 0.
class PriceVector {
 public:
  explicit PriceVector(std::vector<Rat> real_prices);
  static PriceVector zero(int object_count);

  int object_count() const { return static_cast<int>(p_.size()); }
  const Rat& at(ObjectId a) const;
  void set(ObjectId a, Rat value);
  const std::vector<Rat>& real_prices() const { return p_; }

  friend bool operator==(const PriceVector&, const PriceVector&) = default;

 private:
  static const Rat kZero;
  std::vector<Rat> p_;
};

// assignment[i] is agent i's object (0 = null). Real objects appear at most
// once.
struct ObjectAllocation {
  std::vector<ObjectId> assignment;

  bool valid(int object_count) const;
  friend bool operator==(const ObjectAllocation&, const ObjectAllocation&) = default;
};

// n agents (indexed 0..n-1) and m real objects with one classical
// preference per agent. Construction requires n > m >= 1; the full model
// bounds (m >= 2) are enforced where scenarios enter the system.
class Market {
 public:
  Market(int object_count, std::vector<Preference> profile);

  int agent_count() const { return static_cast<int>(profile_.size()); }
  int object_count() const { return m_; }
  const Preference& pref(int agent) const { return profile_.at(static_cast<std::size_t>(agent)); }
  const std::vector<Preference>& profile() const { return profile_; }

  Market with_preference(int agent, Preference replacement) const;

 private:
  int m_;
  std::vector<Preference> profile_;
};

enum class ViolationKind { Overdemanded, WeaklyUnderdemanded, Underdemanded, WeaklyOverdemanded };

std::string to_string(ViolationKind kind);

// Outcome of an equilibrium-price check: ok, or a violating object set
// together with which inequality it violates.
struct Certificate {
  bool ok = false;
  std::optional<std::vector<ObjectId>> violating_set;
  std::optional<ViolationKind> kind;
};

// All objects (possibly including 0) maximizing the preference at p, sorted
// ascending. Tolerance widens the indifference band (epsilon mode).
std::vector<ObjectId> demand_set(const Preference& pref, const PriceVector& p,
                                 const Rat& tol = 0);

std::vector<std::vector<ObjectId>> demand_profile(const Market& market, const PriceVector& p,
                                                  const Rat& tol = 0);

// Inclusion-minimal set M' of real objects with more agents demanding only
// inside M' than |M'|. A maximum-matching Hall violator screens existence;
// the minimal set itself comes from the (size, lex)-ordered subset scan,
// which bounds the market to 12 objects.
std::optional<std::vector<ObjectId>> find_overdemanded(const Market& market,
                                                       const PriceVector& p,
                                                       const Rat& tol = 0);

// A positively-priced set M' with at most |M'| agents demanding any member
// (weak form), or with strictly fewer (strict form). Subset search ordered
// by (size, lexicographic); object counts above 12 are rejected.
std::optional<std::vector<ObjectId>> find_weakly_underdemanded(const Market& market,
                                                               const PriceVector& p,
                                                               const Rat& tol = 0);
std::optional<std::vector<ObjectId>> find_underdemanded(const Market& market,
                                                        const PriceVector& p,
                                                        const Rat& tol = 0);

// Nonempty M' with at least |M'| agents demanding only inside M'. Dual-side
// qualifier used by the maximum-price certificate.
std::optional<std::vector<ObjectId>> find_weakly_overdemanded(const Market& market,
                                                              const PriceVector& p,
                                                              const Rat& tol = 0);

// p is the minimum Walrasian equilibrium price vector iff no set is
// overdemanded and no set is weakly underdemanded.
Certificate certify_equilibrium(const Market& market, const PriceVector& p,
                                const Rat& tol = 0);

// p is the maximum Walrasian equilibrium price vector iff no set is
// strictly underdemanded and no set is weakly overdemanded.
Certificate certify_maximum(const Market& market, const PriceVector& p,
                            const Rat& tol = 0);

// Definitional check: every agent holds a demanded object and every
// unassigned real object has price zero.
bool is_walrasian_equilibrium(const Market& market, const ObjectAllocation& allocation,
                              const PriceVector& p, const Rat& tol = 0);

// Sequence of distinct agents starting at start_agent whose consecutive
// members share demanded objects at a minimum-price equilibrium and whose
// last member holds the null object. Exists whenever (allocation, p) is a
// certified minimum equilibrium with n > m; absence signals a
// certification bug and throws.
std::vector<int> demand_connected_sequence(const Market& market,
                                           const ObjectAllocation& allocation,
                                           const PriceVector& p, int start_agent);

}  // namespace walras
