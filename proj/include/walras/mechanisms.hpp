#pragma once

#include <functional>
#include <string>

#include "walras/equilibrium.hpp"

namespace walras {

// Per-agent (object, transfer) pairs produced by a mechanism at a profile.
struct MechanismOutcome {
  std::vector<Bundle> bundles;

  ObjectAllocation allocation() const;
  Rat revenue() const;
  friend bool operator==(const MechanismOutcome&, const MechanismOutcome&) = default;
};

// A deterministic map from markets to outcomes.
class Mechanism {
 public:
  Mechanism(std::string name, std::function<MechanismOutcome(const Market&)> fn)
      : name_(std::move(name)), fn_(std::move(fn)) {}

  const std::string& name() const { return name_; }
  MechanismOutcome run(const Market& market) const { return fn_(market); }

 private:
  std::string name_;
  std::function<MechanismOutcome(const Market&)> fn_;
};

// Allocation supported by the minimum Walrasian equilibrium prices; each
// agent pays the price of its object (0 for the null object).
Mechanism make_mwep(const SolveOptions& opt = {});

// Same selection at the maximum Walrasian equilibrium prices.
Mechanism make_max_wep(const SolveOptions& opt = {});

// MWEP with a constant participation fee added to every transfer.
Mechanism make_mwep_with_fee(const Rat& fee, const SolveOptions& opt = {});

// MWEP with a constant participation subsidy subtracted from every
// transfer.
Mechanism make_mwep_with_subsidy(const Rat& subsidy, const SolveOptions& opt = {});

// The favored agent takes its best free object (smallest index on ties);
// the remaining agents and objects run MWEP as a subeconomy.
Mechanism make_dictator_then_mwep(int favored_agent = 0, const SolveOptions& opt = {});

// Keeps every object and charges nothing.
Mechanism make_no_sale();

// Welfare-maximizing assignment with Clarke pivot transfers. Rejects
// non-quasilinear profiles.
Mechanism make_vcg_quasilinear();

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Registry used by the CLI and scenario files. `amount` feeds the
// fee/subsidy variants, `favored_agent` the dictator variant.
Mechanism mechanism_by_name(const std::string& name, const Rat& amount = 1,
                            int favored_agent = 0, const SolveOptions& opt = {});
std::vector<std::string> mechanism_names();

}  // namespace walras
