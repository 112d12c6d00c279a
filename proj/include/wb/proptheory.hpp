#pragma once

// Propositional literal theories U_d = {p_n : n in B} + {not p_n : n in C}
// over countably many variables.

#include "wb/machine.hpp"
#include "wb/nat.hpp"
#include "wb/resets.hpp"
#include "wb/tristate.hpp"

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wb::proptheory {

class PropFormula {
 public:
  enum class Kind { Atom, Not, And, Or, Implies };

  static PropFormula atom(Nat n);
  static PropFormula negation(PropFormula a);
  static PropFormula conjunction(PropFormula a, PropFormula b);
  static PropFormula disjunction(PropFormula a, PropFormula b);
  static PropFormula implication(PropFormula a, PropFormula b);

  Kind kind() const;
  /// Variable index for atoms.
  const Nat& index() const;
  const PropFormula& child(std::size_t i = 0) const;

  std::set<Nat> support() const;
  bool evaluate(const std::map<Nat, bool>& valuation) const;

  bool operator==(const PropFormula& other) const;

  struct Node;

 private:
  explicit PropFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// `p3`, `(not f)`, `(and f f ...)`, `(or f f ...)`, `(-> f f)`.
/// Throws folog::ParseError.
PropFormula parse_prop(std::string_view text);
std::string print(const PropFormula& f);

struct UDecision {
  TriState verdict;
  std::map<Nat, bool> pins;
};

/// Pins each support variable from the oracles (B first), then checks all
/// completions.
UDecision u_decide(const PropFormula& f, const resets::OracleHandle& oracle_b, const resets::OracleHandle& oracle_c);

/// Literal theorems of U_d certified within fuel: p_n for listed n in B,
/// then not p_n for listed n in C.
std::vector<PropFormula> u_enumerate(const Nat& iB, const Nat& iC, machine::Fuel fuel);

using TheoremEnumerator = std::function<std::vector<PropFormula>(machine::Fuel)>;

struct Undecided {
  Nat n;
};
struct AllDecided {};
using ProbeResult = std::variant<Undecided, AllDecided>;

/// Least n <= bound with neither p_n nor not p_n among the enumerated theorems.
ProbeResult incompleteness_probe(const TheoremEnumerator& extension, std::uint64_t bound, machine::Fuel fuel);

/// x in W_e via D = {n : S proves p_n}. The reduction runs D's index on
/// <x, d_index>, so the caller supplies an index of D alongside its decider.
resets::ReductionResult persistence_reduction(const Nat& e, const Nat& d_index, const resets::OracleHandle& s_decider,
                                              const Nat& x, machine::Fuel fuel);

}  // namespace wb::proptheory
