#pragma once

// The Janiczak theory J over {E/2}: finite realizations of class
// descriptors, model checking, quantifier elimination to boolean
// combinations of the Phi_n, and the decision procedures built on it.

#include "wb/folog.hpp"
#include "wb/machine.hpp"
#include "wb/nat.hpp"
#include "wb/resets.hpp"
#include "wb/tristate.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace wb::janiczak {

using folog::Formula;

/// A model of J up to rank `threshold`: one class of each exact size, plus
/// `large_classes` classes standing in for the infinite ones.
struct ClassDescriptor {
  std::set<std::uint64_t> exact_sizes;
  std::uint64_t large_classes = 0;
  std::uint64_t threshold = 0;

  /// Phi_n holds iff n+1 is an exact size (large sizes exceed threshold).
  bool profile_bit(std::uint64_t n) const { return exact_sizes.count(n + 1) != 0; }
};

/// A finite equivalence relation given by its class sizes. Elements are
/// numbered class by class in the order of class_sizes.
struct EquivalenceStructure {
  std::vector<std::uint64_t> class_sizes;

  std::uint64_t element_count() const;
  /// Class of every element, indexed by element number.
  std::vector<std::uint32_t> class_of_elements() const;
};

/// Large classes get consecutive sizes starting above
/// max(threshold, q, largest exact size). Throws std::invalid_argument when
/// threshold < q or large_classes < q.
EquivalenceStructure realize(const ClassDescriptor& d, std::uint64_t q);

/// Truth of a sentence over {E/2} in a finite equivalence structure.
/// Throws std::invalid_argument on free variables or foreign symbols.
bool eval_structure(const EquivalenceStructure& m, const Formula& sentence);
/// eval_structure on realize(d, rank(sentence)).
bool eval(const ClassDescriptor& d, const Formula& sentence);

using Pins = std::map<Nat, bool>;

/// Propositional formula over atoms Phi_n, kept as a truth table over a
/// sorted atom list. Row r gives atom atoms[i] the value of bit i of r.
class BoolCombo {
 public:
  static BoolCombo constant(bool value);
  static BoolCombo atom(const Nat& n);
  static BoolCombo from_table(std::vector<Nat> atoms, std::vector<bool> table);

  BoolCombo operator!() const;
  BoolCombo operator&&(const BoolCombo& other) const;
  BoolCombo operator||(const BoolCombo& other) const;
  BoolCombo implies(const BoolCombo& other) const;

  const std::vector<Nat>& atoms() const { return atoms_; }
  const std::vector<bool>& table() const { return table_; }

  /// Value under a complete assignment of the atoms (missing atoms false).
  bool evaluate(const Pins& values) const;
  /// Drops atoms the table does not depend on.
  BoolCombo reduced() const;
  /// Atoms the combination genuinely depends on.
  std::vector<Nat> support() const;
  /// max{s+1 : s in support}, 0 when constant.
  Nat sup_plus() const;
  std::optional<bool> constant_value() const;
  /// Satisfying profiles over the reduced support, each as the set of true atoms.
  std::vector<std::vector<Nat>> satisfying_profiles() const;

  std::string to_string() const;

  /// Equal as functions of the atoms (compared over the union support).
  bool operator==(const BoolCombo& other) const;

 private:
  BoolCombo combine(const BoolCombo& other, int op) const;
  BoolCombo expand(const std::vector<Nat>& atoms) const;

  std::vector<Nat> atoms_;
  std::vector<bool> table_;
};

/// Conjunction of +-Phi_i for i < n, sign given by bit i of j.
struct SignedConjunction {
  std::uint64_t n = 0;
  Nat j;

  Pins pins() const;
  BoolCombo combo() const;
};

/// Profile enumeration with atoms 0..cutoff-1 and padding q + cutoff + 1.
BoolCombo qe_semantic(const Formula& sentence, std::uint64_t cutoff);
/// Phi-forms become atoms, boolean structure is kept, and each maximal
/// quantified subsentence goes through qe_semantic with cutoff = its rank.
BoolCombo qe(const Formula& sentence);
/// qe of a formula code: 4k+1 and 4k+3 are literals, even codes are
/// decoded. None when the code is not a sentence over {E/2}.
std::optional<BoolCombo> qe_code(const Nat& code);

/// True iff every completion of the pins satisfies b, and so on.
TriState decide_combo(const BoolCombo& b, const Pins& pins);
TriState decide_J(const Formula& sentence);
TriState decide_J_plus(const Formula& sentence, const SignedConjunction& c);
TriState decide_J_plus(const Formula& sentence, const BoolCombo& c);

std::vector<Nat> support(const BoolCombo& b);
Nat sup_plus(const BoolCombo& b);

struct TbcDecision {
  TriState verdict;
  Pins literals_used;
};

/// Decision in T_(B,C) = J + {Phi_n : n in B} + {not Phi_n : n in C}.
TbcDecision tbc_decide(const Formula& sentence, const resets::OracleHandle& oracle_b,
                       const resets::OracleHandle& oracle_c);

/// Theorem codes of T_(B,C) certified at this fuel: literals from the
/// enumeration prefixes of iB and iC, plus the codes of the sentences
/// decode_formula(c) for c < isqrt(fuel) whose qe is forced by those
/// literals. Sorted, no repeats, monotone in fuel.
std::vector<Nat> tbc_enumerate(const Nat& iB, const Nat& iC, machine::Fuel fuel);

/// Index whose W-set is the set of theorem codes of T_(B,C).
Nat theory_index(const Nat& iB, const Nat& iC);

}  // namespace wb::janiczak
