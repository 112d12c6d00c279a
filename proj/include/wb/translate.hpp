#pragma once

// One-dimensional, parameter-free translations between signatures and the
// obligations that make a translation an interpretation.

#include "wb/folog.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wb::folog {

struct Translation {
  Signature source;
  Signature target;
  /// delta_I(x0); nullopt is the trivial domain (no guards emitted).
  std::optional<FormulaLambda> domain;
  /// =_I(x0, x1); nullopt maps = to itself.
  std::optional<FormulaLambda> equality;
  /// R_I(x0..x{k-1}) per source relation.
  std::map<std::string, FormulaLambda> relations;
  /// F_I(x0..x{k-1}, y) per source k-ary function: the graph of F.
  std::map<std::string, FormulaLambda> functions;

  /// Symbols to themselves; functions become their graphs f(x..) = y.
  static Translation identity(const Signature& sig);

  /// Throws SignatureError when a mapped formula leaves the target
  /// signature, has the wrong parameter count, or has stray free variables.
  void validate() const;
};

/// phi^I. Function terms are flattened to F(x..) = y atoms first, atoms are
/// mapped through the translation, quantifiers are guarded by delta, and
/// the free variables of a formula are guarded by one leading implication.
Formula translate(const Formula& f, const Translation& t);

/// In order: nonemptiness of delta; for each function, totality then
/// functionality modulo =_I on delta; translated equality axioms
/// (reflexivity, symmetry, transitivity, congruence per symbol); the
/// translated axioms.
std::vector<Formula> interpretation_obligations(const std::vector<Formula>& axioms, const Translation& t);

/// Equality axioms of a signature before translation.
std::vector<Formula> equality_axioms(const Signature& sig);

}  // namespace wb::folog
