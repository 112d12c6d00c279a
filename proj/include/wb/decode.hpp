#pragma once

// Total decoding of naturals into terms, formulas and translations. Every
// formula over the signature whose free variables lie in the scope is hit
// by some code, up to renaming of bound variables to v0, v1, ...

#include "wb/folog.hpp"
#include "wb/nat.hpp"
#include "wb/translate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wb::folog {

/// None only when no term exists (empty scope and no constants).
std::optional<Term> decode_term(const Nat& code, const Signature& sig, const std::vector<std::string>& scope);

/// Always a well-formed formula over sig with free variables in scope.
Formula decode_formula(const Nat& code, const Signature& sig, const std::vector<std::string>& scope);

/// tau_i: components are read by iterated unpairing in the order domain,
/// equality, relations, functions (each in name order). A domain component
/// of 0 is the trivial domain.
Translation enum_translation(const Signature& source, const Signature& target, const Nat& i);

/// k codes from one natural by iterated unpairing; the last takes the rest.
std::vector<Nat> unpair_n(const Nat& code, std::size_t k);

}  // namespace wb::folog
