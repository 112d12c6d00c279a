#pragma once

// Gödel numbering of formulas.
//
//   4k+1   Phi_k
//   4k+3   not Phi_k
//   2m     any other formula, m the bijective base-256 reading of a
//          self-delimiting prefix serialisation
//
// The dedicated Phi codes keep f: n -> code(Phi_n) a constant-time map, so
// programs that consume formula codes never have to materialise Phi_n for
// large n.

#include "wb/folog.hpp"
#include "wb/nat.hpp"

#include <optional>

namespace wb::folog {

Nat godel(const Formula& f);
/// None if n is not the code of any formula. Throws std::length_error for
/// Phi codes too large to materialise (see kMaxPhiMaterialise).
std::optional<Formula> ungodel(const Nat& n);

inline constexpr std::uint64_t kMaxPhiMaterialise = 2048;

Nat phi_code(const Nat& n);
/// k when code is the code of Phi_k.
std::optional<Nat> phi_index_of_code(const Nat& code);
/// k when code is the code of not Phi_k.
std::optional<Nat> negated_phi_index_of_code(const Nat& code);

}  // namespace wb::folog
