#pragma once

// Sample theories used throughout: Robinson's Q, the schemes of R,
// Vaught's VS, the Janiczak theory J, and the sentences Phi_n.

#include "wb/folog.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace wb::folog {

/// {0/0, s/1, +/2, */2}
Signature signature_Q();
/// Q's signature plus the relation Le/2.
Signature signature_R();
/// {In/2}
Signature signature_VS();
/// {E/2}
Signature signature_J();

Term numeral(std::uint64_t n);

/// Q1..Q7 in order.
std::vector<Formula> axioms_Q();
/// All instances of Ax1..Ax5 with parameters <= k.
std::vector<Formula> axioms_R(std::uint64_t k);
/// Instances of Ax1..Ax5 whose largest parameter is exactly k; the union
/// over k <= K is axioms_R(K).
std::vector<Formula> axioms_R_layer(std::uint64_t k);
/// V_n: forall x0..x{n-1} exists y forall t (t In y <-> OR_i t = x_i).
Formula axioms_VS(std::uint64_t n);

/// J1: E is an equivalence relation (one sentence).
Formula axiom_J1();
/// J2(n): at most one class of size exactly n (n >= 1).
Formula axiom_J2(std::uint64_t n);
/// J3(n): at least n classes with at least n elements (n >= 1).
Formula axiom_J3(std::uint64_t n);
/// J1, then J2(m), J3(m) for m = 1..n.
std::vector<Formula> axioms_J(std::uint64_t n);
/// The J axiom stream: index 0 is J1, then J2(1), J3(1), J2(2), ...
Formula axiom_J_stream(std::uint64_t index);

/// Phi_n: some class has exactly n+1 elements. Witnesses x0..xn are pairwise
/// distinct and pairwise E-related, and every element E-related to x0 is one
/// of them. Quantifier rank n+2.
Formula phi(std::uint64_t n);
/// k if f is structurally phi(k).
std::optional<std::uint64_t> as_phi(const Formula& f);

}  // namespace wb::folog
