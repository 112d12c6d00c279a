#pragma once

// Theory presentations as axiom streams, the infimum (oplus) and supremum
// (otimes) constructions, and the set transformers on sentence sets.

#include "wb/folog.hpp"
#include "wb/machine.hpp"
#include "wb/translate.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wb::theoryalg {

using folog::Formula;
using folog::Signature;

/// Axiom k, or nullopt once a finite stream is exhausted.
using AxiomStream = std::function<std::optional<Formula>(std::uint64_t)>;

struct TheoryPresentation {
  std::string name;
  Signature signature;
  AxiomStream axiom;
  /// Number of axioms when the stream is finite; nullopt for infinite streams.
  std::optional<std::uint64_t> length;

  /// Up to k leading axioms (fewer if the stream ends).
  std::vector<Formula> prefix(std::uint64_t k) const;

  static TheoryPresentation finite(std::string name, Signature sig, std::vector<Formula> axioms);
};

/// Round-robin merge: round r takes axiom r of every stream still running.
TheoryPresentation interleave(std::string name, Signature sig, std::vector<TheoryPresentation> parts);

TheoryPresentation theory_Q();
TheoryPresentation theory_R();
TheoryPresentation theory_J();
TheoryPresentation theory_VS();
/// Q, R, J or VS (case-insensitive). Throws std::invalid_argument otherwise.
TheoryPresentation scheme(std::string_view name);

/// Rename every symbol s of f to s + suffix.
Formula tag_symbols(const Formula& f, const std::string& suffix);
Signature tag_signature(const Signature& sig, const std::string& suffix);

inline const std::string kLeftTag = "_L";
inline const std::string kRightTag = "_R";
inline const std::string kSelector = "P";
inline const std::string kPart0 = "P0";
inline const std::string kPart1 = "P1";

/// A oplus B: tagged symbols plus a fresh 0-ary P; axioms P -> phi_i and
/// not P -> psi_i alternate, and the longer stream continues alone.
TheoryPresentation infimum(const TheoryPresentation& a, const TheoryPresentation& b);
/// A otimes B: tagged symbols plus unary P0, P1; the two partition axioms,
/// then A relativised to P0 and B relativised to P1, alternating.
TheoryPresentation supremum(const TheoryPresentation& a, const TheoryPresentation& b);

struct SentenceSetOracle {
  std::string label;
  std::function<bool(const Formula&)> accepts;

  bool operator()(const Formula& f) const { return accepts(f); }
};

struct SplitOracles {
  SentenceSetOracle c0;
  SentenceSetOracle c1;
};

/// C0(phi) = X(P -> phi_L), C1(psi) = X(not P -> psi_R).
SplitOracles oplus_split(const SentenceSetOracle& x);

/// Y(phi) = X(translate(phi, I)). Validates I up front.
SentenceSetOracle pullback(const SentenceSetOracle& x, const folog::Translation& i);

enum class ViolationKind { Conjunction, Deduction };
std::string to_string(ViolationKind k);

struct ClosurePass {};
struct ClosureViolation {
  ViolationKind kind;
  std::vector<Formula> witnesses;  // premises first, then the rejected sentence
};
using ClosureVerdict = std::variant<ClosurePass, ClosureViolation>;

/// Conjunction closure on accepted sample pairs, then deduction closure for
/// every accepted phi and sample psi with a derivation of psi from phi
/// found within fuel.
ClosureVerdict closure_probe(const SentenceSetOracle& x, const std::vector<Formula>& samples, machine::Fuel fuel);

/// .thy text: `sig ...` header, `scheme NAME` lines and axioms as
/// s-expressions (possibly spanning lines); `;` starts a comment. Explicit
/// axioms come first, then the schemes round-robin. Scheme symbols are
/// added to the signature. Throws folog::ParseError (offset into the text)
/// or folog::SignatureError.
TheoryPresentation parse_thy(std::string_view text, std::string name = "theory");
TheoryPresentation load_thy(const std::string& path);

}  // namespace wb::theoryalg
