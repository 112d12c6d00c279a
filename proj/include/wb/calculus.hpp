#pragma once

// Hilbert-style first-order calculus: logical axiom recognizers, proof
// logs with an independent checker, and a fair saturating prover.
//
// Logical axioms
//   A1  propositional tautologies (prime subformulas as letters)
//   A2  forall x a -> a[t/x], t substitutable for x in a
//   A3  forall x (a -> b) -> (forall x a -> forall x b)
//   A4  a -> forall x a, x not free in a
//   A5  x = x
//   A6  x = y -> (a -> a'), a atomic, a' replaces some x by y
//   A7  exists x a -> not forall x not a
//   A8  not forall x not a -> exists x a
//   A9  a[t/x] -> exists x a, t substitutable for x in a
// Rules: modus ponens, and generalisation over any variable (premises are
// sentences, so this is sound).

#include "wb/folog.hpp"
#include "wb/machine.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace wb::calculus {

using folog::Formula;
using folog::Term;

enum class Rule { Premise, Axiom, ModusPonens, Generalisation };

struct ProofStep {
  Formula formula;
  Rule rule;
  /// Axiom: scheme name (A1..A9). Premise: empty.
  std::string scheme;
  /// ModusPonens: {i, j} with step j = (step i -> formula). Generalisation: {i}.
  std::vector<std::size_t> refs;
};

struct ProofLog {
  std::vector<ProofStep> steps;
  const Formula& conclusion() const { return steps.back().formula; }
};

/// Every logical axiom scheme f is an instance of, in A1..A9 order.
std::vector<std::string> axiom_schemes(const Formula& f);
/// The first of them.
std::optional<std::string> logical_axiom_scheme(const Formula& f);
bool is_tautology(const Formula& f);
/// True iff no free occurrence of x in f lies under a binder of a variable of t.
bool substitutable(const Formula& f, const std::string& x, const Term& t);

/// Every step justified; premises must be in `premises` (structural
/// equality), axiom steps must name a scheme they instantiate, and
/// references point backwards.
bool check_proof_log(const ProofLog& log, const std::vector<Formula>& premises);

using PremiseStream = std::function<std::optional<Formula>(std::uint64_t)>;

struct Theorem {
  Formula sentence;
  ProofLog certificate;
};

/// Stage k adds premise k, instantiates every scheme with formulas drawn
/// from premises and from decode_formula over the signature, then closes
/// under modus ponens and generalisation. Fuel counts formula additions.
class Prover {
 public:
  Prover(folog::Signature sig, PremiseStream premises);

  /// Runs until `additions` formulas have been derived in total.
  void run(std::uint64_t additions);
  /// Runs until f is derived or the additions budget is used up.
  bool run_until(const Formula& f, std::uint64_t additions);

  std::uint64_t additions() const { return formulas_.size(); }
  /// Sentences in derivation order, without repeats.
  const std::vector<std::size_t>& sentences() const { return sentences_; }
  const Formula& formula(std::size_t id) const { return formulas_[id].formula; }
  std::optional<std::size_t> find(const Formula& f) const;
  /// Minimal log ending in formula id.
  ProofLog certificate(std::size_t id) const;
  /// Premises used so far (for check_proof_log).
  const std::vector<Formula>& premises_seen() const { return premises_seen_; }

 private:
  struct Entry {
    Formula formula;
    Rule rule;
    std::string scheme;
    std::vector<std::size_t> refs;
  };

  void stage();
  void propose(Formula f, Rule rule, std::string scheme = {}, std::vector<std::size_t> refs = {});
  void drain(std::uint64_t cap);
  void insert(Entry e);
  Formula item(const Nat& code) const;
  void instantiate(const Formula& a, const Formula& b, const Formula& c, const std::string& x, const std::string& y,
                   const Term& t);

  folog::Signature sig_;
  PremiseStream premises_;
  std::vector<Formula> premises_seen_;
  std::uint64_t next_stage_ = 0;
  bool premises_done_ = false;

  std::vector<Entry> formulas_;
  std::vector<std::size_t> sentences_;
  std::deque<Entry> queue_;
  std::unordered_map<std::string, std::size_t> ids_;
  /// Antecedent key -> implications waiting for it.
  std::unordered_map<std::string, std::vector<std::size_t>> waiting_;
};

/// Sentences derivable from the premise stream within fuel additions, each
/// with its certificate.
std::vector<Theorem> enum_theorems(const folog::Signature& sig, const PremiseStream& premises, machine::Fuel fuel);

/// Goal-directed shortcuts first: the goal is a premise or an axiom, some
/// premise -> goal is an axiom, a leading forall is generalised, or the
/// premise chain p1 -> ... -> goal is a tautology. Otherwise saturation
/// within fuel.
std::optional<ProofLog> derive(const folog::Signature& sig, const std::vector<Formula>& premises, const Formula& goal,
                               machine::Fuel fuel);

}  // namespace wb::calculus
