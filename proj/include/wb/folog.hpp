#pragma once

// First-order syntax: signatures, terms, formulas, substitution,
// relativization and the s-expression surface syntax.

#include "wb/nat.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wb::folog {

/// Relation and function symbols with arities. In the textual header a
/// name starting with an uppercase letter is a relation, anything else a
/// function; 0-ary relations are the propositional symbols.
class Signature {
 public:
  void add_relation(const std::string& name, unsigned arity);
  void add_function(const std::string& name, unsigned arity);

  bool has_relation(const std::string& name) const { return relations_.count(name) != 0; }
  bool has_function(const std::string& name) const { return functions_.count(name) != 0; }
  unsigned relation_arity(const std::string& name) const;
  unsigned function_arity(const std::string& name) const;

  const std::map<std::string, unsigned>& relations() const { return relations_; }
  const std::map<std::string, unsigned>& functions() const { return functions_; }
  std::vector<std::string> propositional() const;

  /// `sig R/2 f/1 c/0`
  std::string header() const;
  static Signature parse_header(std::string_view line);

  bool operator==(const Signature&) const = default;

 private:
  std::map<std::string, unsigned> relations_;
  std::map<std::string, unsigned> functions_;
};

struct Term {
  std::string symbol;
  std::vector<Term> args;
  bool variable = true;

  static Term var(std::string name) { return Term{std::move(name), {}, true}; }
  static Term app(std::string fn, std::vector<Term> args = {}) { return Term{std::move(fn), std::move(args), false}; }

  bool operator==(const Term&) const = default;
};

enum class Kind : std::uint8_t { Eq, Rel, Not, And, Or, Implies, Forall, Exists };

/// Immutable formula tree with shared subterms.
class Formula {
 public:
  static Formula equal(Term a, Term b);
  static Formula relation(std::string name, std::vector<Term> args = {});
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  Kind kind() const;
  /// Relation name for Rel, bound variable for quantifiers, empty otherwise.
  const std::string& symbol() const;
  const std::vector<Term>& terms() const;
  const Formula& child(std::size_t i = 0) const;
  std::size_t child_count() const;

  bool is_atomic() const { return kind() == Kind::Eq || kind() == Kind::Rel; }
  bool is_quantifier() const { return kind() == Kind::Forall || kind() == Kind::Exists; }
  bool is_binary() const { return kind() == Kind::And || kind() == Kind::Or || kind() == Kind::Implies; }

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

  struct Node;

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at offset " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

struct SignatureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Builders. Empty lists are rejected.
Formula conjoin(const std::vector<Formula>& parts);
Formula disjoin(const std::vector<Formula>& parts);
Formula iff(const Formula& a, const Formula& b);
Formula forall_all(const std::vector<std::string>& vars, Formula body);
Formula exists_all(const std::vector<std::string>& vars, Formula body);
/// `v = v` and its negation; the closest things to true/false in the grammar.
Formula verum(const std::string& var);
Formula falsum(const std::string& var);

std::set<std::string> free_variables(const Formula& f);
std::set<std::string> term_variables(const Term& t);
/// Every variable name occurring anywhere, bound or free.
std::set<std::string> all_variables(const Formula& f);
bool is_sentence(const Formula& f);
unsigned quantifier_rank(const Formula& f);
std::size_t formula_size(const Formula& f);

/// Symbols used, checked against a signature (arity and kind).
void check_formula(const Formula& f, const Signature& sig);
bool well_formed(const Formula& f, const Signature& sig);

/// A name not in `taken`, derived from `base`.
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

/// Capture-avoiding substitution of free occurrences.
Formula substitute(const Formula& f, const std::string& var, const Term& t);
Formula substitute(const Formula& f, const std::map<std::string, Term>& sub);
Term substitute_term(const Term& t, const std::map<std::string, Term>& sub);

/// Formula with designated parameter variables, e.g. a domain formula
/// delta(x) or a symbol interpretation R_I(x0,...,xk).
struct FormulaLambda {
  std::vector<std::string> params;
  Formula body;

  /// body[params := args], capture-avoiding and simultaneous.
  Formula apply(const std::vector<Term>& args) const;
};

/// Bound every quantifier by the unary guard: forall x.p becomes
/// forall x (guard(x) -> p'), exists x.p becomes exists x (guard(x) & p').
Formula relativize(const Formula& f, const FormulaLambda& guard);

/// Rename every relation/function symbol through `rename`; = is kept.
Formula rename_symbols(const Formula& f, const std::map<std::string, std::string>& rename);

std::string print(const Formula& f);
std::string print(const Term& t);

/// s-expression grammar:
///   formula := (forall v f) | (exists v f) | (-> f f) | (and f f) | (or f f)
///            | (not f) | (= t t) | (R t*) | R
///   term    := v | c | (fn t*)
/// `and`/`or` accept more than two arguments and associate to the right.
Formula parse_formula(std::string_view text, const Signature& sig);
Term parse_term(std::string_view text, const Signature& sig);

}  // namespace wb::folog
