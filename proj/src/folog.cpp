#include "wb/folog.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace wb::folog {

// ---------------------------------------------------------------------------
// Signature

void Signature::add_relation(const std::string& name, unsigned arity) {
  if (name.empty() || name == "=") throw SignatureError("invalid relation name '" + name + "'");
  if (has_function(name)) throw SignatureError("symbol '" + name + "' already declared as function");
  auto [it, fresh] = relations_.emplace(name, arity);
  if (!fresh && it->second != arity) throw SignatureError("relation '" + name + "' redeclared with new arity");
}

void Signature::add_function(const std::string& name, unsigned arity) {
  if (name.empty() || name == "=") throw SignatureError("invalid function name '" + name + "'");
  if (has_relation(name)) throw SignatureError("symbol '" + name + "' already declared as relation");
  auto [it, fresh] = functions_.emplace(name, arity);
  if (!fresh && it->second != arity) throw SignatureError("function '" + name + "' redeclared with new arity");
}

unsigned Signature::relation_arity(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw SignatureError("unknown relation '" + name + "'");
  return it->second;
}

unsigned Signature::function_arity(const std::string& name) const {
  auto it = functions_.find(name);
  if (it == functions_.end()) throw SignatureError("unknown function '" + name + "'");
  return it->second;
}

std::vector<std::string> Signature::propositional() const {
  std::vector<std::string> out;
  for (const auto& [name, arity] : relations_)
    if (arity == 0) out.push_back(name);
  return out;
}

std::string Signature::header() const {
  std::string out = "sig";
  for (const auto& [name, arity] : relations_) out += " " + name + "/" + std::to_string(arity);
  for (const auto& [name, arity] : functions_) out += " " + name + "/" + std::to_string(arity);
  return out;
}

Signature Signature::parse_header(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string word;
  if (!(in >> word) || word != "sig") throw SignatureError("signature header must start with 'sig'");
  Signature sig;
  while (in >> word) {
    auto slash = word.rfind('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == word.size())
      throw SignatureError("expected name/arity, got '" + word + "'");
    std::string name = word.substr(0, slash);
    unsigned arity = 0;
    try {
      arity = static_cast<unsigned>(std::stoul(word.substr(slash + 1)));
    } catch (const std::exception&) {
      throw SignatureError("bad arity in '" + word + "'");
    }
    if (std::isupper(static_cast<unsigned char>(name[0])))
      sig.add_relation(name, arity);
    else
      sig.add_function(name, arity);
  }
  return sig;
}

// ---------------------------------------------------------------------------
// Formula nodes

struct Formula::Node {
  Kind kind;
  std::string symbol;
  std::vector<Term> terms;
  std::vector<Formula> children;
};

namespace {

const std::string kEmpty;

}  // namespace

Formula Formula::equal(Term a, Term b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Eq, {}, {std::move(a), std::move(b)}, {}}));
}
Formula Formula::relation(std::string name, std::vector<Term> args) {
  return Formula(std::make_shared<const Node>(Node{Kind::Rel, std::move(name), std::move(args), {}}));
}
Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, {}, {std::move(f)}}));
}
Formula Formula::conjunction(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::And, {}, {}, {std::move(a), std::move(b)}}));
}
Formula Formula::disjunction(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, {}, {std::move(a), std::move(b)}}));
}
Formula Formula::implication(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Implies, {}, {}, {std::move(a), std::move(b)}}));
}
Formula Formula::forall(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Kind::Forall, std::move(var), {}, {std::move(body)}}));
}
Formula Formula::exists(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Kind::Exists, std::move(var), {}, {std::move(body)}}));
}

Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::symbol() const { return node_->symbol; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }
const Formula& Formula::child(std::size_t i) const { return node_->children.at(i); }
std::size_t Formula::child_count() const { return node_->children.size(); }

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  return a.kind == b.kind && a.symbol == b.symbol && a.terms == b.terms && a.children == b.children;
}

// ---------------------------------------------------------------------------
// Builders

Formula conjoin(const std::vector<Formula>& parts) {
  if (parts.empty()) throw std::invalid_argument("conjoin: empty list");
  Formula acc = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) acc = Formula::conjunction(*it, acc);
  return acc;
}

Formula disjoin(const std::vector<Formula>& parts) {
  if (parts.empty()) throw std::invalid_argument("disjoin: empty list");
  Formula acc = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) acc = Formula::disjunction(*it, acc);
  return acc;
}

Formula iff(const Formula& a, const Formula& b) {
  return Formula::conjunction(Formula::implication(a, b), Formula::implication(b, a));
}

Formula forall_all(const std::vector<std::string>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Formula::forall(*it, body);
  return body;
}

Formula exists_all(const std::vector<std::string>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Formula::exists(*it, body);
  return body;
}

Formula verum(const std::string& var) { return Formula::equal(Term::var(var), Term::var(var)); }
Formula falsum(const std::string& var) { return Formula::negation(verum(var)); }

// ---------------------------------------------------------------------------
// Variables

namespace {

void collect_term_vars(const Term& t, std::set<std::string>& out) {
  if (t.variable) {
    out.insert(t.symbol);
    return;
  }
  for (const auto& a : t.args) collect_term_vars(a, out);
}

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  if (f.is_atomic()) {
    std::set<std::string> vs;
    for (const auto& t : f.terms()) collect_term_vars(t, vs);
    for (const auto& v : vs)
      if (!bound.count(v)) out.insert(v);
    return;
  }
  if (f.is_quantifier()) {
    bool inserted = bound.insert(f.symbol()).second;
    collect_free(f.child(), bound, out);
    if (inserted) bound.erase(f.symbol());
    return;
  }
  for (std::size_t i = 0; i < f.child_count(); ++i) collect_free(f.child(i), bound, out);
}

void collect_all(const Formula& f, std::set<std::string>& out) {
  if (f.is_atomic()) {
    for (const auto& t : f.terms()) collect_term_vars(t, out);
    return;
  }
  if (f.is_quantifier()) out.insert(f.symbol());
  for (std::size_t i = 0; i < f.child_count(); ++i) collect_all(f.child(i), out);
}

}  // namespace

std::set<std::string> term_variables(const Term& t) {
  std::set<std::string> out;
  collect_term_vars(t, out);
  return out;
}

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> all_variables(const Formula& f) {
  std::set<std::string> out;
  collect_all(f, out);
  return out;
}

bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

unsigned quantifier_rank(const Formula& f) {
  if (f.is_atomic()) return 0;
  if (f.is_quantifier()) return 1 + quantifier_rank(f.child());
  unsigned r = 0;
  for (std::size_t i = 0; i < f.child_count(); ++i) r = std::max(r, quantifier_rank(f.child(i)));
  return r;
}

std::size_t formula_size(const Formula& f) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < f.child_count(); ++i) n += formula_size(f.child(i));
  return n;
}

// ---------------------------------------------------------------------------
// Well-formedness

namespace {

void check_term(const Term& t, const Signature& sig) {
  if (t.variable) return;
  if (!sig.has_function(t.symbol)) throw SignatureError("unknown function '" + t.symbol + "'");
  unsigned arity = sig.function_arity(t.symbol);
  if (arity != t.args.size())
    throw SignatureError("function '" + t.symbol + "' expects " + std::to_string(arity) + " arguments, got " +
                         std::to_string(t.args.size()));
  for (const auto& a : t.args) check_term(a, sig);
}

}  // namespace

void check_formula(const Formula& f, const Signature& sig) {
  switch (f.kind()) {
    case Kind::Eq:
      for (const auto& t : f.terms()) check_term(t, sig);
      return;
    case Kind::Rel: {
      if (!sig.has_relation(f.symbol())) throw SignatureError("unknown relation '" + f.symbol() + "'");
      unsigned arity = sig.relation_arity(f.symbol());
      if (arity != f.terms().size())
        throw SignatureError("relation '" + f.symbol() + "' expects " + std::to_string(arity) +
                             " arguments, got " + std::to_string(f.terms().size()));
      for (const auto& t : f.terms()) check_term(t, sig);
      return;
    }
    default:
      for (std::size_t i = 0; i < f.child_count(); ++i) check_formula(f.child(i), sig);
  }
}

bool well_formed(const Formula& f, const Signature& sig) {
  try {
    check_formula(f, sig);
    return true;
  } catch (const SignatureError&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Substitution

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (std::size_t i = 1;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!taken.count(candidate)) return candidate;
  }
}

Term substitute_term(const Term& t, const std::map<std::string, Term>& sub) {
  if (t.variable) {
    auto it = sub.find(t.symbol);
    return it == sub.end() ? t : it->second;
  }
  Term out = t;
  for (auto& a : out.args) a = substitute_term(a, sub);
  return out;
}

Formula substitute(const Formula& f, const std::map<std::string, Term>& sub) {
  if (sub.empty()) return f;
  switch (f.kind()) {
    case Kind::Eq:
      return Formula::equal(substitute_term(f.terms()[0], sub), substitute_term(f.terms()[1], sub));
    case Kind::Rel: {
      std::vector<Term> args;
      args.reserve(f.terms().size());
      for (const auto& t : f.terms()) args.push_back(substitute_term(t, sub));
      return Formula::relation(f.symbol(), std::move(args));
    }
    case Kind::Not:
      return Formula::negation(substitute(f.child(), sub));
    case Kind::And:
      return Formula::conjunction(substitute(f.child(0), sub), substitute(f.child(1), sub));
    case Kind::Or:
      return Formula::disjunction(substitute(f.child(0), sub), substitute(f.child(1), sub));
    case Kind::Implies:
      return Formula::implication(substitute(f.child(0), sub), substitute(f.child(1), sub));
    case Kind::Forall:
    case Kind::Exists: {
      const std::string& v = f.symbol();
      const Formula& body = f.child();
      std::set<std::string> body_free = free_variables(body);
      std::map<std::string, Term> inner;
      std::set<std::string> incoming;
      for (const auto& [name, term] : sub) {
        if (name == v || !body_free.count(name)) continue;
        inner.emplace(name, term);
        collect_term_vars(term, incoming);
      }
      if (inner.empty()) return f;
      std::string bound = v;
      Formula new_body = body;
      if (incoming.count(v)) {
        std::set<std::string> taken = all_variables(body);
        taken.insert(incoming.begin(), incoming.end());
        for (const auto& [name, term] : inner) taken.insert(name);
        bound = fresh_name(v, taken);
        new_body = substitute(body, std::map<std::string, Term>{{v, Term::var(bound)}});
      }
      new_body = substitute(new_body, inner);
      return f.kind() == Kind::Forall ? Formula::forall(bound, new_body) : Formula::exists(bound, new_body);
    }
  }
  return f;
}

Formula substitute(const Formula& f, const std::string& var, const Term& t) {
  return substitute(f, std::map<std::string, Term>{{var, t}});
}

Formula FormulaLambda::apply(const std::vector<Term>& args) const {
  if (args.size() != params.size())
    throw std::invalid_argument("lambda expects " + std::to_string(params.size()) + " arguments");
  std::map<std::string, Term> sub;
  for (std::size_t i = 0; i < params.size(); ++i) sub.emplace(params[i], args[i]);
  return substitute(body, sub);
}

Formula relativize(const Formula& f, const FormulaLambda& guard) {
  if (guard.params.size() != 1) throw std::invalid_argument("relativize: guard must be unary");
  switch (f.kind()) {
    case Kind::Eq:
    case Kind::Rel:
      return f;
    case Kind::Not:
      return Formula::negation(relativize(f.child(), guard));
    case Kind::And:
      return Formula::conjunction(relativize(f.child(0), guard), relativize(f.child(1), guard));
    case Kind::Or:
      return Formula::disjunction(relativize(f.child(0), guard), relativize(f.child(1), guard));
    case Kind::Implies:
      return Formula::implication(relativize(f.child(0), guard), relativize(f.child(1), guard));
    case Kind::Forall:
    case Kind::Exists: {
      // The guard's own free variables (other than its parameter) must not
      // be captured by this binder.
      std::string v = f.symbol();
      Formula body = f.child();
      std::set<std::string> guard_free = free_variables(guard.body);
      guard_free.erase(guard.params[0]);
      if (guard_free.count(v)) {
        std::set<std::string> taken = all_variables(body);
        taken.insert(guard_free.begin(), guard_free.end());
        std::string nv = fresh_name(v, taken);
        body = substitute(body, v, Term::var(nv));
        v = nv;
      }
      Formula g = guard.apply({Term::var(v)});
      Formula inner = relativize(body, guard);
      return f.kind() == Kind::Forall ? Formula::forall(v, Formula::implication(g, inner))
                                      : Formula::exists(v, Formula::conjunction(g, inner));
    }
  }
  return f;
}

namespace {

Term rename_term(const Term& t, const std::map<std::string, std::string>& rename) {
  if (t.variable) return t;
  Term out = t;
  if (auto it = rename.find(t.symbol); it != rename.end()) out.symbol = it->second;
  for (auto& a : out.args) a = rename_term(a, rename);
  return out;
}

}  // namespace

Formula rename_symbols(const Formula& f, const std::map<std::string, std::string>& rename) {
  switch (f.kind()) {
    case Kind::Eq:
      return Formula::equal(rename_term(f.terms()[0], rename), rename_term(f.terms()[1], rename));
    case Kind::Rel: {
      std::vector<Term> args;
      for (const auto& t : f.terms()) args.push_back(rename_term(t, rename));
      auto it = rename.find(f.symbol());
      return Formula::relation(it == rename.end() ? f.symbol() : it->second, std::move(args));
    }
    case Kind::Not:
      return Formula::negation(rename_symbols(f.child(), rename));
    case Kind::And:
      return Formula::conjunction(rename_symbols(f.child(0), rename), rename_symbols(f.child(1), rename));
    case Kind::Or:
      return Formula::disjunction(rename_symbols(f.child(0), rename), rename_symbols(f.child(1), rename));
    case Kind::Implies:
      return Formula::implication(rename_symbols(f.child(0), rename), rename_symbols(f.child(1), rename));
    case Kind::Forall:
      return Formula::forall(f.symbol(), rename_symbols(f.child(), rename));
    case Kind::Exists:
      return Formula::exists(f.symbol(), rename_symbols(f.child(), rename));
  }
  return f;
}

}  // namespace wb::folog
