#include "wb/translate.hpp"

namespace wb::folog {

namespace {

std::vector<std::string> indexed(const std::string& prefix, unsigned from, unsigned to) {
  std::vector<std::string> out;
  for (unsigned i = from; i < to; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::vector<Term> as_terms(const std::vector<std::string>& names) {
  std::vector<Term> out;
  for (const auto& n : names) out.push_back(Term::var(n));
  return out;
}

FormulaLambda lambda(std::vector<std::string> params, Formula body) {
  return FormulaLambda{std::move(params), std::move(body)};
}

class Translator {
 public:
  Translator(const Translation& t, std::set<std::string> taken) : t_(t), taken_(std::move(taken)) {}

  std::optional<Formula> guard(const std::string& v) const {
    if (!t_.domain) return std::nullopt;
    return t_.domain->apply({Term::var(v)});
  }

  Formula equal(const std::string& a, const std::string& b) const {
    if (!t_.equality) return Formula::equal(Term::var(a), Term::var(b));
    return t_.equality->apply({Term::var(a), Term::var(b)});
  }

  Formula graph(const std::string& fn, std::vector<std::string> args, const std::string& y) const {
    args.push_back(y);
    return t_.functions.at(fn).apply(as_terms(args));
  }

  Formula run(const Formula& f) {
    switch (f.kind()) {
      case Kind::Eq:
      case Kind::Rel:
        return atom(f);
      case Kind::Not:
        return Formula::negation(run(f.child()));
      case Kind::And:
        return Formula::conjunction(run(f.child(0)), run(f.child(1)));
      case Kind::Or:
        return Formula::disjunction(run(f.child(0)), run(f.child(1)));
      case Kind::Implies:
        return Formula::implication(run(f.child(0)), run(f.child(1)));
      case Kind::Forall: {
        Formula body = run(f.child());
        if (auto g = guard(f.symbol())) body = Formula::implication(*g, body);
        return Formula::forall(f.symbol(), body);
      }
      case Kind::Exists: {
        Formula body = run(f.child());
        if (auto g = guard(f.symbol())) body = Formula::conjunction(*g, body);
        return Formula::exists(f.symbol(), body);
      }
    }
    throw std::logic_error("unreachable");
  }

 private:
  static bool flat_application(const Term& t) {
    if (t.variable) return false;
    for (const auto& a : t.args)
      if (!a.variable) return false;
    return true;
  }

  static std::vector<std::string> arg_names(const Term& t) {
    std::vector<std::string> out;
    for (const auto& a : t.args) out.push_back(a.symbol);
    return out;
  }

  std::string flatten(const Term& t, std::vector<std::string>& introduced, std::vector<Formula>& conditions) {
    if (t.variable) return t.symbol;
    std::vector<std::string> args;
    for (const auto& a : t.args) args.push_back(flatten(a, introduced, conditions));
    std::string y = fresh_name("w", taken_);
    taken_.insert(y);
    introduced.push_back(y);
    conditions.push_back(graph(t.symbol, args, y));
    return y;
  }

  Formula atom(const Formula& f) {
    if (f.kind() == Kind::Eq) {
      const Term& a = f.terms()[0];
      const Term& b = f.terms()[1];
      // F(x..) = y goes straight to the graph.
      if (flat_application(a) && b.variable) return graph(a.symbol, arg_names(a), b.symbol);
      if (flat_application(b) && a.variable) return graph(b.symbol, arg_names(b), a.symbol);
    }
    std::vector<std::string> introduced;
    std::vector<Formula> conditions;
    std::vector<std::string> vars;
    for (const auto& t : f.terms()) vars.push_back(flatten(t, introduced, conditions));
    Formula core = f.kind() == Kind::Eq ? equal(vars[0], vars[1]) : t_.relations.at(f.symbol()).apply(as_terms(vars));
    if (introduced.empty()) return core;
    std::vector<Formula> parts;
    for (const auto& y : introduced)
      if (auto g = guard(y)) parts.push_back(*g);
    parts.insert(parts.end(), conditions.begin(), conditions.end());
    parts.push_back(core);
    return exists_all(introduced, conjoin(parts));
  }

  const Translation& t_;
  std::set<std::string> taken_;
};

Formula guarded_forall(const Translator& tr, const std::vector<std::string>& vars, Formula body) {
  std::vector<Formula> guards;
  for (const auto& v : vars)
    if (auto g = tr.guard(v)) guards.push_back(*g);
  if (!guards.empty()) body = Formula::implication(conjoin(guards), body);
  return forall_all(vars, body);
}

}  // namespace

Translation Translation::identity(const Signature& sig) {
  Translation t;
  t.source = sig;
  t.target = sig;
  for (const auto& [name, arity] : sig.relations()) {
    auto xs = indexed("x", 0, arity);
    t.relations.emplace(name, lambda(xs, Formula::relation(name, as_terms(xs))));
  }
  for (const auto& [name, arity] : sig.functions()) {
    auto xs = indexed("x", 0, arity);
    auto params = xs;
    params.push_back("y");
    t.functions.emplace(name, lambda(params, Formula::equal(Term::app(name, as_terms(xs)), Term::var("y"))));
  }
  return t;
}

void Translation::validate() const {
  auto check = [this](const FormulaLambda& l, std::size_t arity, const std::string& what) {
    if (l.params.size() != arity)
      throw SignatureError(what + ": expected " + std::to_string(arity) + " parameters");
    check_formula(l.body, target);
    std::set<std::string> params(l.params.begin(), l.params.end());
    for (const auto& v : free_variables(l.body))
      if (!params.count(v)) throw SignatureError(what + ": stray free variable '" + v + "'");
  };
  if (domain) check(*domain, 1, "domain");
  if (equality) check(*equality, 2, "equality");
  for (const auto& [name, arity] : source.relations()) {
    auto it = relations.find(name);
    if (it == relations.end()) throw SignatureError("relation '" + name + "' is not translated");
    check(it->second, arity, name);
  }
  for (const auto& [name, arity] : source.functions()) {
    auto it = functions.find(name);
    if (it == functions.end()) throw SignatureError("function '" + name + "' is not translated");
    check(it->second, arity + 1, name);
  }
}

Formula translate(const Formula& f, const Translation& t) {
  check_formula(f, t.source);
  Translator tr(t, all_variables(f));
  Formula core = tr.run(f);
  std::vector<Formula> guards;
  for (const auto& v : free_variables(f))
    if (auto g = tr.guard(v)) guards.push_back(*g);
  if (guards.empty()) return core;
  return Formula::implication(conjoin(guards), core);
}

std::vector<Formula> equality_axioms(const Signature& sig) {
  Term x = Term::var("x"), y = Term::var("y"), z = Term::var("z");
  std::vector<Formula> out{
      Formula::forall("x", Formula::equal(x, x)),
      forall_all({"x", "y"}, Formula::implication(Formula::equal(x, y), Formula::equal(y, x))),
      forall_all({"x", "y", "z"}, Formula::implication(Formula::conjunction(Formula::equal(x, y), Formula::equal(y, z)),
                                                       Formula::equal(x, z))),
  };
  auto congruence = [&](unsigned arity, auto&& conclusion) {
    auto as = indexed("a", 1, arity + 1);
    auto bs = indexed("b", 1, arity + 1);
    std::vector<Formula> same;
    for (unsigned i = 0; i < arity; ++i) same.push_back(Formula::equal(Term::var(as[i]), Term::var(bs[i])));
    auto vars = as;
    vars.insert(vars.end(), bs.begin(), bs.end());
    out.push_back(forall_all(vars, conclusion(conjoin(same), as_terms(as), as_terms(bs))));
  };
  for (const auto& [name, arity] : sig.relations()) {
    if (arity == 0) continue;
    congruence(arity, [&](Formula same, std::vector<Term> as, std::vector<Term> bs) {
      return Formula::implication(Formula::conjunction(same, Formula::relation(name, as)), Formula::relation(name, bs));
    });
  }
  for (const auto& [name, arity] : sig.functions()) {
    if (arity == 0) continue;
    congruence(arity, [&](Formula same, std::vector<Term> as, std::vector<Term> bs) {
      return Formula::implication(same, Formula::equal(Term::app(name, as), Term::app(name, bs)));
    });
  }
  return out;
}

std::vector<Formula> interpretation_obligations(const std::vector<Formula>& axioms, const Translation& t) {
  Translator tr(t, {});
  std::vector<Formula> out;
  out.push_back(Formula::exists("x0", tr.guard("x0").value_or(verum("x0"))));
  for (const auto& [name, arity] : t.source.functions()) {
    auto xs = indexed("x", 0, arity);
    Formula image = tr.graph(name, xs, "y");
    if (auto g = tr.guard("y")) image = Formula::conjunction(*g, image);
    out.push_back(guarded_forall(tr, xs, Formula::exists("y", image)));
    auto vars = xs;
    vars.push_back("y");
    vars.push_back("z");
    Formula both = Formula::conjunction(tr.graph(name, xs, "y"), tr.graph(name, xs, "z"));
    out.push_back(guarded_forall(tr, vars, Formula::implication(both, tr.equal("y", "z"))));
  }
  for (const auto& ax : equality_axioms(t.source)) out.push_back(translate(ax, t));
  for (const auto& ax : axioms) out.push_back(translate(ax, t));
  return out;
}

}  // namespace wb::folog
