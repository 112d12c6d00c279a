#include "wb/calculus.hpp"

#include "wb/decode.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace wb::calculus {

using folog::Kind;

namespace {

void key_term(std::string& out, const Term& t) {
  out += t.variable ? 'v' : 'f';
  out += t.symbol;
  out += '\0';
  if (t.variable) return;
  out += static_cast<char>(t.args.size());
  for (const auto& a : t.args) key_term(out, a);
}

void key_formula(std::string& out, const Formula& f) {
  out += static_cast<char>('0' + static_cast<int>(f.kind()));
  switch (f.kind()) {
    case Kind::Eq:
    case Kind::Rel:
      out += f.symbol();
      out += '\0';
      out += static_cast<char>(f.terms().size());
      for (const auto& t : f.terms()) key_term(out, t);
      return;
    case Kind::Forall:
    case Kind::Exists:
      out += f.symbol();
      out += '\0';
      key_formula(out, f.child());
      return;
    default:
      for (std::size_t i = 0; i < f.child_count(); ++i) key_formula(out, f.child(i));
  }
}

std::string key(const Formula& f) {
  std::string out;
  key_formula(out, f);
  return out;
}

// --- A1 ----------------------------------------------------------------------

void collect_primes(const Formula& f, std::map<std::string, std::size_t>& primes) {
  switch (f.kind()) {
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      for (std::size_t i = 0; i < f.child_count(); ++i) collect_primes(f.child(i), primes);
      return;
    default:
      primes.emplace(key(f), primes.size());
  }
}

bool truth(const Formula& f, const std::map<std::string, std::size_t>& primes, std::uint64_t row) {
  switch (f.kind()) {
    case Kind::Not: return !truth(f.child(), primes, row);
    case Kind::And: return truth(f.child(0), primes, row) && truth(f.child(1), primes, row);
    case Kind::Or: return truth(f.child(0), primes, row) || truth(f.child(1), primes, row);
    case Kind::Implies: return !truth(f.child(0), primes, row) || truth(f.child(1), primes, row);
    default: return row >> primes.at(key(f)) & 1;
  }
}

constexpr std::size_t kMaxPrimes = 20;

// --- A2 / A9 matching ---------------------------------------------------------

// Does `b` equal `a` with every free x replaced by one term t that is
// substitutable? `t` is fixed at the first free occurrence.
class InstanceMatcher {
 public:
  explicit InstanceMatcher(std::string x) : x_(std::move(x)) {}

  bool formula(const Formula& a, const Formula& b) {
    if (a.kind() != b.kind() || a.symbol() != b.symbol() || a.child_count() != b.child_count()) return false;
    if (a.is_atomic()) {
      if (a.terms().size() != b.terms().size()) return false;
      for (std::size_t i = 0; i < a.terms().size(); ++i)
        if (!term(a.terms()[i], b.terms()[i])) return false;
      return true;
    }
    if (a.is_quantifier()) {
      if (a.symbol() == x_) return a == b;
      bound_.push_back(a.symbol());
      bool ok = formula(a.child(), b.child());
      bound_.pop_back();
      return ok;
    }
    for (std::size_t i = 0; i < a.child_count(); ++i)
      if (!formula(a.child(i), b.child(i))) return false;
    return true;
  }

 private:
  bool term(const Term& a, const Term& b) {
    if (a.variable && a.symbol == x_) {
      if (!t_) t_ = b;
      if (!(*t_ == b)) return false;
      for (const auto& v : folog::term_variables(b))
        if (std::find(bound_.begin(), bound_.end(), v) != bound_.end()) return false;
      return true;
    }
    if (a.variable != b.variable || a.symbol != b.symbol || a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
      if (!term(a.args[i], b.args[i])) return false;
    return true;
  }

  std::string x_;
  std::vector<std::string> bound_;
  std::optional<Term> t_;
};

bool is_instance(const Formula& body, const std::string& x, const Formula& candidate) {
  return InstanceMatcher(x).formula(body, candidate);
}

// --- A6 -----------------------------------------------------------------------

bool replaces(const Term& a, const Term& b, const std::string& x, const std::string& y) {
  if (a == b) return true;
  if (a.variable && b.variable) return a.symbol == x && b.symbol == y;
  if (a.variable || b.variable || a.symbol != b.symbol || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!replaces(a.args[i], b.args[i], x, y)) return false;
  return true;
}

bool var_term(const Term& t) { return t.variable; }

Formula imp(Formula a, Formula b) { return Formula::implication(std::move(a), std::move(b)); }
Formula neg(Formula a) { return Formula::negation(std::move(a)); }

bool substitutable_rec(const Formula& f, const std::string& x, const std::set<std::string>& tv,
                       std::vector<std::string>& bound) {
  if (f.is_atomic()) {
    for (const auto& t : f.terms())
      if (folog::term_variables(t).count(x))
        for (const auto& b : bound)
          if (tv.count(b)) return false;
    return true;
  }
  if (f.is_quantifier()) {
    if (f.symbol() == x) return true;
    bound.push_back(f.symbol());
    bool ok = substitutable_rec(f.child(), x, tv, bound);
    bound.pop_back();
    return ok;
  }
  for (std::size_t i = 0; i < f.child_count(); ++i)
    if (!substitutable_rec(f.child(i), x, tv, bound)) return false;
  return true;
}

}  // namespace

bool is_tautology(const Formula& f) {
  std::map<std::string, std::size_t> primes;
  collect_primes(f, primes);
  if (primes.size() > kMaxPrimes) return false;
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << primes.size()); ++row)
    if (!truth(f, primes, row)) return false;
  return true;
}

bool substitutable(const Formula& f, const std::string& x, const Term& t) {
  std::vector<std::string> bound;
  return substitutable_rec(f, x, folog::term_variables(t), bound);
}

std::vector<std::string> axiom_schemes(const Formula& f) {
  std::vector<std::string> out;
  if (f.kind() == Kind::Eq && var_term(f.terms()[0]) && f.terms()[0] == f.terms()[1]) out.push_back("A5");
  if (is_tautology(f)) out.push_back("A1");
  if (f.kind() != Kind::Implies) return out;
  const Formula& l = f.child(0);
  const Formula& r = f.child(1);
  if (l.kind() == Kind::Forall && is_instance(l.child(), l.symbol(), r)) out.push_back("A2");
  if (l.kind() == Kind::Forall && l.child().kind() == Kind::Implies && r.kind() == Kind::Implies &&
      r.child(0).kind() == Kind::Forall && r.child(1).kind() == Kind::Forall && r.child(0).symbol() == l.symbol() &&
      r.child(1).symbol() == l.symbol() && r.child(0).child() == l.child().child(0) &&
      r.child(1).child() == l.child().child(1))
    out.push_back("A3");
  if (r.kind() == Kind::Forall && r.child() == l && !folog::free_variables(l).count(r.symbol())) out.push_back("A4");
  if (l.kind() == Kind::Eq && var_term(l.terms()[0]) && var_term(l.terms()[1]) && r.kind() == Kind::Implies &&
      r.child(0).is_atomic() && r.child(1).is_atomic()) {
    const Formula& a = r.child(0);
    const Formula& b = r.child(1);
    if (a.kind() == b.kind() && a.symbol() == b.symbol() && a.terms().size() == b.terms().size()) {
      bool ok = true;
      for (std::size_t i = 0; i < a.terms().size() && ok; ++i)
        ok = replaces(a.terms()[i], b.terms()[i], l.terms()[0].symbol, l.terms()[1].symbol);
      if (ok) out.push_back("A6");
    }
  }
  if (l.kind() == Kind::Exists && r.kind() == Kind::Not && r.child().kind() == Kind::Forall &&
      r.child().symbol() == l.symbol() && r.child().child().kind() == Kind::Not && r.child().child().child() == l.child())
    out.push_back("A7");
  if (r.kind() == Kind::Exists && l.kind() == Kind::Not && l.child().kind() == Kind::Forall &&
      l.child().symbol() == r.symbol() && l.child().child().kind() == Kind::Not && l.child().child().child() == r.child())
    out.push_back("A8");
  if (r.kind() == Kind::Exists && is_instance(r.child(), r.symbol(), l)) out.push_back("A9");
  return out;
}

std::optional<std::string> logical_axiom_scheme(const Formula& f) {
  auto all = axiom_schemes(f);
  if (all.empty()) return std::nullopt;
  return all.front();
}

bool check_proof_log(const ProofLog& log, const std::vector<Formula>& premises) {
  if (log.steps.empty()) return false;
  for (std::size_t k = 0; k < log.steps.size(); ++k) {
    const auto& s = log.steps[k];
    for (auto r : s.refs)
      if (r >= k) return false;
    switch (s.rule) {
      case Rule::Premise:
        if (std::find(premises.begin(), premises.end(), s.formula) == premises.end()) return false;
        break;
      case Rule::Axiom: {
        auto all = axiom_schemes(s.formula);
        if (std::find(all.begin(), all.end(), s.scheme) == all.end()) return false;
        break;
      }
      case Rule::ModusPonens: {
        if (s.refs.size() != 2) return false;
        const Formula& a = log.steps[s.refs[0]].formula;
        const Formula& i = log.steps[s.refs[1]].formula;
        if (i.kind() != Kind::Implies || i.child(0) != a || i.child(1) != s.formula) return false;
        break;
      }
      case Rule::Generalisation:
        if (s.refs.size() != 1 || s.formula.kind() != Kind::Forall ||
            s.formula.child() != log.steps[s.refs[0]].formula)
          return false;
        break;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Prover

namespace {
const std::vector<std::string> kScope = {"x0", "x1"};
}

Prover::Prover(folog::Signature sig, PremiseStream premises) : sig_(std::move(sig)), premises_(std::move(premises)) {}

void Prover::propose(Formula f, Rule rule, std::string scheme, std::vector<std::size_t> refs) {
  queue_.push_back(Entry{std::move(f), rule, std::move(scheme), std::move(refs)});
}

void Prover::insert(Entry e) {
  std::string k = key(e.formula);
  if (ids_.count(k)) return;
  std::size_t id = formulas_.size();
  ids_.emplace(k, id);
  formulas_.push_back(e);
  const Formula& f = formulas_.back().formula;
  auto free = folog::free_variables(f);
  if (free.empty()) sentences_.push_back(id);
  if (f.kind() == Kind::Implies) {
    std::string ka = key(f.child(0));
    if (auto it = ids_.find(ka); it != ids_.end()) propose(f.child(1), Rule::ModusPonens, {}, {it->second, id});
    waiting_[ka].push_back(id);
  }
  if (auto it = waiting_.find(k); it != waiting_.end())
    for (auto impl : it->second)
      if (impl != id) propose(formulas_[impl].formula.child(1), Rule::ModusPonens, {}, {id, impl});
  for (const auto& v : free) propose(Formula::forall(v, f), Rule::Generalisation, {}, {id});
}

void Prover::drain(std::uint64_t cap) {
  while (!queue_.empty() && formulas_.size() < cap) {
    Entry e = std::move(queue_.front());
    queue_.pop_front();
    insert(std::move(e));
  }
}

Formula Prover::item(const Nat& code) const {
  if (code % 2 == 0) {
    Nat idx = code / 2;
    if (idx < premises_seen_.size()) return premises_seen_[static_cast<std::size_t>(idx)];
    return folog::decode_formula(idx, sig_, kScope);
  }
  return folog::decode_formula((code - 1) / 2, sig_, kScope);
}

void Prover::instantiate(const Formula& a, const Formula& b, const Formula& c, const std::string& x,
                         const std::string& y, const Term& t) {
  auto taut = [this](Formula f) {
    if (is_tautology(f)) propose(std::move(f), Rule::Axiom, "A1");
  };
  taut(imp(a, imp(b, a)));
  taut(imp(imp(a, imp(b, c)), imp(imp(a, b), imp(a, c))));
  taut(imp(a, imp(b, Formula::conjunction(a, b))));
  taut(imp(Formula::conjunction(a, b), a));
  taut(imp(Formula::conjunction(a, b), b));
  taut(imp(a, Formula::disjunction(a, b)));
  taut(imp(b, Formula::disjunction(a, b)));
  taut(imp(imp(a, c), imp(imp(b, c), imp(Formula::disjunction(a, b), c))));
  taut(imp(imp(neg(b), neg(a)), imp(a, b)));
  taut(imp(neg(neg(a)), a));
  taut(imp(a, imp(neg(a), b)));

  if (a.kind() == Kind::Forall && substitutable(a.child(), a.symbol(), t))
    propose(imp(a, folog::substitute(a.child(), a.symbol(), t)), Rule::Axiom, "A2");
  if (substitutable(a, x, t)) {
    propose(imp(Formula::forall(x, a), folog::substitute(a, x, t)), Rule::Axiom, "A2");
    propose(imp(folog::substitute(a, x, t), Formula::exists(x, a)), Rule::Axiom, "A9");
  }
  propose(imp(Formula::forall(x, imp(a, b)), imp(Formula::forall(x, a), Formula::forall(x, b))), Rule::Axiom, "A3");
  if (!folog::free_variables(a).count(x)) propose(imp(a, Formula::forall(x, a)), Rule::Axiom, "A4");
  propose(Formula::equal(Term::var(x), Term::var(x)), Rule::Axiom, "A5");
  if (a.is_atomic())
    propose(imp(Formula::equal(Term::var(x), Term::var(y)), imp(a, folog::substitute(a, x, Term::var(y)))),
            Rule::Axiom, "A6");
  propose(imp(Formula::exists(x, a), neg(Formula::forall(x, neg(a)))), Rule::Axiom, "A7");
  propose(imp(neg(Formula::forall(x, neg(a))), Formula::exists(x, a)), Rule::Axiom, "A8");
}

void Prover::stage() {
  std::uint64_t k = next_stage_++;
  if (!premises_done_) {
    if (auto p = premises_(k)) {
      premises_seen_.push_back(*p);
      propose(*p, Rule::Premise);
    } else {
      premises_done_ = true;
    }
  }
  auto parts = folog::unpair_n(Nat(k), 4);
  Formula a = item(parts[0]), b = item(parts[1]), c = item(parts[2]);
  const std::string& x = kScope[static_cast<std::size_t>(parts[3] % 2)];
  const std::string& y = kScope[static_cast<std::size_t>((parts[3] + 1) % 2)];
  Term t = *folog::decode_term(parts[3] / 2, sig_, kScope);
  instantiate(a, b, c, x, y, t);
}

void Prover::run(std::uint64_t additions) {
  while (formulas_.size() < additions) {
    drain(additions);
    if (formulas_.size() >= additions) break;
    std::size_t before = formulas_.size();
    // A stage can be entirely made of repeats; give up after many in a row.
    for (int idle = 0; queue_.empty() && idle < 100000; ++idle) {
      stage();
      drain(additions);
      if (formulas_.size() != before) break;
    }
    if (formulas_.size() == before && queue_.empty()) break;
  }
}

bool Prover::run_until(const Formula& f, std::uint64_t additions) {
  std::string k = key(f);
  while (!ids_.count(k) && formulas_.size() < additions) {
    if (queue_.empty()) stage();
    drain(formulas_.size() + 1);
  }
  return ids_.count(k) != 0;
}

std::optional<std::size_t> Prover::find(const Formula& f) const {
  auto it = ids_.find(key(f));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

ProofLog Prover::certificate(std::size_t id) const {
  std::set<std::size_t> used;
  std::vector<std::size_t> stack{id};
  while (!stack.empty()) {
    std::size_t cur = stack.back();
    stack.pop_back();
    if (!used.insert(cur).second) continue;
    for (auto r : formulas_[cur].refs) stack.push_back(r);
  }
  std::map<std::size_t, std::size_t> renumber;
  ProofLog log;
  for (auto i : used) {
    renumber[i] = log.steps.size();
    const Entry& e = formulas_[i];
    ProofStep s{e.formula, e.rule, e.scheme, {}};
    for (auto r : e.refs) s.refs.push_back(renumber.at(r));
    log.steps.push_back(std::move(s));
  }
  return log;
}

std::vector<Theorem> enum_theorems(const folog::Signature& sig, const PremiseStream& premises, machine::Fuel fuel) {
  Prover p(sig, premises);
  p.run(fuel.max_steps);
  std::vector<Theorem> out;
  for (auto id : p.sentences()) out.push_back({p.formula(id), p.certificate(id)});
  return out;
}

std::optional<ProofLog> derive(const folog::Signature& sig, const std::vector<Formula>& premises, const Formula& goal,
                               machine::Fuel fuel) {
  ProofLog log;
  if (std::find(premises.begin(), premises.end(), goal) != premises.end()) {
    log.steps.push_back({goal, Rule::Premise, {}, {}});
    return log;
  }
  if (auto scheme = logical_axiom_scheme(goal)) {
    log.steps.push_back({goal, Rule::Axiom, *scheme, {}});
    return log;
  }
  for (const auto& p : premises) {
    Formula step = imp(p, goal);
    if (auto scheme = logical_axiom_scheme(step)) {
      log.steps.push_back({p, Rule::Premise, {}, {}});
      log.steps.push_back({step, Rule::Axiom, *scheme, {}});
      log.steps.push_back({goal, Rule::ModusPonens, {}, {0, 1}});
      return log;
    }
  }
  if (goal.kind() == Kind::Forall) {
    if (auto body = derive(sig, premises, goal.child(), fuel)) {
      body->steps.push_back({goal, Rule::Generalisation, {}, {body->steps.size() - 1}});
      return body;
    }
  }
  Formula chain = goal;
  for (auto it = premises.rbegin(); it != premises.rend(); ++it) chain = imp(*it, chain);
  if (logical_axiom_scheme(chain) == std::optional<std::string>("A1")) {
    for (const auto& p : premises) log.steps.push_back({p, Rule::Premise, {}, {}});
    log.steps.push_back({chain, Rule::Axiom, "A1", {}});
    Formula rest = chain;
    for (std::size_t i = 0; i < premises.size(); ++i) {
      rest = rest.child(1);
      log.steps.push_back({rest, Rule::ModusPonens, {}, {i, log.steps.size() - 1}});
    }
    return log;
  }
  Prover p(sig, [&premises](std::uint64_t k) -> std::optional<Formula> {
    if (k < premises.size()) return premises[k];
    return std::nullopt;
  });
  if (!p.run_until(goal, fuel.max_steps)) return std::nullopt;
  return p.certificate(*p.find(goal));
}

}  // namespace wb::calculus
