#include "wb/decode.hpp"

namespace wb::folog {

namespace {

struct Decoder {
  const Signature& sig;
  std::vector<std::string> atoms;  // scope variables, then constants
  std::vector<std::pair<std::string, unsigned>> composites;
  std::vector<std::pair<std::string, unsigned>> relations;
  std::size_t scope_size = 0;

  Decoder(const Signature& s, const std::vector<std::string>& scope) : sig(s) {
    set_scope(scope);
    for (const auto& [name, arity] : sig.functions())
      if (arity > 0) composites.emplace_back(name, arity);
    for (const auto& [name, arity] : sig.relations()) relations.emplace_back(name, arity);
  }

  void set_scope(const std::vector<std::string>& scope) {
    atoms = scope;
    scope_size = scope.size();
    for (const auto& [name, arity] : sig.functions())
      if (arity == 0) atoms.push_back(name);
  }

  bool has_terms() const { return !atoms.empty(); }

  Term atom(std::size_t i) const {
    return i < scope_size ? Term::var(atoms[i]) : Term::app(atoms[i]);
  }

  Term term(const Nat& code) const {
    if (composites.empty() || code % 2 == 0) {
      Nat half = composites.empty() ? code : code / 2;
      return atom(static_cast<std::size_t>(half % atoms.size()));
    }
    auto [fi, rest] = unpair((code - 1) / 2);
    const auto& [name, arity] = composites[static_cast<std::size_t>(fi % composites.size())];
    std::vector<Term> args;
    for (const auto& c : unpair_n(rest, arity)) args.push_back(term(c));
    return Term::app(name, std::move(args));
  }

  Formula formula(const Nat& code, std::vector<std::string>& scope) {
    unsigned kind = static_cast<unsigned>(code % 8);
    Nat payload = code / 8;
    if (kind == 1 && relations.empty()) kind = 0;
    if (kind == 1) {
      auto [ri, rest] = unpair(payload);
      const auto& [name, arity] = relations[static_cast<std::size_t>(ri % relations.size())];
      if (arity == 0) return Formula::relation(name);
      if (!has_terms()) return quantified(Kind::Forall, rest, scope);
      std::vector<Term> args;
      for (const auto& c : unpair_n(rest, arity)) args.push_back(term(c));
      return Formula::relation(name, std::move(args));
    }
    if (kind == 0) {
      if (!has_terms()) return quantified(Kind::Forall, payload, scope);
      auto [a, b] = unpair(payload);
      return Formula::equal(term(a), term(b));
    }
    if (kind == 2) return Formula::negation(formula(payload, scope));
    if (kind <= 5) {
      auto [a, b] = unpair(payload);
      Formula l = formula(a, scope);
      Formula r = formula(b, scope);
      if (kind == 3) return Formula::conjunction(l, r);
      if (kind == 4) return Formula::disjunction(l, r);
      return Formula::implication(l, r);
    }
    return quantified(kind == 6 ? Kind::Forall : Kind::Exists, payload, scope);
  }

  Formula quantified(Kind k, const Nat& body, std::vector<std::string>& scope) {
    std::string v = "v" + std::to_string(scope.size() - base_scope);
    scope.push_back(v);
    set_scope(scope);
    Formula inner = formula(body, scope);
    scope.pop_back();
    set_scope(scope);
    return k == Kind::Forall ? Formula::forall(v, inner) : Formula::exists(v, inner);
  }

  std::size_t base_scope = 0;
};

std::vector<std::string> params(unsigned n, bool with_y = false) {
  std::vector<std::string> out;
  for (unsigned i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
  if (with_y) out.push_back("y");
  return out;
}

}  // namespace

std::vector<Nat> unpair_n(const Nat& code, std::size_t k) {
  std::vector<Nat> out;
  if (k == 0) return out;
  Nat rest = code;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    auto [a, b] = unpair(rest);
    out.push_back(a);
    rest = b;
  }
  out.push_back(rest);
  return out;
}

std::optional<Term> decode_term(const Nat& code, const Signature& sig, const std::vector<std::string>& scope) {
  Decoder d(sig, scope);
  if (!d.has_terms()) return std::nullopt;
  return d.term(code);
}

Formula decode_formula(const Nat& code, const Signature& sig, const std::vector<std::string>& scope) {
  Decoder d(sig, scope);
  d.base_scope = scope.size();
  std::vector<std::string> s = scope;
  return d.formula(code, s);
}

Translation enum_translation(const Signature& source, const Signature& target, const Nat& i) {
  Translation t;
  t.source = source;
  t.target = target;
  std::size_t k = 2 + source.relations().size() + source.functions().size();
  auto codes = unpair_n(i, k);
  std::size_t at = 0;
  auto lambda = [&](std::vector<std::string> ps) {
    Formula body = decode_formula(codes[at++], target, ps);
    return FormulaLambda{std::move(ps), std::move(body)};
  };
  if (codes[at] == 0) {
    ++at;
  } else {
    codes[at] -= 1;
    t.domain = lambda(params(1));
  }
  t.equality = lambda(params(2));
  for (const auto& [name, arity] : source.relations()) t.relations.emplace(name, lambda(params(arity)));
  for (const auto& [name, arity] : source.functions()) t.functions.emplace(name, lambda(params(arity, true)));
  return t;
}

}  // namespace wb::folog
