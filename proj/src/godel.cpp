#include "wb/godel.hpp"

#include "wb/theories.hpp"

#include <stdexcept>

namespace wb::folog {

namespace {

void put_name(std::string& out, const std::string& name) {
  out += name;
  out.push_back('\0');
}

void put_term(std::string& out, const Term& t) {
  if (t.variable) {
    out.push_back('v');
    put_name(out, t.symbol);
    return;
  }
  out.push_back('f');
  put_name(out, t.symbol);
  out.push_back(static_cast<char>(t.args.size()));
  for (const auto& a : t.args) put_term(out, a);
}

void put_formula(std::string& out, const Formula& f) {
  switch (f.kind()) {
    case Kind::Eq:
      out.push_back('=');
      put_term(out, f.terms()[0]);
      put_term(out, f.terms()[1]);
      return;
    case Kind::Rel:
      out.push_back('R');
      put_name(out, f.symbol());
      out.push_back(static_cast<char>(f.terms().size()));
      for (const auto& t : f.terms()) put_term(out, t);
      return;
    case Kind::Not:
      out.push_back('N');
      put_formula(out, f.child());
      return;
    case Kind::And: out.push_back('&'); break;
    case Kind::Or: out.push_back('|'); break;
    case Kind::Implies: out.push_back('>'); break;
    case Kind::Forall:
    case Kind::Exists:
      out.push_back(f.kind() == Kind::Forall ? 'A' : 'E');
      put_name(out, f.symbol());
      put_formula(out, f.child());
      return;
  }
  put_formula(out, f.child(0));
  put_formula(out, f.child(1));
}

Nat bytes_to_nat(const std::string& bytes) {
  Nat m = 0;
  for (unsigned char c : bytes) m = m * 256 + (c + 1);
  return m;
}

std::string nat_to_bytes(Nat m) {
  std::string out;
  while (m > 0) {
    Nat d = (m - 1) % 256;
    out.push_back(static_cast<char>(static_cast<unsigned>(d)));
    m = (m - 1) / 256;
  }
  return {out.rbegin(), out.rend()};
}

struct Reader {
  const std::string& s;
  std::size_t pos = 0;

  bool at_end() const { return pos >= s.size(); }
  std::optional<char> next() {
    if (at_end()) return std::nullopt;
    return s[pos++];
  }
  std::optional<std::string> name() {
    auto end = s.find('\0', pos);
    if (end == std::string::npos || end == pos) return std::nullopt;
    std::string out = s.substr(pos, end - pos);
    pos = end + 1;
    return out;
  }
  std::optional<unsigned> arity() {
    auto c = next();
    if (!c) return std::nullopt;
    return static_cast<unsigned char>(*c);
  }

  std::optional<Term> term() {
    auto tag = next();
    if (!tag) return std::nullopt;
    auto n = name();
    if (!n) return std::nullopt;
    if (*tag == 'v') return Term::var(*n);
    if (*tag != 'f') return std::nullopt;
    auto k = arity();
    if (!k) return std::nullopt;
    std::vector<Term> args;
    for (unsigned i = 0; i < *k; ++i) {
      auto a = term();
      if (!a) return std::nullopt;
      args.push_back(std::move(*a));
    }
    return Term::app(*n, std::move(args));
  }

  std::optional<Formula> formula() {
    auto tag = next();
    if (!tag) return std::nullopt;
    switch (*tag) {
      case '=': {
        auto a = term();
        if (!a) return std::nullopt;
        auto b = term();
        if (!b) return std::nullopt;
        return Formula::equal(std::move(*a), std::move(*b));
      }
      case 'R': {
        auto n = name();
        if (!n) return std::nullopt;
        auto k = arity();
        if (!k) return std::nullopt;
        std::vector<Term> args;
        for (unsigned i = 0; i < *k; ++i) {
          auto a = term();
          if (!a) return std::nullopt;
          args.push_back(std::move(*a));
        }
        return Formula::relation(*n, std::move(args));
      }
      case 'N': {
        auto c = formula();
        if (!c) return std::nullopt;
        return Formula::negation(std::move(*c));
      }
      case '&':
      case '|':
      case '>': {
        auto a = formula();
        if (!a) return std::nullopt;
        auto b = formula();
        if (!b) return std::nullopt;
        if (*tag == '&') return Formula::conjunction(std::move(*a), std::move(*b));
        if (*tag == '|') return Formula::disjunction(std::move(*a), std::move(*b));
        return Formula::implication(std::move(*a), std::move(*b));
      }
      case 'A':
      case 'E': {
        auto v = name();
        if (!v) return std::nullopt;
        auto c = formula();
        if (!c) return std::nullopt;
        return *tag == 'A' ? Formula::forall(*v, std::move(*c)) : Formula::exists(*v, std::move(*c));
      }
      default:
        return std::nullopt;
    }
  }
};

Formula materialise_phi(const Nat& k) {
  if (k > kMaxPhiMaterialise)
    throw std::length_error("Phi_" + to_string(k) + " is too large to materialise");
  return phi(static_cast<std::uint64_t>(k));
}

}  // namespace

Nat phi_code(const Nat& n) { return 4 * n + 1; }

std::optional<Nat> phi_index_of_code(const Nat& code) {
  if (code % 4 != 1) return std::nullopt;
  return code / 4;
}

std::optional<Nat> negated_phi_index_of_code(const Nat& code) {
  if (code % 4 != 3) return std::nullopt;
  return code / 4;
}

Nat godel(const Formula& f) {
  if (auto k = as_phi(f)) return phi_code(*k);
  if (f.kind() == Kind::Not)
    if (auto k = as_phi(f.child())) return 4 * Nat(*k) + 3;
  std::string bytes;
  put_formula(bytes, f);
  return 2 * bytes_to_nat(bytes);
}

std::optional<Formula> ungodel(const Nat& n) {
  if (auto k = phi_index_of_code(n)) return materialise_phi(*k);
  if (auto k = negated_phi_index_of_code(n)) return Formula::negation(materialise_phi(*k));
  std::string bytes = nat_to_bytes(n / 2);
  Reader r{bytes};
  auto f = r.formula();
  if (!f || !r.at_end()) return std::nullopt;
  // Phi-shaped formulas own the odd codes; their even serialisation is not a code.
  if (godel(*f) != n) return std::nullopt;
  return f;
}

}  // namespace wb::folog
