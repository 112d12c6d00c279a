#include "wb/theoryalg.hpp"

#include "wb/calculus.hpp"
#include "wb/theories.hpp"

#include <algorithm>
#include <cctype>
#include <memory>

namespace wb::theoryalg {

namespace {

void collect_term_symbols(const folog::Term& t, Signature& sig) {
  if (t.variable) return;
  sig.add_function(t.symbol, static_cast<unsigned>(t.args.size()));
  for (const auto& a : t.args) collect_term_symbols(a, sig);
}

void collect_symbols(const Formula& f, Signature& sig) {
  if (f.kind() == folog::Kind::Rel) sig.add_relation(f.symbol(), static_cast<unsigned>(f.terms().size()));
  for (const auto& t : f.terms()) collect_term_symbols(t, sig);
  for (std::size_t i = 0; i < f.child_count(); ++i) collect_symbols(f.child(i), sig);
}

Signature signature_of(const std::vector<Formula>& fs) {
  Signature sig;
  for (const auto& f : fs) collect_symbols(f, sig);
  return sig;
}

void merge_into(Signature& into, const Signature& from) {
  for (const auto& [name, arity] : from.relations()) into.add_relation(name, arity);
  for (const auto& [name, arity] : from.functions()) into.add_function(name, arity);
}

TheoryPresentation map_axioms(const TheoryPresentation& t, std::function<Formula(const Formula&)> fn) {
  TheoryPresentation out = t;
  out.axiom = [inner = t.axiom, fn = std::move(fn)](std::uint64_t k) -> std::optional<Formula> {
    auto a = inner(k);
    if (!a) return std::nullopt;
    return fn(*a);
  };
  return out;
}

}  // namespace

std::vector<Formula> TheoryPresentation::prefix(std::uint64_t k) const {
  std::vector<Formula> out;
  for (std::uint64_t i = 0; i < k; ++i) {
    auto a = axiom(i);
    if (!a) break;
    out.push_back(std::move(*a));
  }
  return out;
}

TheoryPresentation TheoryPresentation::finite(std::string name, Signature sig, std::vector<Formula> axioms) {
  auto shared = std::make_shared<const std::vector<Formula>>(std::move(axioms));
  TheoryPresentation t;
  t.name = std::move(name);
  t.signature = std::move(sig);
  t.length = shared->size();
  t.axiom = [shared](std::uint64_t k) -> std::optional<Formula> {
    if (k >= shared->size()) return std::nullopt;
    return (*shared)[k];
  };
  return t;
}

TheoryPresentation interleave(std::string name, Signature sig, std::vector<TheoryPresentation> parts) {
  TheoryPresentation t;
  t.name = std::move(name);
  t.signature = std::move(sig);
  bool finite = std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.length.has_value(); });
  if (finite) {
    std::uint64_t n = 0;
    for (const auto& p : parts) n += *p.length;
    t.length = n;
  }
  auto shared = std::make_shared<const std::vector<TheoryPresentation>>(std::move(parts));
  t.axiom = [shared](std::uint64_t k) -> std::optional<Formula> {
    std::uint64_t rest = k;
    for (std::uint64_t round = 0;; ++round) {
      std::vector<const TheoryPresentation*> active;
      for (const auto& p : *shared)
        if (!p.length || *p.length > round) active.push_back(&p);
      if (active.empty()) return std::nullopt;
      if (rest < active.size()) return active[rest]->axiom(round);
      rest -= active.size();
    }
  };
  return t;
}

TheoryPresentation theory_Q() { return TheoryPresentation::finite("Q", folog::signature_Q(), folog::axioms_Q()); }

TheoryPresentation theory_R() {
  TheoryPresentation t;
  t.name = "R";
  t.signature = folog::signature_R();
  // Layer L holds 6L+4 axioms; layers below L hold 3L^2+L.
  t.axiom = [](std::uint64_t k) -> std::optional<Formula> {
    std::uint64_t layer = 0;
    while (3 * (layer + 1) * (layer + 1) + (layer + 1) <= k) ++layer;
    return folog::axioms_R_layer(layer).at(k - (3 * layer * layer + layer));
  };
  return t;
}

TheoryPresentation theory_J() {
  TheoryPresentation t;
  t.name = "J";
  t.signature = folog::signature_J();
  t.axiom = [](std::uint64_t k) -> std::optional<Formula> { return folog::axiom_J_stream(k); };
  return t;
}

TheoryPresentation theory_VS() {
  TheoryPresentation t;
  t.name = "VS";
  t.signature = folog::signature_VS();
  t.axiom = [](std::uint64_t k) -> std::optional<Formula> { return folog::axioms_VS(k); };
  return t;
}

TheoryPresentation scheme(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  if (up == "Q") return theory_Q();
  if (up == "R") return theory_R();
  if (up == "J") return theory_J();
  if (up == "VS") return theory_VS();
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

Formula tag_symbols(const Formula& f, const std::string& suffix) {
  Signature used;
  collect_symbols(f, used);
  std::map<std::string, std::string> rename;
  for (const auto& [name, arity] : used.relations()) rename[name] = name + suffix;
  for (const auto& [name, arity] : used.functions()) rename[name] = name + suffix;
  return folog::rename_symbols(f, rename);
}

Signature tag_signature(const Signature& sig, const std::string& suffix) {
  Signature out;
  for (const auto& [name, arity] : sig.relations()) out.add_relation(name + suffix, arity);
  for (const auto& [name, arity] : sig.functions()) out.add_function(name + suffix, arity);
  return out;
}

TheoryPresentation infimum(const TheoryPresentation& a, const TheoryPresentation& b) {
  Signature sig = tag_signature(a.signature, kLeftTag);
  merge_into(sig, tag_signature(b.signature, kRightTag));
  sig.add_relation(kSelector, 0);
  Formula p = Formula::relation(kSelector);
  auto left = map_axioms(a, [p](const Formula& f) { return Formula::implication(p, tag_symbols(f, kLeftTag)); });
  auto right = map_axioms(
      b, [p](const Formula& f) { return Formula::implication(Formula::negation(p), tag_symbols(f, kRightTag)); });
  return interleave(a.name + " (+) " + b.name, sig, {left, right});
}

TheoryPresentation supremum(const TheoryPresentation& a, const TheoryPresentation& b) {
  Signature sig = tag_signature(a.signature, kLeftTag);
  merge_into(sig, tag_signature(b.signature, kRightTag));
  sig.add_relation(kPart0, 1);
  sig.add_relation(kPart1, 1);
  auto in = [](const std::string& part) {
    return folog::FormulaLambda{{"x"}, Formula::relation(part, {folog::Term::var("x")})};
  };
  auto p0 = in(kPart0), p1 = in(kPart1);
  auto left = map_axioms(a, [p0](const Formula& f) { return folog::relativize(tag_symbols(f, kLeftTag), p0); });
  auto right = map_axioms(b, [p1](const Formula& f) { return folog::relativize(tag_symbols(f, kRightTag), p1); });
  Formula x0 = p0.body, x1 = p1.body;
  auto partition = TheoryPresentation::finite(
      "partition", sig,
      {Formula::forall("x", Formula::disjunction(x0, x1)),
       Formula::forall("x", Formula::negation(Formula::conjunction(x0, x1)))});
  auto body = interleave("", sig, {left, right});
  TheoryPresentation t;
  t.name = a.name + " (x) " + b.name;
  t.signature = sig;
  if (body.length) t.length = *body.length + 2;
  t.axiom = [partition, body](std::uint64_t k) -> std::optional<Formula> {
    return k < 2 ? partition.axiom(k) : body.axiom(k - 2);
  };
  return t;
}

SplitOracles oplus_split(const SentenceSetOracle& x) {
  Formula p = Formula::relation(kSelector);
  SentenceSetOracle c0{"(" + x.label + ")_0", [x, p](const Formula& f) {
                         return x(Formula::implication(p, tag_symbols(f, kLeftTag)));
                       }};
  SentenceSetOracle c1{"(" + x.label + ")_1", [x, p](const Formula& f) {
                         return x(Formula::implication(Formula::negation(p), tag_symbols(f, kRightTag)));
                       }};
  return {c0, c1};
}

SentenceSetOracle pullback(const SentenceSetOracle& x, const folog::Translation& i) {
  i.validate();
  return {"pullback of " + x.label, [x, i](const Formula& f) { return x(folog::translate(f, i)); }};
}

std::string to_string(ViolationKind k) { return k == ViolationKind::Conjunction ? "conjunction" : "deduction"; }

ClosureVerdict closure_probe(const SentenceSetOracle& x, const std::vector<Formula>& samples, machine::Fuel fuel) {
  std::vector<bool> accepted;
  for (const auto& s : samples) accepted.push_back(x(s));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!accepted[i]) continue;
    for (std::size_t j = i; j < samples.size(); ++j) {
      if (!accepted[j]) continue;
      Formula both = Formula::conjunction(samples[i], samples[j]);
      if (!x(both)) return ClosureViolation{ViolationKind::Conjunction, {samples[i], samples[j], both}};
    }
  }
  Signature sig = signature_of(samples);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!accepted[i]) continue;
    for (std::size_t j = 0; j < samples.size(); ++j) {
      if (accepted[j]) continue;
      if (calculus::derive(sig, {samples[i]}, samples[j], fuel))
        return ClosureViolation{ViolationKind::Deduction, {samples[i], samples[j]}};
    }
  }
  return ClosurePass{};
}

}  // namespace wb::theoryalg
