#include "wb/theories.hpp"

namespace wb::folog {

namespace {

Term v(const std::string& name) { return Term::var(name); }
Term zero() { return Term::app("0"); }
Term succ(Term t) { return Term::app("s", {std::move(t)}); }
Term plus(Term a, Term b) { return Term::app("+", {std::move(a), std::move(b)}); }
Term times(Term a, Term b) { return Term::app("*", {std::move(a), std::move(b)}); }
Formula eq(Term a, Term b) { return Formula::equal(std::move(a), std::move(b)); }
Formula E(const std::string& a, const std::string& b) { return Formula::relation("E", {v(a), v(b)}); }
Formula neg(Formula f) { return Formula::negation(std::move(f)); }

Formula conjoin_or_verum(const std::vector<Formula>& parts, const std::string& var) {
  return parts.empty() ? verum(var) : conjoin(parts);
}

// Balanced tree, so phi(n) stays O(log n) deep although it has O(n^2) conjuncts.
Formula balanced(const std::vector<Formula>& parts, std::size_t lo, std::size_t hi, bool conj) {
  if (hi - lo == 1) return parts[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  Formula l = balanced(parts, lo, mid, conj), r = balanced(parts, mid, hi, conj);
  return conj ? Formula::conjunction(std::move(l), std::move(r)) : Formula::disjunction(std::move(l), std::move(r));
}

std::vector<std::string> names(const std::string& prefix, std::uint64_t from, std::uint64_t to) {
  std::vector<std::string> out;
  for (std::uint64_t i = from; i < to; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::vector<Formula> pairwise_distinct(const std::vector<std::string>& xs) {
  std::vector<Formula> out;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) out.push_back(neg(eq(v(xs[i]), v(xs[j]))));
  return out;
}

// x's class has at least n elements: n distinct E-neighbours of x.
Formula at_least(const std::string& x, std::uint64_t n, const std::string& prefix) {
  auto zs = names(prefix, 1, n + 1);
  std::vector<Formula> parts = pairwise_distinct(zs);
  for (const auto& z : zs) parts.push_back(E(x, z));
  return exists_all(zs, conjoin(parts));
}

// x's class has exactly n elements (n >= 1).
Formula exactly(const std::string& x, std::uint64_t n, const std::string& prefix) {
  auto zs = names(prefix, 1, n + 1);
  std::vector<Formula> parts = pairwise_distinct(zs);
  for (const auto& z : zs) parts.push_back(E(x, z));
  std::vector<Formula> options;
  for (const auto& z : zs) options.push_back(eq(v(prefix + "u"), v(z)));
  parts.push_back(Formula::forall(prefix + "u", Formula::implication(E(x, prefix + "u"), disjoin(options))));
  return exists_all(zs, conjoin(parts));
}

}  // namespace

Signature signature_Q() {
  Signature s;
  s.add_function("0", 0);
  s.add_function("s", 1);
  s.add_function("+", 2);
  s.add_function("*", 2);
  return s;
}

Signature signature_R() {
  Signature s = signature_Q();
  s.add_relation("Le", 2);
  return s;
}

Signature signature_VS() {
  Signature s;
  s.add_relation("In", 2);
  return s;
}

Signature signature_J() {
  Signature s;
  s.add_relation("E", 2);
  return s;
}

Term numeral(std::uint64_t n) {
  Term t = zero();
  for (std::uint64_t i = 0; i < n; ++i) t = succ(std::move(t));
  return t;
}

std::vector<Formula> axioms_Q() {
  Term x = v("x"), y = v("y");
  return {
      forall_all({"x", "y"}, Formula::implication(eq(succ(x), succ(y)), eq(x, y))),
      Formula::forall("x", neg(eq(succ(x), zero()))),
      Formula::forall("x", Formula::implication(neg(eq(x, zero())), Formula::exists("y", eq(x, succ(y))))),
      forall_all({"x", "y"}, eq(plus(x, zero()), x)),
      forall_all({"x", "y"}, eq(plus(x, succ(y)), succ(plus(x, y)))),
      Formula::forall("x", eq(times(x, zero()), zero())),
      forall_all({"x", "y"}, eq(times(x, succ(y)), plus(times(x, y), x))),
  };
}

std::vector<Formula> axioms_R_layer(std::uint64_t k) {
  std::vector<Formula> out;
  auto pairs_with_max = [k](auto&& emit) {
    for (std::uint64_t m = 0; m <= k; ++m)
      for (std::uint64_t n = 0; n <= k; ++n)
        if (std::max(m, n) == k) emit(m, n);
  };
  pairs_with_max([&](std::uint64_t m, std::uint64_t n) { out.push_back(eq(plus(numeral(m), numeral(n)), numeral(m + n))); });
  pairs_with_max([&](std::uint64_t m, std::uint64_t n) { out.push_back(eq(times(numeral(m), numeral(n)), numeral(m * n))); });
  pairs_with_max([&](std::uint64_t m, std::uint64_t n) {
    if (m != n) out.push_back(neg(eq(numeral(m), numeral(n))));
  });
  std::vector<Formula> options;
  for (std::uint64_t i = 0; i <= k; ++i) options.push_back(eq(v("x"), numeral(i)));
  out.push_back(Formula::forall(
      "x", Formula::implication(Formula::relation("Le", {v("x"), numeral(k)}), disjoin(options))));
  out.push_back(Formula::forall("x", Formula::disjunction(Formula::relation("Le", {v("x"), numeral(k)}),
                                                          Formula::relation("Le", {numeral(k), v("x")}))));
  return out;
}

std::vector<Formula> axioms_R(std::uint64_t k) {
  std::vector<Formula> out;
  for (std::uint64_t i = 0; i <= k; ++i) {
    auto layer = axioms_R_layer(i);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

Formula axioms_VS(std::uint64_t n) {
  auto xs = names("x", 0, n);
  std::vector<Formula> options;
  for (const auto& x : xs) options.push_back(eq(v("t"), v(x)));
  Formula member = Formula::relation("In", {v("t"), v("y")});
  Formula rhs = options.empty() ? falsum("t") : disjoin(options);
  return forall_all(xs, Formula::exists("y", Formula::forall("t", iff(member, rhs))));
}

Formula axiom_J1() {
  Formula refl = Formula::forall("x", E("x", "x"));
  Formula sym = forall_all({"x", "y"}, Formula::implication(E("x", "y"), E("y", "x")));
  Formula trans = forall_all(
      {"x", "y", "z"}, Formula::implication(Formula::conjunction(E("x", "y"), E("y", "z")), E("x", "z")));
  return conjoin({refl, sym, trans});
}

Formula axiom_J2(std::uint64_t n) {
  Formula body = conjoin({neg(E("a", "b")), exactly("a", n, "z"), exactly("b", n, "w")});
  return neg(exists_all({"a", "b"}, body));
}

Formula axiom_J3(std::uint64_t n) {
  auto cs = names("c", 1, n + 1);
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j) parts.push_back(neg(E(cs[i], cs[j])));
  for (std::size_t i = 0; i < cs.size(); ++i) parts.push_back(at_least(cs[i], n, "d" + std::to_string(i + 1) + "_"));
  return exists_all(cs, conjoin(parts));
}

std::vector<Formula> axioms_J(std::uint64_t n) {
  std::vector<Formula> out{axiom_J1()};
  for (std::uint64_t m = 1; m <= n; ++m) {
    out.push_back(axiom_J2(m));
    out.push_back(axiom_J3(m));
  }
  return out;
}

Formula axiom_J_stream(std::uint64_t index) {
  if (index == 0) return axiom_J1();
  std::uint64_t m = (index + 1) / 2;
  return index % 2 == 1 ? axiom_J2(m) : axiom_J3(m);
}

Formula phi(std::uint64_t n) {
  auto xs = names("x", 0, n + 1);
  std::vector<Formula> parts = pairwise_distinct(xs);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) parts.push_back(E(xs[i], xs[j]));
  std::vector<Formula> options;
  for (const auto& x : xs) options.push_back(eq(v("y"), v(x)));
  parts.push_back(
      Formula::forall("y", Formula::implication(E("x0", "y"), balanced(options, 0, options.size(), false))));
  return exists_all(xs, balanced(parts, 0, parts.size(), true));
}

std::optional<std::uint64_t> as_phi(const Formula& f) {
  std::uint64_t leading = 0;
  const Formula* cur = &f;
  while (cur->kind() == Kind::Exists) {
    ++leading;
    cur = &cur->child();
  }
  if (leading == 0) return std::nullopt;
  std::uint64_t n = leading - 1;
  // phi(n) has more than n(n+1)/2 nodes; anything smaller cannot match, and
  // this keeps the comparison build proportional to the input.
  if (formula_size(f) < (n * (n + 1)) / 2) return std::nullopt;
  if (f == phi(n)) return n;
  return std::nullopt;
}

}  // namespace wb::folog
