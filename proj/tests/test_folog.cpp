#include "doctest.h"
#include "gen.hpp"
#include "model.hpp"

#include "wb/folog.hpp"
#include "wb/theories.hpp"

using namespace wb;
using namespace wb::folog;

namespace {

Signature sig_e() {
  Signature s;
  s.add_relation("E", 2);
  return s;
}

Term v(const char* name) { return Term::var(name); }

// Reference relativization written directly from the definition.
Formula guard_all(const Formula& f, const std::string& pred) {
  switch (f.kind()) {
    case Kind::Eq:
    case Kind::Rel: return f;
    case Kind::Not: return Formula::negation(guard_all(f.child(0), pred));
    case Kind::And: return Formula::conjunction(guard_all(f.child(0), pred), guard_all(f.child(1), pred));
    case Kind::Or: return Formula::disjunction(guard_all(f.child(0), pred), guard_all(f.child(1), pred));
    case Kind::Implies: return Formula::implication(guard_all(f.child(0), pred), guard_all(f.child(1), pred));
    case Kind::Forall:
      return Formula::forall(f.symbol(), Formula::implication(Formula::relation(pred, {Term::var(f.symbol())}),
                                                              guard_all(f.child(0), pred)));
    case Kind::Exists:
      return Formula::exists(f.symbol(), Formula::conjunction(Formula::relation(pred, {Term::var(f.symbol())}),
                                                              guard_all(f.child(0), pred)));
  }
  return f;
}

}  // namespace

TEST_CASE("parse and print") {
  Signature e = sig_e();
  Formula f = parse_formula("(forall x (= x x))", e);
  CHECK(f == Formula::forall("x", Formula::equal(v("x"), v("x"))));
  CHECK(print(f) == "(forall x (= x x))");
  CHECK(parse_formula("(exists x (E x x))", e).kind() == Kind::Exists);
  CHECK_THROWS_WITH_AS(parse_formula("(E x)", e), doctest::Contains("expects 2"), ParseError);
  CHECK_THROWS_AS(parse_formula("(forall x (= x x)", e), ParseError);
  try {
    parse_formula("(and (E x y) (Q x))", e);
    FAIL("expected an error");
  } catch (const ParseError& err) {
    CHECK(err.position > 0);
  } catch (const SignatureError&) {
  }
  // n-ary and associates to the right.
  Formula a = parse_formula("(and (E x y) (E y z) (E z x))", e);
  CHECK(a.kind() == Kind::And);
  CHECK(a.child(1).kind() == Kind::And);

  gen::Rng r(11);
  Signature mixed = gen::mixed_signature();
  for (int k = 0; k < 200; ++k) {
    Formula g = gen::formula(r, {"x", "y"}, 4);
    CHECK(parse_formula(print(g), mixed) == g);
  }
}

TEST_CASE("signature header") {
  Signature s = Signature::parse_header("sig R/2 f/1 c/0 P/0");
  CHECK(s.relation_arity("R") == 2);
  CHECK(s.function_arity("f") == 1);
  CHECK(s.has_function("c"));
  CHECK(s.propositional() == std::vector<std::string>{"P"});
  CHECK(Signature::parse_header(s.header()) == s);
}

TEST_CASE("variables, rank and size") {
  Formula f = parse_formula("(forall x (exists y (E x z)))", sig_e());
  CHECK(free_variables(f) == std::set<std::string>{"z"});
  CHECK_FALSE(is_sentence(f));
  CHECK(quantifier_rank(f) == 2);
  CHECK(quantifier_rank(parse_formula("(E x y)", sig_e())) == 0);
  CHECK(quantifier_rank(phi(0)) == 2);
  CHECK(quantifier_rank(parse_formula("(forall x (exists y (E x y)))", sig_e())) == 2);
}

TEST_CASE("substitution avoids capture") {
  Formula f = Formula::forall("x", Formula::relation("E", {v("x"), v("y")}));
  Formula g = substitute(f, "y", v("x"));
  REQUIRE(g.kind() == Kind::Forall);
  CHECK(g.symbol() != "x");
  CHECK(free_variables(g) == std::set<std::string>{"x"});
  CHECK(g.child(0).terms()[1] == v("x"));
  CHECK(substitute(f, "z", v("x")) == f);
  CHECK(substitute(f, "x", v("w")) == f);
}

TEST_CASE("substitution lemma on random structures") {
  gen::Rng r(12);
  Signature mixed = gen::mixed_signature();
  for (int k = 0; k < 60; ++k) {
    Formula f = gen::formula(r, {"x", "y"}, 3);
    Term t = gen::term(r, {"x", "y", "q0"}, 2);
    Term u = gen::term(r, {"x", "y"}, 1);
    Formula once = substitute(f, "x", t);
    Formula twice = substitute(once, "y", u);
    auto fv = free_variables(f);
    for (const auto& name : term_variables(t)) fv.insert(name);
    for (int s = 0; s < 4; ++s) {
      auto m = model::random_structure(mixed, 3, r.engine());
      model::Env env;
      for (const auto& name : fv) env[name] = static_cast<unsigned>(r.below(3));
      env["x"] = env.count("x") ? env["x"] : 0;
      env["y"] = env.count("y") ? env["y"] : 0;
      env["q0"] = env.count("q0") ? env["q0"] : 0;
      model::Env shifted = env;
      shifted["x"] = model::eval_term(m, t, env);
      CHECK(model::holds(m, once, env) == model::holds(m, f, shifted));
      model::Env env2 = env;
      env2["y"] = model::eval_term(m, u, env);
      CHECK(model::holds(m, twice, env) == model::holds(m, once, env2));
    }
  }
}

TEST_CASE("relativize") {
  Formula f = Formula::forall("x", Formula::equal(v("x"), v("x")));
  FormulaLambda p0{{"x"}, Formula::relation("P0", {v("x")})};
  CHECK(relativize(f, p0) ==
        Formula::forall("x", Formula::implication(Formula::relation("P0", {v("x")}), Formula::equal(v("x"), v("x")))));
  Formula qf = Formula::relation("E", {v("x"), v("y")});
  CHECK(relativize(qf, p0) == qf);

  gen::Rng r(13);
  for (int k = 0; k < 50; ++k) {
    Formula g = gen::formula(r, {"x"}, 4);
    CHECK(relativize(g, FormulaLambda{{"z"}, Formula::relation("D", {v("z")})}) == guard_all(g, "D"));
  }
}

TEST_CASE("sample theories") {
  auto q = axioms_Q();
  REQUIRE(q.size() == 7);
  CHECK(q[1] == Formula::forall("x", Formula::negation(Formula::equal(Term::app("s", {v("x")}), Term::app("0")))));
  for (const auto& a : q) CHECK(well_formed(a, signature_Q()));

  auto r2 = axioms_R(2);
  Formula two_plus_two = Formula::equal(Term::app("+", {numeral(2), numeral(2)}), numeral(4));
  CHECK(std::find(r2.begin(), r2.end(), two_plus_two) != r2.end());
  for (const auto& a : r2) CHECK(well_formed(a, signature_R()));
  // Layer k adds 6k+4 axioms.
  for (std::uint64_t k = 0; k < 5; ++k) CHECK(axioms_R_layer(k).size() == 6 * k + 4);

  for (std::uint64_t n = 0; n < 4; ++n) {
    CHECK(well_formed(axioms_VS(n), signature_VS()));
    CHECK(is_sentence(axioms_VS(n)));
  }
  auto j = axioms_J(3);
  CHECK(j.size() == 7);
  CHECK(j[0] == axiom_J1());
  for (std::uint64_t i = 0; i < 7; ++i) CHECK(axiom_J_stream(i) == j[i]);
  for (const auto& a : j) CHECK(is_sentence(a));
}

TEST_CASE("J axioms on explicit equivalence structures") {
  using model::equivalence;
  using model::holds;
  // J2(n): no two classes of size n.
  CHECK(holds(equivalence({2, 3}), axiom_J2(2), {}));
  CHECK_FALSE(holds(equivalence({2, 2}), axiom_J2(2), {}));
  CHECK(holds(equivalence({1, 2, 2}), axiom_J2(1), {}));
  // J3(n): at least n classes of size at least n.
  CHECK(holds(equivalence({2, 3}), axiom_J3(2), {}));
  CHECK_FALSE(holds(equivalence({1, 3}), axiom_J3(2), {}));
  CHECK(holds(equivalence({3, 3, 4}), axiom_J3(3), {}));
  CHECK_FALSE(holds(equivalence({2, 3, 4}), axiom_J3(3), {}));
  // J1 fails for a relation that is not transitive.
  auto m = equivalence({2});
  m.size = 3;
  m.relations["E"].insert({{1, 2}, {2, 1}, {2, 2}});
  CHECK_FALSE(holds(m, axiom_J1(), {}));
  CHECK(holds(equivalence({1, 2, 5}), axiom_J1(), {}));
}

TEST_CASE("phi(n) holds iff a class of size n+1 exists") {
  gen::Rng r(14);
  for (int k = 0; k < 20; ++k) {
    std::vector<unsigned> sizes;
    std::set<unsigned> seen;
    for (unsigned s = 1; s <= 4; ++s)
      if (r.coin()) sizes.push_back(s), seen.insert(s);
    if (sizes.empty()) sizes.push_back(5), seen.insert(5);
    auto m = model::equivalence(sizes);
    for (std::uint64_t n = 0; n <= 3; ++n)
      CHECK(model::holds(m, phi(n), {}) == (seen.count(static_cast<unsigned>(n + 1)) != 0));
  }
  for (std::uint64_t n = 0; n <= 8; ++n) CHECK(as_phi(phi(n)) == std::optional<std::uint64_t>(n));
  CHECK_FALSE(as_phi(axiom_J1()).has_value());
  CHECK_FALSE(as_phi(Formula::negation(phi(1))).has_value());
}
