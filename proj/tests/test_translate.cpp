#include "doctest.h"
#include "gen.hpp"
#include "model.hpp"

#include "wb/decode.hpp"
#include "wb/theories.hpp"
#include "wb/translate.hpp"

using namespace wb;
using namespace wb::folog;

namespace {

Term v(const std::string& name) { return Term::var(name); }

unsigned max_apps(const Term& t) {
  if (t.variable) return 0;
  unsigned n = 1;
  for (const auto& a : t.args) n += max_apps(a);
  return n;
}

// Most function applications inside a single atom.
unsigned atom_apps(const Formula& f) {
  if (f.is_atomic()) {
    unsigned n = 0;
    for (const auto& t : f.terms()) n += max_apps(t);
    return n;
  }
  unsigned best = 0;
  for (std::size_t i = 0; i < f.child_count(); ++i) best = std::max(best, atom_apps(f.child(i)));
  return best;
}

Signature sig(std::string_view header) { return Signature::parse_header(header); }

}  // namespace

TEST_CASE("relation atoms map through R_I with free variables guarded") {
  Translation t;
  t.source = sig("sig R/2");
  t.target = sig("sig E/2 D/1");
  t.domain = FormulaLambda{{"x0"}, Formula::relation("D", {v("x0")})};
  t.relations.insert_or_assign("R", FormulaLambda{{"x0", "x1"}, Formula::relation("E", {v("x1"), v("x0")})});
  t.validate();
  Formula got = translate(Formula::relation("R", {v("x"), v("y")}), t);
  Formula want = Formula::implication(
      Formula::conjunction(Formula::relation("D", {v("x")}), Formula::relation("D", {v("y")})),
      Formula::relation("E", {v("y"), v("x")}));
  CHECK(got == want);

  // Sentences carry no leading guard; quantifiers are guarded instead.
  Formula s = translate(Formula::forall("x", Formula::relation("R", {v("x"), v("x")})), t);
  CHECK(s == Formula::forall("x", Formula::implication(Formula::relation("D", {v("x")}),
                                                       Formula::relation("E", {v("x"), v("x")}))));
}

TEST_CASE("function atoms map to the graph formula") {
  Translation t;
  t.source = Signature{};
  t.source.add_function("F", 1);
  t.target = sig("sig G/2");
  t.functions.insert_or_assign("F", FormulaLambda{{"x0", "y"}, Formula::relation("G", {v("x0"), v("y")})});
  t.validate();
  Formula atom = Formula::equal(Term::app("F", {v("x")}), v("y"));
  CHECK(translate(atom, t) == Formula::relation("G", {v("x"), v("y")}));
  Formula flipped = Formula::equal(v("y"), Term::app("F", {v("x")}));
  CHECK(translate(flipped, t) == Formula::relation("G", {v("x"), v("y")}));

  // Nested terms are flattened; the result mentions only G.
  Formula nested = Formula::forall("x", Formula::equal(Term::app("F", {Term::app("F", {v("x")})}), v("x")));
  Formula tr = translate(nested, t);
  CHECK(well_formed(tr, t.target));
  CHECK(is_sentence(tr));
}

TEST_CASE("validate rejects bad translations") {
  Translation t;
  t.source = sig("sig R/2");
  t.target = sig("sig E/2");
  t.relations.insert_or_assign("R", FormulaLambda{{"x0", "x1"}, Formula::relation("Q", {v("x0"), v("x1")})});
  CHECK_THROWS_AS(t.validate(), SignatureError);
  t.relations.insert_or_assign("R", FormulaLambda{{"x0"}, Formula::relation("E", {v("x0"), v("x0")})});
  CHECK_THROWS_AS(t.validate(), SignatureError);
  t.relations.insert_or_assign("R", FormulaLambda{{"x0", "x1"}, Formula::relation("E", {v("x0"), v("z")})});
  CHECK_THROWS_AS(t.validate(), SignatureError);
  CHECK_THROWS_AS(translate(Formula::relation("S", {v("x")}), Translation::identity(t.source)), SignatureError);
}

TEST_CASE("identity translation preserves truth in finite structures") {
  gen::Rng r(31);
  Signature mixed = gen::mixed_signature();
  Translation id = Translation::identity(mixed);
  id.validate();
  for (int k = 0; k < 80; ++k) {
    Formula f = gen::formula(r, {"x", "y"}, 3);
    Formula g = translate(f, id);
    CHECK(well_formed(g, mixed));
    for (int s = 0; s < 3; ++s) {
      auto m = model::random_structure(mixed, 1 + static_cast<unsigned>(r.below(3)), r.engine());
      model::Env env{{"x", static_cast<unsigned>(r.below(m.size))}, {"y", static_cast<unsigned>(r.below(m.size))}};
      CHECK(model::holds(m, f, env) == model::holds(m, g, env));
    }
  }
}

TEST_CASE("translation rank stays within the flattening and lambda overhead") {
  gen::Rng r(32);
  Signature mixed = gen::mixed_signature();
  Translation t = Translation::identity(mixed);
  t.domain = FormulaLambda{{"x0"}, Formula::exists("u", Formula::relation("R", {v("x0"), v("u")}))};
  t.relations.insert_or_assign("P", FormulaLambda{{"x0"}, Formula::forall("u", Formula::relation("R", {v("u"), v("x0")}))});
  t.validate();
  for (int k = 0; k < 100; ++k) {
    Formula f = gen::formula(r, {"x"}, 4);
    Formula g = translate(f, t);
    CHECK(well_formed(g, mixed));
    CHECK(quantifier_rank(g) <= quantifier_rank(f) + atom_apps(f) + 1);
  }
}

TEST_CASE("interpretation obligations") {
  Translation rel;
  rel.source = sig("sig R/2");
  rel.target = sig("sig E/2");
  rel.relations.insert_or_assign("R", FormulaLambda{{"x0", "x1"}, Formula::relation("E", {v("x0"), v("x1")})});
  auto obs = interpretation_obligations({}, rel);
  // Nonemptiness, then equality axioms: refl, sym, trans, R congruence.
  CHECK(obs.size() == 1 + equality_axioms(rel.source).size());
  CHECK(equality_axioms(rel.source).size() == 4);

  Translation fn;
  fn.source = Signature{};
  fn.source.add_function("F", 1);
  fn.target = sig("sig G/2 D/1");
  fn.domain = FormulaLambda{{"x0"}, Formula::relation("D", {v("x0")})};
  fn.functions.insert_or_assign("F", FormulaLambda{{"x0", "y"}, Formula::relation("G", {v("x0"), v("y")})});
  fn.validate();
  auto fobs = interpretation_obligations({}, fn);
  Formula totality = Formula::forall(
      "x0", Formula::implication(Formula::relation("D", {v("x0")}),
                                 Formula::exists("y", Formula::conjunction(Formula::relation("D", {v("y")}),
                                                                           Formula::relation("G", {v("x0"), v("y")})))));
  CHECK(std::count(fobs.begin(), fobs.end(), totality) == 1);
  CHECK(fobs[1] == totality);

  // Q under its identity translation: nonemptiness, totality and
  // functionality per function, equality axioms, then Q itself.
  Translation q = Translation::identity(signature_Q());
  auto qobs = interpretation_obligations(axioms_Q(), q);
  auto eq = equality_axioms(signature_Q());
  std::size_t fns = signature_Q().functions().size();
  REQUIRE(qobs.size() == 1 + 2 * fns + eq.size() + 7);
  for (std::size_t i = 0; i < 7; ++i) CHECK(qobs[qobs.size() - 7 + i] == translate(axioms_Q()[i], q));
  for (std::size_t i = 0; i < eq.size(); ++i) CHECK(qobs[1 + 2 * fns + i] == translate(eq[i], q));
  // Every obligation is valid in the standard-ish finite structure Z/3.
  model::Structure z3;
  z3.size = 3;
  for (unsigned a = 0; a < 3; ++a) {
    z3.functions["s"][{a}] = (a + 1) % 3;
    for (unsigned b = 0; b < 3; ++b) {
      z3.functions["+"][{a, b}] = (a + b) % 3;
      z3.functions["*"][{a, b}] = (a * b) % 3;
    }
  }
  z3.functions["0"][{}] = 0;
  for (std::size_t i = 0; i < 1 + 2 * fns + eq.size(); ++i) CHECK(model::holds(z3, qobs[i], {}));
}

TEST_CASE("enumerated translations") {
  Signature src = sig("sig R/2");
  Signature tgt = signature_J();
  for (std::uint64_t i = 0; i < 400; ++i) {
    Translation t = enum_translation(src, tgt, i);
    CHECK_NOTHROW(t.validate());
    Translation again = enum_translation(src, tgt, i);
    CHECK(again.relations.at("R").body == t.relations.at("R").body);
  }
  // Relation code 1 + 8 * <0, <0, 1>> is E(x0, x1); domain code 0 is the trivial domain.
  Nat e01 = 1 + 8 * pair(0, pair(0, 1));
  CHECK(decode_formula(e01, tgt, {"x0", "x1"}) == Formula::relation("E", {v("x0"), v("x1")}));
  Translation direct = enum_translation(src, tgt, pair(0, pair(0, e01)));
  CHECK_FALSE(direct.domain.has_value());
  CHECK(direct.relations.at("R").body == Formula::relation("E", {v("x0"), v("x1")}));

  Signature q = signature_Q();
  for (std::uint64_t i = 0; i < 100; ++i) CHECK_NOTHROW(enum_translation(q, tgt, i).validate());
}
