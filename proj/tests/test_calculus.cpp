#include "doctest.h"
#include "gen.hpp"
#include "model.hpp"

#include "wb/calculus.hpp"
#include "wb/theories.hpp"

using namespace wb;
using namespace wb::calculus;
using folog::Signature;

namespace {

Signature sig_pr() { return Signature::parse_header("sig P/1 R/2 c/0 f/1"); }
Formula F(const char* text) { return folog::parse_formula(text, sig_pr()); }

PremiseStream finite(std::vector<Formula> fs) {
  return [fs](std::uint64_t i) -> std::optional<Formula> {
    if (i < fs.size()) return fs[i];
    return std::nullopt;
  };
}

}  // namespace

TEST_CASE("axiom scheme recognizers") {
  CHECK(logical_axiom_scheme(F("(-> (P x) (P x))")) == std::optional<std::string>("A1"));
  CHECK(logical_axiom_scheme(F("(or (forall x (P x)) (not (forall x (P x))))")) == std::optional<std::string>("A1"));
  CHECK(is_tautology(F("(-> (and (P x) (P y)) (P y))")));
  CHECK_FALSE(is_tautology(F("(-> (P x) (P y))")));

  CHECK(logical_axiom_scheme(F("(-> (forall x (R x y)) (R (f c) y))")) == std::optional<std::string>("A2"));
  // y is captured under forall y: not substitutable.
  Formula captured = F("(-> (forall x (exists y (R x y))) (exists y (R y y)))");
  CHECK(logical_axiom_scheme(captured) != std::optional<std::string>("A2"));
  CHECK_FALSE(substitutable(F("(exists y (R x y))"), "x", Term::var("y")));
  CHECK(substitutable(F("(exists y (R x y))"), "x", Term::var("z")));

  CHECK(logical_axiom_scheme(F("(-> (forall x (-> (P x) (R x x))) (-> (forall x (P x)) (forall x (R x x))))")) ==
        std::optional<std::string>("A3"));
  CHECK(logical_axiom_scheme(F("(-> (P y) (forall x (P y)))")) == std::optional<std::string>("A4"));
  CHECK(logical_axiom_scheme(F("(-> (P x) (forall x (P x)))")) == std::nullopt);
  CHECK(logical_axiom_scheme(F("(= x x)")) == std::optional<std::string>("A5"));
  CHECK(logical_axiom_scheme(F("(-> (= x y) (-> (R x x) (R y x)))")) == std::optional<std::string>("A6"));
  CHECK(logical_axiom_scheme(F("(-> (exists x (P x)) (not (forall x (not (P x)))))")) ==
        std::optional<std::string>("A7"));
  CHECK(logical_axiom_scheme(F("(-> (not (forall x (not (P x)))) (exists x (P x)))")) ==
        std::optional<std::string>("A8"));
  CHECK(logical_axiom_scheme(F("(-> (P c) (exists x (P x)))")) == std::optional<std::string>("A9"));
  CHECK(logical_axiom_scheme(F("(P x)")) == std::nullopt);
}

TEST_CASE("proof log checker") {
  Formula p = F("(P c)");
  Formula imp = F("(-> (P c) (exists x (P x)))");
  ProofLog ok{{{p, Rule::Premise, "", {}},
               {imp, Rule::Axiom, "A9", {}},
               {F("(exists x (P x))"), Rule::ModusPonens, "", {0, 1}}}};
  CHECK(check_proof_log(ok, {p}));
  CHECK_FALSE(check_proof_log(ok, {}));

  ProofLog wrong_axiom = ok;
  wrong_axiom.steps[1].scheme = "A2";
  CHECK_FALSE(check_proof_log(wrong_axiom, {p}));

  ProofLog forward_ref = ok;
  forward_ref.steps[2].refs = {0, 3};
  CHECK_FALSE(check_proof_log(forward_ref, {p}));

  ProofLog bad_mp = ok;
  bad_mp.steps[2].formula = F("(P c)");
  CHECK_FALSE(check_proof_log(bad_mp, {p}));

  ProofLog gen{{{F("(= x x)"), Rule::Axiom, "A5", {}}, {F("(forall x (= x x))"), Rule::Generalisation, "", {0}}}};
  CHECK(check_proof_log(gen, {}));
}

TEST_CASE("prover: premises first, conjunctions later, certificates check") {
  Formula a = F("(P c)");
  Formula b = F("(forall x (R x x))");
  Prover pr(sig_pr(), finite({a, b}));
  REQUIRE(pr.run_until(a, 10));
  CHECK(pr.run_until(b, 200));
  Formula both = folog::Formula::conjunction(a, b);
  REQUIRE(pr.run_until(both, 20000));
  auto id = pr.find(both);
  REQUIRE(id.has_value());
  ProofLog log = pr.certificate(*id);
  CHECK(log.conclusion() == both);
  CHECK(check_proof_log(log, pr.premises_seen()));
}

TEST_CASE("enum_theorems is sound in finite models of the premises") {
  Formula a = F("(P c)");
  Formula b = F("(forall x (-> (P x) (P (f x))))");
  std::vector<Formula> prem{a, b};
  auto thms = enum_theorems(sig_pr(), finite(prem), machine::Fuel{3000});
  REQUIRE(thms.size() > 10);
  CHECK(thms[0].sentence == a);

  gen::Rng r(51);
  std::vector<model::Structure> models;
  while (models.size() < 20) {
    auto m = model::random_structure(sig_pr(), 1 + static_cast<unsigned>(r.below(3)), r.engine());
    if (model::holds(m, a, {}) && model::holds(m, b, {})) models.push_back(m);
  }
  for (const auto& t : thms) {
    CHECK(folog::is_sentence(t.sentence));
    CHECK(check_proof_log(t.certificate, prem));
    CHECK(t.certificate.conclusion() == t.sentence);
    for (const auto& m : models) CHECK(model::holds(m, t.sentence, {}));
  }
}

TEST_CASE("Q axioms come out first") {
  auto q = folog::axioms_Q();
  std::vector<Formula> prem(q.begin(), q.end());
  auto thms = enum_theorems(folog::signature_Q(), finite(prem), machine::Fuel{500});
  for (const auto& ax : q) {
    bool found = false;
    for (const auto& t : thms) found = found || t.sentence == ax;
    CHECK(found);
  }
}

TEST_CASE("derive") {
  Formula a = F("(P c)");
  Formula b = F("(forall x (R x x))");
  auto both = derive(sig_pr(), {a, b}, folog::Formula::conjunction(b, a), machine::Fuel{100});
  REQUIRE(both.has_value());
  CHECK(check_proof_log(*both, {a, b}));

  auto ex = derive(sig_pr(), {a}, F("(exists x (P x))"), machine::Fuel{5000});
  REQUIRE(ex.has_value());
  CHECK(check_proof_log(*ex, {a}));

  auto refl = derive(sig_pr(), {}, F("(forall x (= x x))"), machine::Fuel{5000});
  REQUIRE(refl.has_value());
  CHECK(check_proof_log(*refl, {}));

  // Not a consequence: the search gives up.
  CHECK_FALSE(derive(sig_pr(), {a}, F("(P (f c))"), machine::Fuel{2000}).has_value());
}
