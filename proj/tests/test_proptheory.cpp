#include "doctest.h"
#include "gen.hpp"

#include "wb/proptheory.hpp"

using namespace wb;
using namespace wb::proptheory;

namespace {

resets::OracleHandle member_of(std::set<std::uint64_t> s) {
  return {"set", [s](const Nat& n) { return n < 1000 && s.count(static_cast<std::uint64_t>(n)) != 0; }};
}

PropFormula random_prop(gen::Rng& r, unsigned vars, unsigned depth) {
  if (depth == 0 || r.below(4) == 0) return PropFormula::atom(r.below(vars));
  switch (r.below(4)) {
    case 0: return PropFormula::negation(random_prop(r, vars, depth - 1));
    case 1: return PropFormula::conjunction(random_prop(r, vars, depth - 1), random_prop(r, vars, depth - 1));
    case 2: return PropFormula::disjunction(random_prop(r, vars, depth - 1), random_prop(r, vars, depth - 1));
    default: return PropFormula::implication(random_prop(r, vars, depth - 1), random_prop(r, vars, depth - 1));
  }
}

// All valuations of the support that agree with the literals of B and C.
TriState brute_force(const PropFormula& f, const std::set<std::uint64_t>& b, const std::set<std::uint64_t>& c) {
  std::set<Nat> support = f.support();
  std::vector<Nat> vars(support.begin(), support.end());
  bool some_true = false, some_false = false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars.size()); ++mask) {
    std::map<Nat, bool> val;
    bool consistent = true;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      bool bit = (mask >> i) & 1;
      auto n = static_cast<std::uint64_t>(vars[i]);
      if ((b.count(n) && !bit) || (c.count(n) && bit)) consistent = false;
      val[vars[i]] = bit;
    }
    if (!consistent) continue;
    (f.evaluate(val) ? some_true : some_false) = true;
  }
  if (!some_false) return TriState::Provable;
  if (!some_true) return TriState::Refutable;
  return TriState::Independent;
}

}  // namespace

TEST_CASE("parse and print") {
  auto f = parse_prop("(or p0 (not p0))");
  CHECK(f == PropFormula::disjunction(PropFormula::atom(0), PropFormula::negation(PropFormula::atom(0))));
  CHECK(parse_prop(print(f)) == f);
  CHECK(parse_prop("(and p1 p2 p3)").kind() == PropFormula::Kind::And);
  CHECK(parse_prop("(-> p1 p12)").support() == std::set<Nat>{1, 12});
  CHECK_THROWS_AS(parse_prop("(and p1"), folog::ParseError);
  CHECK_THROWS_AS(parse_prop("q1"), folog::ParseError);
}

TEST_CASE("u_decide examples") {
  auto b = member_of({0});
  auto c = member_of({1});
  CHECK(u_decide(PropFormula::atom(0), b, c).verdict == TriState::Provable);
  CHECK(u_decide(PropFormula::atom(1), b, c).verdict == TriState::Refutable);
  CHECK(u_decide(PropFormula::atom(7), b, c).verdict == TriState::Independent);
  auto none = member_of({});
  CHECK(u_decide(parse_prop("(or p5 (not p5))"), none, none).verdict == TriState::Provable);
  auto d = u_decide(parse_prop("(and p0 (or p1 p2))"), b, c);
  CHECK(d.verdict == TriState::Independent);
  CHECK(d.pins == std::map<Nat, bool>{{0, true}, {1, false}});
}

TEST_CASE("u_decide matches brute force") {
  gen::Rng r(71);
  std::set<std::uint64_t> bs{0, 3, 5}, cs{1, 6};
  auto b = member_of(bs), c = member_of(cs);
  for (int k = 0; k < 500; ++k) {
    PropFormula f = random_prop(r, 8, 5);
    TriState got = u_decide(f, b, c).verdict;
    CHECK(got == brute_force(f, bs, cs));
    TriState neg = u_decide(PropFormula::negation(f), b, c).verdict;
    CHECK((got == TriState::Provable) == (neg == TriState::Refutable));
  }
}

TEST_CASE("u_enumerate and incompleteness_probe") {
  Nat iB = machine::finite_set_index(1);  // {0}
  Nat iC = machine::finite_set_index(2);  // {1}
  auto lits = u_enumerate(iB, iC, machine::Fuel{100});
  REQUIRE(lits.size() == 2);
  CHECK(lits[0] == PropFormula::atom(0));
  CHECK(lits[1] == PropFormula::negation(PropFormula::atom(1)));

  TheoremEnumerator ud = [&](machine::Fuel f) { return u_enumerate(iB, iC, f); };
  auto res = incompleteness_probe(ud, 20, machine::Fuel{100});
  REQUIRE(std::holds_alternative<Undecided>(res));
  CHECK(std::get<Undecided>(res).n == 2);

  TheoremEnumerator complete = [](machine::Fuel) {
    std::vector<PropFormula> out;
    for (std::uint64_t n = 0; n <= 20; ++n) out.push_back(PropFormula::atom(n));
    return out;
  };
  CHECK(std::holds_alternative<AllDecided>(incompleteness_probe(complete, 20, machine::Fuel{1})));

  // More fuel can only push the report up: here a slowly growing enumerator.
  TheoremEnumerator slow = [](machine::Fuel f) {
    std::vector<PropFormula> out;
    for (std::uint64_t n = 0; n < f.max_steps / 10 && n <= 30; ++n) out.push_back(PropFormula::atom(n));
    return out;
  };
  Nat last = 0;
  for (std::uint64_t fuel = 10; fuel <= 400; fuel += 30) {
    auto p = incompleteness_probe(slow, 25, machine::Fuel{fuel});
    if (std::holds_alternative<AllDecided>(p)) break;
    CHECK(std::get<Undecided>(p).n >= last);
    last = std::get<Undecided>(p).n;
  }
}

TEST_CASE("persistence_reduction") {
  Nat e = machine::encode(machine::parse_program("DECJZ 0 4\nDECJZ 0 3\nDECJZ 1 0\nDECJZ 1 3\nHALT\n"));
  auto sp = resets::shoenfield_pair(e);
  // S = closure of U_d for the Shoenfield pair: S proves p_n iff n in B.
  resets::OracleHandle proves{"S |- p_n",
                              [&](const Nat& n) { return machine::w_member(sp.iB, n, machine::Fuel{200000}).has_value(); }};
  for (std::uint64_t x = 0; x <= 100; ++x) {
    auto r = persistence_reduction(e, sp.iB, proves, x, machine::Fuel{200000});
    if (r.verdict) CHECK(*r.verdict == (x % 2 == 0));
    auto again = persistence_reduction(e, sp.iB, proves, x, machine::Fuel{200000});
    CHECK(again.verdict == r.verdict);
  }
  resets::OracleHandle reject{"none", [](const Nat&) { return false; }};
  auto r = persistence_reduction(e, sp.iB, reject, 4, machine::Fuel{100});
  CHECK(r.verdict == std::optional<bool>(false));
  CHECK(r.program_runs == 0);
}
