#include "doctest.h"
#include "gen.hpp"

#include "wb/machine.hpp"

#include <map>
#include <thread>

using namespace wb;
using namespace wb::machine;

namespace {

// Straightforward interpreter used as the oracle for raw programs.
struct NaiveResult {
  bool halted;
  std::uint64_t steps;
  Nat out;
};

NaiveResult naive(const std::vector<Instruction>& code, const Nat& x, std::uint64_t limit) {
  std::map<Nat, Nat> regs;
  regs[0] = x;
  std::size_t pc = 0;
  std::uint64_t steps = 0;
  while (pc < code.size() && !std::holds_alternative<Halt>(code[pc])) {
    if (steps == limit) return {false, steps, 0};
    ++steps;
    if (auto* inc = std::get_if<Inc>(&code[pc])) {
      regs[inc->reg] += 1;
      ++pc;
    } else {
      auto& d = std::get<DecJz>(code[pc]);
      if (regs[d.reg] == 0) {
        pc = static_cast<std::size_t>(d.target);
      } else {
        regs[d.reg] -= 1;
        ++pc;
      }
    }
  }
  return {true, steps, regs[0]};
}

Nat halted_output(const RunResult& r) {
  REQUIRE(std::holds_alternative<Halted>(r));
  return std::get<Halted>(r).output;
}

const std::vector<Instruction> kHalt{Halt{}};
const std::vector<Instruction> kIncHalt{Inc{0}, Halt{}};
// Loops forever: register 1 stays zero so the jump is always taken.
const std::vector<Instruction> kLoop{DecJz{1, 0}};

}  // namespace

TEST_CASE("run: halting, output and step counts") {
  auto r = run(encode(kHalt), 5, Fuel{10});
  REQUIRE(std::holds_alternative<Halted>(r));
  CHECK(std::get<Halted>(r).steps == 0);
  CHECK(std::get<Halted>(r).output == 5);

  CHECK(halted_output(run(const_index(3), 99, Fuel{100})) == 3);

  auto inc = run(encode(kIncHalt), 4, Fuel{10});
  REQUIRE(std::holds_alternative<Halted>(inc));
  CHECK(std::get<Halted>(inc).steps == 1);
  CHECK(std::get<Halted>(inc).output == 5);

  CHECK(std::holds_alternative<OutOfFuel>(run(encode(kLoop), 0, Fuel{1000})));
}

TEST_CASE("run: fuel boundary is strict") {
  // [Inc 0, Halt] takes one step, so fuel 1 is not enough and fuel 2 is.
  CHECK(std::holds_alternative<OutOfFuel>(run(encode(kIncHalt), 0, Fuel{1})));
  CHECK(std::holds_alternative<Halted>(run(encode(kIncHalt), 0, Fuel{2})));
  CHECK(std::holds_alternative<OutOfFuel>(run(encode(kHalt), 0, Fuel{0})));
}

TEST_CASE("t1 and w_member") {
  CHECK(t1(encode(kHalt), 0, 1));
  CHECK_FALSE(t1(encode(kHalt), 0, 0));
  CHECK_FALSE(t1(encode(kIncHalt), 0, 0));
  CHECK(t1(encode(kIncHalt), 0, 2));
  CHECK_FALSE(t1(encode(kIncHalt), 0, 1));
  CHECK(w_member(encode(kHalt), 7, Fuel{5}) == std::optional<std::uint64_t>(1));
  CHECK_FALSE(w_member(encode(kLoop), 0, Fuel{1000}).has_value());
}

TEST_CASE("t1 witness is unique") {
  for (std::uint64_t e = 0; e < 60; ++e)
    for (std::uint64_t x = 0; x < 10; ++x) {
      auto w = w_member(e, x, Fuel{200});
      if (!w) continue;
      int hits = 0;
      for (std::uint64_t y = 0; y <= 200; ++y) hits += t1(e, x, y);
      CHECK(hits == 1);
      CHECK(t1(e, x, *w));
    }
}

TEST_CASE("pairing") {
  CHECK(pair(0, 0) == 0);
  CHECK(pair(1, 2) == 8);
  CHECK(unpair0(8) == 1);
  CHECK(unpair1(8) == 2);
  // Oracle: walk the diagonals in order.
  std::uint64_t z = 0;
  for (std::uint64_t d = 0; d < 150; ++d)
    for (std::uint64_t y = 0; y <= d; ++y, ++z) {
      std::uint64_t x = d - y;
      REQUIRE(pair(x, y) == z);
      REQUIRE(pair_u64(x, y) == z);
      auto [a, b] = unpair(z);
      REQUIRE(a == x);
      REQUIRE(b == y);
    }
  Nat big = Nat(1) << 200;
  auto [a, b] = unpair(pair(big, big + 7));
  CHECK(a == big);
  CHECK(b == big + 7);
}

TEST_CASE("unpair on large values near recent diagonals") {
  // Successive values share a huge first coordinate; interleave unrelated ones.
  Nat base = (Nat(1) << 190) + 12345;
  std::mt19937_64 r(7);
  for (int i = 0; i < 400; ++i) {
    Nat x = base + r() % 40;
    Nat y = Nat(r() % 40);
    if (i % 3 == 0) std::swap(x, y);
    if (i % 7 == 0) x = (Nat(1) << (70 + r() % 60)) + r();
    auto [a, b] = unpair(pair(x, y));
    REQUIRE(a == x);
    REQUIRE(b == y);
  }
}

TEST_CASE("encode/decode round trip and surjectivity") {
  gen::Rng r(1);
  for (int k = 0; k < 200; ++k) {
    auto code = gen::program(r);
    auto p = decode(encode(code));
    REQUIRE(std::holds_alternative<RawProgram>(p));
    CHECK(std::get<RawProgram>(p).code == code);
  }
  // Every index decodes; plain programs and known tags round trip exactly.
  for (std::uint64_t e = 0; e < 2000; ++e) {
    auto p = decode(e);
    if (e % 2 == 0 || unpair0((e - 1) / 2) <= 3) CHECK(encode(p) == e);
  }
}

TEST_CASE("raw programs agree with a naive interpreter") {
  gen::Rng r(2);
  for (int k = 0; k < 300; ++k) {
    auto code = gen::program(r, 8);
    Nat x = r.below(20);
    auto expect = naive(code, x, 500);
    auto got = run(encode(code), x, Fuel{501});
    if (expect.halted) {
      REQUIRE(std::holds_alternative<Halted>(got));
      CHECK(std::get<Halted>(got).steps == expect.steps);
      CHECK(std::get<Halted>(got).output == expect.out);
    } else {
      CHECK(std::holds_alternative<OutOfFuel>(got));
    }
  }
}

TEST_CASE("const_index") {
  CHECK(halted_output(run(const_index(0), 17, Fuel{10})) == 0);
  auto a = std::get<Halted>(run(const_index(5), 0, Fuel{10}));
  auto b = std::get<Halted>(run(const_index(5), 1000, Fuel{10}));
  CHECK(a.steps == b.steps);
  for (int n = 0; n <= 10; ++n)
    for (int m = 0; m < n; ++m) CHECK(const_index(n) != const_index(m));
}

TEST_CASE("smn contract") {
  Nat e = encode(kIncHalt);
  for (std::uint64_t x = 0; x < 50; ++x) {
    Nat a = 3;
    CHECK(halted_output(run(smn(e, a), x, Fuel{100})) == halted_output(run(e, pair(a, x), Fuel{100})));
  }
  for (int a = 0; a <= 20; ++a)
    for (int b = 0; b < a; ++b) CHECK(smn(e, a) != smn(e, b));
  CHECK(halted_output(run(smn(const_index(3), 0), 0, Fuel{10})) ==
        halted_output(run(const_index(3), pair(0, 0), Fuel{10})));

  gen::Rng r(3);
  int checked = 0;
  while (checked < 100) {
    Nat inner = encode(gen::program(r));
    Nat a = r.below(10), x = r.below(10);
    auto direct = run(inner, pair(a, x), Fuel{300});
    if (!std::holds_alternative<Halted>(direct)) continue;
    ++checked;
    CHECK(halted_output(run(smn(inner, a), x, Fuel{600})) == std::get<Halted>(direct).output);
  }
}

TEST_CASE("kleene_fixed_point") {
  // Transformer mapping every index to const_index(7).
  Nat to_seven = const_index(const_index(7));
  Nat n = kleene_fixed_point(to_seven);
  for (std::uint64_t x = 0; x < 20; ++x) CHECK(halted_output(run(n, x, Fuel{1000})) == 7);
  CHECK(kleene_fixed_point(to_seven) == n);

  // Identity transformer: the fixed point runs as itself (here: diverges).
  Nat id = encode(kHalt);
  Nat m = kleene_fixed_point(id);
  CHECK(std::holds_alternative<OutOfFuel>(run(m, 0, Fuel{1000})));
}

TEST_CASE("program text") {
  auto code = parse_program("INC 0\nDECJZ 1 3 ; comment\n\nHALT\n");
  REQUIRE(code.size() == 3);
  CHECK(code[0] == Instruction{Inc{0}});
  CHECK(code[1] == Instruction{DecJz{1, 3}});
  CHECK(parse_program(print_program(code)) == code);
  CHECK_THROWS(parse_program("JMP 3"));
}

TEST_CASE("determinism across threads") {
  std::vector<Nat> a, b;
  auto work = [](std::vector<Nat>& out) {
    for (std::uint64_t e = 0; e < 300; ++e) {
      auto r = run(e, e, Fuel{200});
      out.push_back(std::holds_alternative<Halted>(r) ? std::get<Halted>(r).output + 1 : Nat(0));
    }
  };
  std::thread t1(work, std::ref(a)), t2(work, std::ref(b));
  t1.join();
  t2.join();
  CHECK(a == b);
}
