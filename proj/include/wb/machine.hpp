#pragma once

// Register machine with Gödel-numbered programs.
//
// Index layout. An even index 2k is a plain register program whose
// instruction list is coded by k. An odd index 2k+1 with k = <tag, arg> is
// a structured program:
//   tag 0  constant program with output arg
//   tag 1  s-m-n specialisation, arg = <inner, fixed>
//   tag 2  fixed interpreter number arg (see Interpreter)
//   tag 3  semi-decider of the finite set whose bitmask is arg
// Unknown tags decode to the empty program, so every natural is a program.

#include "wb/nat.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wb::machine {

struct Inc {
  Nat reg;
  bool operator==(const Inc&) const = default;
};
/// If reg is zero jump to target, else decrement and fall through.
struct DecJz {
  Nat reg;
  Nat target;
  bool operator==(const DecJz&) const = default;
};
struct Halt {
  bool operator==(const Halt&) const = default;
};
using Instruction = std::variant<Inc, DecJz, Halt>;

/// Fixed interpreters reachable through tag 2. Inputs are Cantor pairs.
enum class Interpreter : std::uint32_t {
  Diag = 0,         // <u, x>: run (run u on u) on x
  ComposeDiag = 1,  // <t, x>: run t on index of Diag specialised to x
  ShoenfieldB = 2,  // <e, x>: halts iff x in B of the Shoenfield pair of W_e
  ShoenfieldC = 3,  // <e, x>: same for C
  TbcTheorems = 4,  // <<iB,iC>, code>: halts iff code is forced by certified literals
  PreimagePhi = 5,  // <i, n>: run i on the code of Phi_n
  RaceIndexer = 6,  // <<a,b>, m>: outputs index of Race specialised to <<a,b>,m>
  Race = 7,         // <<<a,b>,m>, x>: 1 if m shows up in W_a first, 0 if in W_b first
  PhiCode = 8,      // n: outputs the code of Phi_n
};

struct RawProgram {
  std::vector<Instruction> code;
  bool operator==(const RawProgram&) const = default;
};
struct ConstProgram {
  Nat value;
  bool operator==(const ConstProgram&) const = default;
};
struct SmnProgram {
  Nat inner;
  Nat fixed;
  bool operator==(const SmnProgram&) const = default;
};
struct InterpProgram {
  Nat id;
  bool operator==(const InterpProgram&) const = default;
};
struct FiniteSetProgram {
  Nat mask;
  bool operator==(const FiniteSetProgram&) const = default;
};
using Program = std::variant<RawProgram, ConstProgram, SmnProgram, InterpProgram, FiniteSetProgram>;

struct Fuel {
  std::uint64_t max_steps = 0;
};

struct Halted {
  std::uint64_t steps = 0;
  Nat output;
};
struct OutOfFuel {};
using RunResult = std::variant<Halted, OutOfFuel>;

Nat encode(std::span<const Instruction> code);
Nat encode(const Program& p);
Program decode(const Nat& e);

/// Program e on input x (in register 0). Halted only when the step count
/// is strictly below fuel.max_steps.
RunResult run(const Nat& e, const Nat& x, Fuel fuel);
RunResult run(const Program& p, const Nat& x, Fuel fuel);

/// Kleene predicate: program e on x halts after exactly y-1 steps.
bool t1(const Nat& e, const Nat& x, std::uint64_t y);

/// Witness y <= fuel.max_steps with t1(e,x,y), if one exists.
std::optional<std::uint64_t> w_member(const Nat& e, const Nat& x, Fuel fuel);

Nat smn(const Nat& e, const Nat& a);
Nat const_index(const Nat& n);
Nat interpreter_index(Interpreter which);
Nat finite_set_index(const Nat& mask);

/// Recursion theorem: n with run(n, x) = run(run(transformer, n), x).
Nat kleene_fixed_point(const Nat& transformer);
/// Index computed by the Diag specialisation used inside kleene_fixed_point.
Nat diag_index(const Nat& u);

/// `INC r` | `DECJZ r L` | `HALT`, one per line; `;` starts a comment.
std::vector<Instruction> parse_program(std::string_view text);
std::string print_program(std::span<const Instruction> code);

namespace detail {

struct Exec {
  bool halted = false;
  std::uint64_t steps = 0;  // steps consumed; equals the limit when not halted
  Nat output;
};

/// Runs with at most `limit` steps; halts iff the step count is <= limit.
Exec exec(const Program& p, const Nat& x, std::uint64_t limit);
Exec exec(const Nat& e, const Nat& x, std::uint64_t limit);

}  // namespace detail

}  // namespace wb::machine
