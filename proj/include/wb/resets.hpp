#pragma once

// R.e. sets given by machine indices: repetition-free enumeration, the
// family B_n, the Shoenfield pair (B, C), and the Turing reductions between
// them written out as oracle procedures.

#include "wb/machine.hpp"
#include "wb/nat.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace wb::resets {

using machine::Fuel;

/// W_e listed without repetition. Element i enters at stage
/// max(i, y) where y is its t1 witness; ties are broken by i.
struct EnumPrefix {
  std::vector<Nat> elements;
  std::vector<std::uint64_t> stages;
  Fuel fuel_used;

  /// 0-based position of x, if listed.
  std::optional<std::size_t> position(const Nat& x) const;
};

EnumPrefix enumerate_without_reps(const Nat& e, Fuel fuel);

struct OracleHandle {
  std::string label;
  std::function<bool(const Nat&)> decide;

  bool operator()(const Nat& x) const { return decide(x); }
};

struct Value {
  Nat n;
  bool operator==(const Value&) const = default;
};
struct Undefined {
  bool operator==(const Undefined&) const = default;
};
struct Unknown {
  bool operator==(const Unknown&) const = default;
};
using GResult = std::variant<Value, Undefined, Unknown>;

enum class Answer { Yes, No, Unknown };
std::string to_string(Answer a);

/// g(<a, p>) = n iff a = f(s) and program p on input <a, p> outputs n in
/// fewer than s steps.
GResult family_g(const Nat& e, const Nat& x, Fuel fuel);
Answer bn_member(const Nat& e, const Nat& n, const Nat& x, Fuel fuel);

/// Outcome of a reduction procedure plus what it cost. verdict is empty
/// when fuel ran out before the procedure could answer.
struct ReductionResult {
  std::optional<bool> verdict;
  std::uint64_t oracle_queries = 0;
  std::uint64_t program_runs = 0;
  std::uint64_t simulated_steps = 0;
};

/// B_n <=_T A.
ReductionResult bn_reduce_to_A(const Nat& e, const Nat& n, const Nat& x, const OracleHandle& oracle_a, Fuel fuel);
/// A <=_T B_n, querying <x, const_index(n)>.
ReductionResult a_reduce_to_bn(const Nat& e, const Nat& n, const Nat& x, const OracleHandle& oracle_bn, Fuel fuel);

struct ShoenfieldPair {
  Nat source;
  Nat iB;
  Nat iC;
};

/// B = {x : (x)_1 on x does not halt within the witness for (x)_0 in W_e},
/// C the complementary clause. Pure index arithmetic.
ShoenfieldPair shoenfield_pair(const Nat& e);

/// W_e <=_T D for any r.e. D with index n separating B and C.
ReductionResult separator_reduction(const Nat& e, const Nat& n, const OracleHandle& oracle_d, const Nat& x, Fuel fuel);

struct Pass {};
struct Counterexample {
  Nat x;
  bool in_b = false;  // certified in B (and rejected), else certified in C (and accepted)
};
using SeparatorVerdict = std::variant<Pass, Counterexample>;

SeparatorVerdict test_separator(const Nat& iB, const Nat& iC, const OracleHandle& candidate, std::uint64_t bound,
                                Fuel fuel);

}  // namespace wb::resets
