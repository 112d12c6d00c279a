#include "wb/resets.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>

namespace wb::resets {

namespace {

using machine::Halted;

std::optional<Halted> halted(const machine::RunResult& r) {
  if (const auto* h = std::get_if<Halted>(&r)) return *h;
  return std::nullopt;
}

}  // namespace

namespace {

// Every prefix at a smaller fuel is an initial segment of the one at a larger
// fuel, so searches can grow the fuel geometrically and stop early.
template <class Done>
EnumPrefix grow_prefix(const Nat& e, Fuel fuel, Done done) {
  std::uint64_t f = std::min<std::uint64_t>(fuel.max_steps, 64);
  for (;;) {
    EnumPrefix p = enumerate_without_reps(e, Fuel{f});
    if (f == fuel.max_steps || done(p)) return p;
    f = f > fuel.max_steps / 2 ? fuel.max_steps : 2 * f;
  }
}

std::optional<std::size_t> locate(const Nat& e, const Nat& a, Fuel fuel) {
  return grow_prefix(e, fuel, [&](const EnumPrefix& p) { return p.position(a).has_value(); }).position(a);
}

}  // namespace

std::optional<std::size_t> EnumPrefix::position(const Nat& x) const {
  auto it = std::find(elements.begin(), elements.end(), x);
  if (it == elements.end()) return std::nullopt;
  return static_cast<std::size_t>(it - elements.begin());
}

namespace {

// Recently computed prefixes. Reductions and membership tests ask for the
// same (e, fuel) prefix over and over.
class PrefixCache {
 public:
  std::optional<EnumPrefix> find(const Nat& e, std::uint64_t fuel) {
    std::lock_guard lock(mu_);
    auto it = entries_.find({e, fuel});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void store(const Nat& e, std::uint64_t fuel, const EnumPrefix& p) {
    std::lock_guard lock(mu_);
    if (!entries_.emplace(std::pair{e, fuel}, p).second) return;
    order_.emplace_back(e, fuel);
    if (order_.size() > kCapacity) {
      entries_.erase(order_.front());
      order_.pop_front();
    }
  }

 private:
  static constexpr std::size_t kCapacity = 64;
  std::mutex mu_;
  std::map<std::pair<Nat, std::uint64_t>, EnumPrefix> entries_;
  std::deque<std::pair<Nat, std::uint64_t>> order_;
};

PrefixCache& prefix_cache() {
  static PrefixCache cache;
  return cache;
}

EnumPrefix compute_prefix(const Nat& e, Fuel fuel) {
  struct Hit {
    std::uint64_t stage;
    std::uint64_t input;
  };
  std::vector<Hit> hits;
  machine::Program p = machine::decode(e);
  for (std::uint64_t i = 0; i <= fuel.max_steps; ++i) {
    if (auto h = halted(machine::run(p, Nat(i), fuel))) hits.push_back({std::max(i, h->steps + 1), i});
  }
  std::sort(hits.begin(), hits.end(),
            [](const Hit& a, const Hit& b) { return a.stage != b.stage ? a.stage < b.stage : a.input < b.input; });
  EnumPrefix out;
  out.fuel_used = fuel;
  for (const auto& h : hits) {
    out.elements.emplace_back(h.input);
    out.stages.push_back(h.stage);
  }
  return out;
}

}  // namespace

EnumPrefix enumerate_without_reps(const Nat& e, Fuel fuel) {
  // Small prefixes are cheaper to recompute than to look up.
  if (fuel.max_steps < 256) return compute_prefix(e, fuel);
  if (auto hit = prefix_cache().find(e, fuel.max_steps)) return std::move(*hit);
  EnumPrefix p = compute_prefix(e, fuel);
  prefix_cache().store(e, fuel.max_steps, p);
  return p;
}

std::string to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    case Answer::Unknown: return "unknown";
  }
  return "?";
}

GResult family_g(const Nat& e, const Nat& x, Fuel fuel) {
  auto [a, prog] = unpair(x);
  auto s = locate(e, a, fuel);
  if (!s) return Unknown{};
  if (auto h = halted(machine::run(prog, x, Fuel{*s}))) return Value{h->output};
  return Undefined{};
}

Answer bn_member(const Nat& e, const Nat& n, const Nat& x, Fuel fuel) {
  GResult g = family_g(e, x, fuel);
  if (std::holds_alternative<Unknown>(g)) return Answer::Unknown;
  if (const auto* v = std::get_if<Value>(&g)) return v->n == n ? Answer::Yes : Answer::No;
  return Answer::No;
}

ReductionResult bn_reduce_to_A(const Nat& e, const Nat& n, const Nat& x, const OracleHandle& oracle_a, Fuel fuel) {
  ReductionResult r;
  auto [a, prog] = unpair(x);
  ++r.oracle_queries;
  if (!oracle_a(a)) {
    r.verdict = false;
    return r;
  }
  // a is in A, so it has a unique position s in the enumeration.
  auto s = locate(e, a, fuel);
  if (!s) return r;
  ++r.program_runs;
  auto res = machine::run(prog, x, Fuel{*s});
  if (auto h = halted(res)) {
    r.simulated_steps = h->steps;
    r.verdict = h->output == n;
  } else {
    r.simulated_steps = *s;
    r.verdict = false;
  }
  return r;
}

ReductionResult a_reduce_to_bn(const Nat& e, const Nat& n, const Nat& x, const OracleHandle& oracle_bn, Fuel fuel) {
  ReductionResult r;
  Nat e0 = machine::const_index(n);
  ++r.oracle_queries;
  if (oracle_bn(pair(x, e0))) {
    r.verdict = true;
    return r;
  }
  ++r.program_runs;
  auto w_run = halted(machine::run(e0, pair(x, e0), Fuel{fuel.max_steps}));
  if (!w_run) return r;
  std::uint64_t w = w_run->steps;
  r.simulated_steps = w;
  // x is in A iff it sits at a position s <= w.
  auto prefix = grow_prefix(e, fuel, [&](const EnumPrefix& p) {
    auto at = p.position(x);
    return (at && *at <= w) || p.elements.size() >= w + 1;
  });
  auto s = prefix.position(x);
  if (s && *s <= w) {
    r.verdict = true;
  } else if (prefix.elements.size() >= w + 1) {
    r.verdict = false;
  }
  return r;
}

ShoenfieldPair shoenfield_pair(const Nat& e) {
  using machine::Interpreter;
  return {e, machine::smn(machine::interpreter_index(Interpreter::ShoenfieldB), e),
          machine::smn(machine::interpreter_index(Interpreter::ShoenfieldC), e)};
}

ReductionResult separator_reduction(const Nat& e, const Nat& n, const OracleHandle& oracle_d, const Nat& x, Fuel fuel) {
  ReductionResult r;
  Nat query = pair(x, n);
  ++r.oracle_queries;
  if (!oracle_d(query)) {
    r.verdict = false;
    return r;
  }
  ++r.program_runs;
  auto z_run = halted(machine::run(n, query, fuel));
  if (!z_run) return r;
  std::uint64_t steps_n = z_run->steps;
  // z = steps_n + 1; some y < z has t1(e, x, y) iff e halts on x in fewer than steps_n steps.
  ++r.program_runs;
  auto e_run = machine::run(e, x, Fuel{steps_n});
  auto h = halted(e_run);
  r.simulated_steps = steps_n + (h ? h->steps : steps_n);
  r.verdict = h.has_value();
  return r;
}

SeparatorVerdict test_separator(const Nat& iB, const Nat& iC, const OracleHandle& candidate, std::uint64_t bound,
                                Fuel fuel) {
  for (std::uint64_t i = 0; i <= bound; ++i) {
    Nat x(i);
    bool in_b = machine::w_member(iB, x, fuel).has_value();
    if (in_b && !candidate(x)) return Counterexample{x, true};
    bool in_c = !in_b && machine::w_member(iC, x, fuel).has_value();
    if (in_c && candidate(x)) return Counterexample{x, false};
  }
  return Pass{};
}

}  // namespace wb::resets
