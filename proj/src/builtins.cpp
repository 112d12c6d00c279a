#include "builtins.hpp"

#include "wb/godel.hpp"
#include "wb/janiczak.hpp"

#include <algorithm>
#include <optional>

namespace wb::machine::detail {

namespace {

Exec diverged(std::uint64_t limit) { return {false, limit, 0}; }

/// Step accounting for one interpreter call: one step on entry, then every
/// nested step is charged against what is left.
class Meter {
 public:
  explicit Meter(std::uint64_t limit) : limit_(limit), used_(1) {}

  std::uint64_t left() const { return used_ >= limit_ ? 0 : limit_ - used_; }
  bool exhausted() const { return used_ > limit_; }

  Exec nested(const Nat& e, const Nat& x, std::uint64_t cap = UINT64_MAX) {
    Exec r = exec(e, x, std::min(cap, left()));
    used_ += r.steps;
    return r;
  }
  void charge(std::uint64_t n) { used_ += n; }

  Exec done(Nat output) const { return {true, used_, std::move(output)}; }
  Exec out_of_fuel() const { return diverged(limit_); }

 private:
  std::uint64_t limit_;
  std::uint64_t used_;
};

Exec diag(const Nat& x, std::uint64_t limit) {
  auto [u, arg] = unpair(x);
  Meter m(limit);
  Exec first = m.nested(u, u);
  if (!first.halted) return m.out_of_fuel();
  Exec second = m.nested(first.output, arg);
  if (!second.halted) return m.out_of_fuel();
  return m.done(second.output);
}

Exec compose_diag(const Nat& x, std::uint64_t limit) {
  auto [t, arg] = unpair(x);
  Meter m(limit);
  Exec r = m.nested(t, diag_index(arg));
  if (!r.halted) return m.out_of_fuel();
  return m.done(r.output);
}

// y = (steps of e on (x)_0) + 1; B holds when (x)_1 on x needs more than
// y-1 steps, C when it halts within them.
Exec shoenfield(const Nat& x, std::uint64_t limit, bool want_b) {
  auto [e, arg] = unpair(x);
  auto [a, p] = unpair(arg);
  Meter m(limit);
  Exec source = m.nested(e, a);
  if (!source.halted) return m.out_of_fuel();
  std::uint64_t window = source.steps;
  // B has to watch p for the whole window.
  if (want_b && m.left() < window) return m.out_of_fuel();
  Exec inner = m.nested(p, arg, window);
  if (want_b) {
    if (inner.halted) return diverged(limit);
    return m.done(0);
  }
  if (!inner.halted) return m.out_of_fuel();
  return m.done(0);
}

// Stage k gives every pending literal a budget of 2^k steps.
Exec tbc_theorems(const Nat& x, std::uint64_t limit) {
  auto [ib_ic, code] = unpair(x);
  auto [iB, iC] = unpair(ib_ic);
  std::optional<janiczak::BoolCombo> combo;
  try {
    combo = janiczak::qe_code(code);
  } catch (const std::exception&) {
    combo.reset();
  }
  if (!combo) return diverged(limit);
  janiczak::BoolCombo b = combo->reduced();
  janiczak::Pins pins;
  Meter m(limit);
  for (unsigned k = 0;; ++k) {
    if (janiczak::decide_combo(b, pins) == TriState::Provable) return m.done(0);
    m.charge(1);
    if (m.exhausted()) return m.out_of_fuel();
    std::uint64_t budget = k >= 63 ? UINT64_MAX : (std::uint64_t{1} << k);
    for (const auto& atom : b.atoms()) {
      if (pins.count(atom)) continue;
      if (m.nested(iB, atom, budget).halted) {
        pins[atom] = true;
        continue;
      }
      if (m.exhausted()) return m.out_of_fuel();
      if (m.nested(iC, atom, budget).halted) pins[atom] = false;
    }
    if (m.exhausted()) return m.out_of_fuel();
  }
}

Exec preimage_phi(const Nat& x, std::uint64_t limit) {
  auto [i, n] = unpair(x);
  Meter m(limit);
  Exec r = m.nested(i, folog::phi_code(n));
  if (!r.halted) return m.out_of_fuel();
  return m.done(r.output);
}

Exec race_indexer(const Nat& x, std::uint64_t) {
  return {true, 1, smn(interpreter_index(Interpreter::Race), x)};
}

// Output 1 when m turns up in W_a no later than in W_b, 0 when W_b wins.
Exec race(const Nat& x, std::uint64_t limit) {
  Nat spec = unpair0(x);
  auto [ab, target] = unpair(spec);
  auto [a, b] = unpair(ab);
  Meter m(limit);
  for (unsigned k = 0;; ++k) {
    m.charge(1);
    if (m.exhausted()) return m.out_of_fuel();
    std::uint64_t budget = k >= 63 ? UINT64_MAX : (std::uint64_t{1} << k);
    Exec ra = m.nested(a, target, budget);
    if (ra.halted) {
      if (ra.steps == 0) return m.done(1);
      // b wins only with strictly fewer steps.
      std::uint64_t need = ra.steps - 1;
      if (m.left() < need) return m.out_of_fuel();
      return m.done(m.nested(b, target, need).halted ? 0 : 1);
    }
    if (ra.steps < budget) return m.out_of_fuel();
    Exec rb = m.nested(b, target, budget);
    if (rb.halted) return m.done(0);
    if (rb.steps < budget) return m.out_of_fuel();
  }
}

Exec phi_code_of(const Nat& x, std::uint64_t) { return {true, 1, folog::phi_code(x)}; }

}  // namespace

Exec run_interpreter(const Nat& id, const Nat& x, std::uint64_t limit) {
  if (limit == 0) return diverged(0);
  auto which = to_u64(id);
  if (!which) return diverged(limit);
  switch (static_cast<Interpreter>(*which)) {
    case Interpreter::Diag: return diag(x, limit);
    case Interpreter::ComposeDiag: return compose_diag(x, limit);
    case Interpreter::ShoenfieldB: return shoenfield(x, limit, true);
    case Interpreter::ShoenfieldC: return shoenfield(x, limit, false);
    case Interpreter::TbcTheorems: return tbc_theorems(x, limit);
    case Interpreter::PreimagePhi: return preimage_phi(x, limit);
    case Interpreter::RaceIndexer: return race_indexer(x, limit);
    case Interpreter::Race: return race(x, limit);
    case Interpreter::PhiCode: return phi_code_of(x, limit);
  }
  return diverged(limit);
}

}  // namespace wb::machine::detail
