#include "wb/pvx.hpp"

#include "wb/decode.hpp"
#include "wb/godel.hpp"
#include "wb/resets.hpp"
#include "wb/theories.hpp"

#include <algorithm>
#include <deque>

namespace wb::pvx {

using janiczak::BoolCombo;
using janiczak::Pins;

folog::Translation enum_translation(const folog::Signature& src, const Nat& i) {
  return folog::enum_translation(src, folog::signature_J(), i);
}

std::vector<calculus::Theorem> enum_theorems(const TheoryPresentation& u, Fuel fuel) {
  return calculus::enum_theorems(u.signature, u.axiom, fuel);
}

Construction::Construction(TheoryPresentation u, Fuel fuel)
    : u_(std::move(u)), fuel_(fuel), prover_(u_.signature, u_.axiom) {}

const calculus::Theorem* Construction::theorem(std::uint64_t m) {
  while (theorems_.size() <= m) {
    const auto& ids = prover_.sentences();
    if (ids.size() > theorems_.size()) {
      std::size_t id = ids[theorems_.size()];
      theorems_.push_back({prover_.formula(id), prover_.certificate(id)});
      continue;
    }
    std::uint64_t before = prover_.additions();
    if (before >= fuel_.max_steps) return nullptr;
    prover_.run(std::min<std::uint64_t>(fuel_.max_steps, before + 256));
    if (prover_.additions() == before) return nullptr;
  }
  return &theorems_[m];
}

const folog::Translation& Construction::translation(const Nat& i) {
  auto it = translations_.find(i);
  if (it == translations_.end()) it = translations_.emplace(i, enum_translation(u_.signature, i)).first;
  return it->second;
}

const BoolCombo* Construction::combo(const Nat& i, std::uint64_t m) {
  auto key = std::make_pair(i, m);
  if (auto it = combos_.find(key); it != combos_.end()) return &it->second;
  const calculus::Theorem* th = theorem(m);
  if (!th) return nullptr;
  Formula psi = folog::translate(th->sentence, translation(i));
  translated_.emplace(key, psi);
  return &combos_.emplace(key, janiczak::qe(psi).reduced()).first->second;
}

std::optional<Nat> Construction::t_value(std::uint64_t n, const Nat& i, const Nat& j) {
  Pins pins = janiczak::SignedConjunction{n, j}.pins();
  for (std::uint64_t m = 0;; ++m) {
    const BoolCombo* c = combo(i, m);
    if (!c) return std::nullopt;
    if (janiczak::decide_combo(*c, pins) != TriState::Provable) return c->sup_plus();
  }
}

std::optional<FValue> Construction::f_value(std::uint64_t n, const Nat& i) {
  struct Cls {
    Pins pins;
    std::uint64_t m;
  };
  std::deque<Cls> todo{{Pins{}, 0}};
  FValue out{Nat(n + 1), {}};
  while (!todo.empty()) {
    Cls cls = std::move(todo.front());
    todo.pop_front();
    for (std::uint64_t m = cls.m;; ++m) {
      const BoolCombo* c = combo(i, m);
      if (!c) return std::nullopt;
      std::vector<Nat> open;
      for (const auto& a : c->atoms())
        if (a < n && !cls.pins.count(a)) open.push_back(a);
      if (!open.empty()) {
        // The verdict depends on bits of j not fixed yet: split the class.
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << open.size()); ++bits) {
          Cls sub{cls.pins, m};
          for (std::size_t k = 0; k < open.size(); ++k) sub.pins[open[k]] = bits >> k & 1;
          todo.push_back(std::move(sub));
        }
        break;
      }
      if (janiczak::decide_combo(*c, cls.pins) == TriState::Provable) continue;
      Nat rep, mask;
      for (const auto& [atom, sign] : cls.pins) {
        unsigned bit = static_cast<unsigned>(atom);
        boost::multiprecision::bit_set(mask, bit);
        if (sign) boost::multiprecision::bit_set(rep, bit);
      }
      StepRecord r{n,           i, rep, mask, m, theorems_[m].sentence, theorems_[m].certificate,
                   translated_.at({i, m}), c->support(), c->sup_plus()};
      out.value = std::max(out.value, r.t);
      out.records.push_back(std::move(r));
      break;
    }
  }
  std::sort(out.records.begin(), out.records.end(),
            [](const StepRecord& a, const StepRecord& b) { return a.representative < b.representative; });
  return out;
}

std::optional<Nat> Construction::big_F(std::uint64_t n) {
  while (values_.size() <= n) {
    std::uint64_t k = values_.size() - 1;
    auto next_n = to_u64(values_.back() + 1);
    if (!next_n) return std::nullopt;
    auto fv = f_value(*next_n, Nat(k));
    if (!fv) return std::nullopt;
    values_.push_back(fv->value);
    f_cache_.push_back(std::move(*fv));
  }
  return values_[n];
}

std::optional<XCertificate> Construction::certificate(std::uint64_t n) {
  if (!big_F(n)) return std::nullopt;
  XCertificate cert;
  cert.values.assign(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(n + 1));
  for (std::uint64_t k = 0; k < n; ++k)
    cert.records.insert(cert.records.end(), f_cache_[k].records.begin(), f_cache_[k].records.end());
  return cert;
}

std::optional<bool> Construction::x_member(const Nat& s) {
  for (std::uint64_t k = 0;; ++k) {
    auto v = big_F(k);
    if (!v) return std::nullopt;
    if (*v == s) return true;
    if (*v > s) return false;
  }
}

namespace {

// Some descriptor model of J + C_{n,j} falsifies psi. Atoms below n follow
// j; atoms from n up to the cut-off are tried both ways.
bool refutable_in_some_model(const Formula& psi, std::uint64_t n, const Nat& j) {
  std::uint64_t q = folog::quantifier_rank(psi);
  std::uint64_t cutoff = std::max(n, q);
  std::uint64_t open = cutoff - n;
  if (open > 16) open = 16;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << open); ++bits) {
    janiczak::ClassDescriptor d;
    d.threshold = d.large_classes = q + cutoff + 1;
    for (std::uint64_t k = 0; k < n; ++k)
      if (boost::multiprecision::bit_test(j, static_cast<unsigned>(k))) d.exact_sizes.insert(k + 1);
    for (std::uint64_t k = 0; k < open; ++k)
      if (bits >> k & 1) d.exact_sizes.insert(n + k + 1);
    if (!janiczak::eval(d, psi)) return true;
  }
  return false;
}

}  // namespace

bool verify_certificate(const XCertificate& cert, const TheoryPresentation& u, Fuel fuel) {
  if (cert.values.empty() || cert.values[0] != 0) return false;
  for (std::size_t k = 1; k < cert.values.size(); ++k)
    if (cert.values[k] < cert.values[k - 1] + 2) return false;
  auto premises = u.prefix(std::min<std::uint64_t>(fuel.max_steps, 4096));
  for (const auto& r : cert.records) {
    if (r.proof.steps.empty() || r.proof.conclusion() != r.theorem) return false;
    if (!calculus::check_proof_log(r.proof, premises)) return false;
    if (folog::translate(r.theorem, enum_translation(u.signature, r.i)) != r.translated) return false;
    // Check up to 64 members of the class, always including the representative.
    std::vector<unsigned> free_bits;
    for (unsigned k = 0; k < r.n; ++k)
      if (!boost::multiprecision::bit_test(r.mask, k)) free_bits.push_back(k);
    std::uint64_t members = free_bits.size() >= 6 ? 64 : (std::uint64_t{1} << free_bits.size());
    for (std::uint64_t v = 0; v < members; ++v) {
      Nat j = r.representative;
      for (std::size_t b = 0; b < free_bits.size() && b < 6; ++b)
        if (v >> b & 1) boost::multiprecision::bit_set(j, free_bits[b]);
      if (!refutable_in_some_model(r.translated, r.n, j)) return false;
    }
  }
  return true;
}

EIPair ei_pair_in_X(Construction& c, Fuel machine_fuel, std::uint64_t max_index) {
  EIPair out;
  for (std::uint64_t e = 0; e <= max_index; ++e) {
    auto r = machine::run(Nat(e), Nat(e), machine_fuel);
    const auto* h = std::get_if<machine::Halted>(&r);
    if (!h || h->output > 1) continue;
    auto v = c.big_F(e);
    if (!v) {
      out.pending.emplace_back(e);
      continue;
    }
    (h->output == 0 ? out.y : out.z).push_back(*v);
  }
  return out;
}

TheoryPresentation build_V(const std::vector<Nat>& y, const std::vector<Nat>& z) {
  std::vector<Formula> pos, neg;
  for (const auto& n : y) pos.push_back(folog::phi(static_cast<std::uint64_t>(n)));
  for (const auto& n : z) neg.push_back(Formula::negation(folog::phi(static_cast<std::uint64_t>(n))));
  auto sig = folog::signature_J();
  return theoryalg::interleave("V", sig,
                               {theoryalg::theory_J(), TheoryPresentation::finite("Y", sig, std::move(pos)),
                                TheoryPresentation::finite("Z", sig, std::move(neg))});
}

TheoryPresentation build_weaker(Construction& c, Fuel machine_fuel, std::uint64_t max_index) {
  EIPair p = ei_pair_in_X(c, machine_fuel, max_index);
  return theoryalg::infimum(c.theory(), build_V(p.y, p.z));
}

Nat g_index(const Nat& i) { return machine::smn(machine::interpreter_index(machine::Interpreter::PreimagePhi), i); }

Nat ei_witness(const Nat& a, const Nat& b) {
  return machine::kleene_fixed_point(
      machine::smn(machine::interpreter_index(machine::Interpreter::RaceIndexer), pair(a, b)));
}

HValue h_ei(const Nat& i, const Nat& j) {
  Nat t = ei_witness(g_index(i), g_index(j));
  return {folog::phi_code(t), t};
}

Nat s_index(const Nat& e) {
  auto p = resets::shoenfield_pair(e);
  return janiczak::theory_index(p.iB, p.iC);
}

}  // namespace wb::pvx
