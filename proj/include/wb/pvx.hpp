#pragma once

// The recursive set X = range(F) built against an essentially undecidable
// U, the EI pair inside X, the theory V over J, the weaker theory U (+) V,
// and the index maps h and s.

#include "wb/calculus.hpp"
#include "wb/janiczak.hpp"
#include "wb/machine.hpp"
#include "wb/theoryalg.hpp"
#include "wb/translate.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace wb::pvx {

using folog::Formula;
using machine::Fuel;
using theoryalg::TheoryPresentation;

/// tau_i from src into {E/2}.
folog::Translation enum_translation(const folog::Signature& src, const Nat& i);

/// Sentences of U derived within fuel additions of the prover.
std::vector<calculus::Theorem> enum_theorems(const TheoryPresentation& u, Fuel fuel);

/// One class of j < 2^n handled together: every j agreeing with
/// `representative` on the bits in `mask` gets the same t value.
struct StepRecord {
  std::uint64_t n = 0;
  Nat i;
  Nat representative;
  Nat mask;
  std::uint64_t m = 0;
  Formula theorem;
  calculus::ProofLog proof;
  Formula translated;
  std::vector<Nat> support;
  Nat t;
};

struct XCertificate {
  std::vector<Nat> values;  // F(0), F(1), ...
  std::vector<StepRecord> records;
};

struct FValue {
  Nat value;
  std::vector<StepRecord> records;
};

/// Lazily enumerates U's theorems (fuel = prover additions) and caches the
/// qe of every translated theorem.
class Construction {
 public:
  Construction(TheoryPresentation u, Fuel fuel);

  /// Least m with J + C_{n,j} not proving tau_i(phi_m); sup_plus of its qe.
  std::optional<Nat> t_value(std::uint64_t n, const Nat& i, const Nat& j);
  /// max(n+1, t_value(n, i, j) for all j < 2^n), j handled in classes.
  std::optional<FValue> f_value(std::uint64_t n, const Nat& i);
  std::optional<Nat> big_F(std::uint64_t n);
  /// F(0..n) with the records of every step.
  std::optional<XCertificate> certificate(std::uint64_t n);
  std::optional<bool> x_member(const Nat& s);

  const TheoryPresentation& theory() const { return u_; }
  /// Theorem m and its proof, if reachable within fuel.
  const calculus::Theorem* theorem(std::uint64_t m);
  std::vector<Formula> premises_seen() const { return prover_.premises_seen(); }

 private:
  const janiczak::BoolCombo* combo(const Nat& i, std::uint64_t m);
  const folog::Translation& translation(const Nat& i);

  TheoryPresentation u_;
  Fuel fuel_;
  calculus::Prover prover_;
  std::vector<calculus::Theorem> theorems_;
  std::map<Nat, folog::Translation> translations_;
  std::map<std::pair<Nat, std::uint64_t>, janiczak::BoolCombo> combos_;
  std::map<std::pair<Nat, std::uint64_t>, Formula> translated_;
  std::vector<FValue> f_cache_;  // F(1), F(2), ... records
  std::vector<Nat> values_{Nat(0)};
};

/// Independent re-check: every recorded theorem has a valid proof from U's
/// axioms, re-translates to the recorded formula, and fails in some
/// descriptor model of J + C_{n,j}; F grows by at least 2 per step.
bool verify_certificate(const XCertificate& cert, const TheoryPresentation& u, Fuel fuel);

struct EIPair {
  std::vector<Nat> y;  // F[K0]
  std::vector<Nat> z;  // F[K1]
  /// Indices certified in K0 or K1 whose F value ran out of fuel.
  std::vector<Nat> pending;
};

/// Self-application of e <= max_index within machine fuel; F computed by c.
EIPair ei_pair_in_X(Construction& c, Fuel machine_fuel, std::uint64_t max_index = 8);

/// J interleaved with Phi_n (n in Y) and not Phi_n (n in Z).
TheoryPresentation build_V(const std::vector<Nat>& y, const std::vector<Nat>& z);
/// U (+) V for the EI pair found at this fuel.
TheoryPresentation build_weaker(Construction& c, Fuel machine_fuel, std::uint64_t max_index = 8);

struct HValue {
  Nat code;     // code of Phi_witness
  Nat witness;  // t(g(i), g(j))
};

/// h(i, j) = f(t(g(i), g(j))): f maps n to the code of Phi_n, g pulls W_i
/// back along f, t is the productive function of (K0, K1).
HValue h_ei(const Nat& i, const Nat& j);
Nat g_index(const Nat& i);
Nat ei_witness(const Nat& a, const Nat& b);

/// s(e) = theory_index of the Shoenfield pair of W_e.
Nat s_index(const Nat& e);

}  // namespace wb::pvx
