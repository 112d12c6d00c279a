#include "wb/janiczak.hpp"

#include "wb/decode.hpp"
#include "wb/godel.hpp"
#include "wb/theories.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace wb::janiczak {

using folog::Kind;

// ---------------------------------------------------------------------------
// Structures

std::uint64_t EquivalenceStructure::element_count() const {
  std::uint64_t n = 0;
  for (auto s : class_sizes) n += s;
  return n;
}

std::vector<std::uint32_t> EquivalenceStructure::class_of_elements() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 0; c < class_sizes.size(); ++c) out.insert(out.end(), class_sizes[c], c);
  return out;
}

EquivalenceStructure realize(const ClassDescriptor& d, std::uint64_t q) {
  if (d.threshold < q) throw std::invalid_argument("descriptor threshold below rank");
  if (d.large_classes < q) throw std::invalid_argument("descriptor has fewer large classes than rank");
  for (auto s : d.exact_sizes)
    if (s == 0) throw std::invalid_argument("exact class sizes must be positive");
  EquivalenceStructure m;
  m.class_sizes.assign(d.exact_sizes.begin(), d.exact_sizes.end());
  std::uint64_t base = std::max(d.threshold, q);
  if (!d.exact_sizes.empty()) base = std::max(base, *d.exact_sizes.rbegin());
  for (std::uint64_t i = 0; i < d.large_classes; ++i) m.class_sizes.push_back(base + 1 + i);
  return m;
}

// ---------------------------------------------------------------------------
// Model checking
//
// Variables live in slots numbered by binder depth. A quantifier only tries
// one element per orbit of the automorphisms fixing the values it can see,
// and lumps all untouched classes of size >= r together when r rounds of
// play remain; neither changes the truth value.

namespace {

enum class Op : std::uint8_t { Eq, E, Not, And, Or, Implies, Forall, Exists };

struct Node {
  Op op;
  std::uint32_t a = 0, b = 0;  // slots for atoms, child nodes otherwise
  std::uint32_t slot = 0;
  std::uint32_t rank = 0;
  std::uint64_t free = 0;  // slots free in this node
};

class Compiler {
 public:
  std::vector<Node> nodes;

  std::uint32_t compile(const Formula& f) {
    switch (f.kind()) {
      case Kind::Eq:
      case Kind::Rel: {
        if (f.kind() == Kind::Rel && (f.symbol() != "E" || f.terms().size() != 2))
          throw std::invalid_argument("relation '" + f.symbol() + "' is not in the signature {E/2}");
        Node n{f.kind() == Kind::Eq ? Op::Eq : Op::E};
        n.a = lookup(f.terms()[0]);
        n.b = lookup(f.terms()[1]);
        n.free = (1ull << n.a) | (1ull << n.b);
        return push(n);
      }
      case Kind::Not: {
        Node n{Op::Not};
        n.a = compile(f.child());
        n.free = nodes[n.a].free;
        n.rank = nodes[n.a].rank;
        return push(n);
      }
      case Kind::And:
      case Kind::Or:
      case Kind::Implies: {
        Node n{f.kind() == Kind::And ? Op::And : f.kind() == Kind::Or ? Op::Or : Op::Implies};
        n.a = compile(f.child(0));
        n.b = compile(f.child(1));
        n.free = nodes[n.a].free | nodes[n.b].free;
        n.rank = std::max(nodes[n.a].rank, nodes[n.b].rank);
        return push(n);
      }
      case Kind::Forall:
      case Kind::Exists: {
        if (scope_.size() >= 64) throw std::invalid_argument("quantifier nesting deeper than 64");
        Node n{f.kind() == Kind::Forall ? Op::Forall : Op::Exists};
        n.slot = static_cast<std::uint32_t>(scope_.size());
        scope_.push_back(f.symbol());
        n.a = compile(f.child());
        scope_.pop_back();
        n.free = nodes[n.a].free & ~(1ull << n.slot);
        n.rank = nodes[n.a].rank + 1;
        return push(n);
      }
    }
    throw std::logic_error("unreachable");
  }

 private:
  std::uint32_t push(const Node& n) {
    nodes.push_back(n);
    return static_cast<std::uint32_t>(nodes.size() - 1);
  }

  std::uint32_t lookup(const folog::Term& t) const {
    if (!t.variable) throw std::invalid_argument("function symbol '" + t.symbol + "' is not in the signature {E/2}");
    for (std::size_t i = scope_.size(); i-- > 0;)
      if (scope_[i] == t.symbol) return static_cast<std::uint32_t>(i);
    throw std::invalid_argument("free variable '" + t.symbol + "' in sentence");
  }

  std::vector<std::string> scope_;
};

struct Element {
  std::uint32_t cls;
  std::uint64_t idx;
  bool operator==(const Element&) const = default;
};

class Evaluator {
 public:
  Evaluator(const EquivalenceStructure& m, std::vector<Node> nodes) : m_(m), nodes_(std::move(nodes)) {
    for (std::uint32_t c = 0; c < m.class_sizes.size(); ++c) groups_[m.class_sizes[c]].push_back(c);
    candidates_.resize(65);
  }

  bool run(std::uint32_t i) {
    const Node& n = nodes_[i];
    switch (n.op) {
      case Op::Eq: return val_[n.a] == val_[n.b];
      case Op::E: return val_[n.a].cls == val_[n.b].cls;
      case Op::Not: return !run(n.a);
      case Op::And: return run(n.a) && run(n.b);
      case Op::Or: return run(n.a) || run(n.b);
      case Op::Implies: return !run(n.a) || run(n.b);
      case Op::Forall:
      case Op::Exists: {
        bool want = n.op == Op::Exists;
        auto& cands = candidates_[n.slot];
        fill_candidates(n, cands);
        for (std::size_t k = 0; k < cands.size(); ++k) {
          val_[n.slot] = cands[k];
          if (run(n.a) == want) return want;
        }
        return !want;
      }
    }
    return false;
  }

 private:
  void fill_candidates(const Node& n, std::vector<Element>& out) {
    out.clear();
    std::vector<Element> live;
    for (std::uint64_t mask = n.free; mask; mask &= mask - 1) {
      Element e = val_[std::countr_zero(mask)];
      if (std::find(live.begin(), live.end(), e) == live.end()) live.push_back(e);
    }
    out = live;
    std::vector<std::uint32_t> touched;
    for (const auto& e : live)
      if (std::find(touched.begin(), touched.end(), e.cls) == touched.end()) touched.push_back(e.cls);
    for (auto c : touched) {
      std::uint64_t fresh = 0;
      for (bool clash = true; clash;) {
        clash = false;
        for (const auto& e : live)
          if (e.cls == c && e.idx == fresh) {
            clash = true;
            ++fresh;
            break;
          }
      }
      if (fresh < m_.class_sizes[c]) out.push_back({c, fresh});
    }
    bool big_taken = false;
    for (const auto& [size, classes] : groups_) {
      if (size >= n.rank && big_taken) break;
      for (auto c : classes) {
        if (std::find(touched.begin(), touched.end(), c) != touched.end()) continue;
        out.push_back({c, 0});
        if (size >= n.rank) big_taken = true;
        break;
      }
    }
  }

  const EquivalenceStructure& m_;
  std::vector<Node> nodes_;
  std::map<std::uint64_t, std::vector<std::uint32_t>> groups_;
  Element val_[64]{};
  std::vector<std::vector<Element>> candidates_;
};

}  // namespace

bool eval_structure(const EquivalenceStructure& m, const Formula& sentence) {
  Compiler c;
  std::uint32_t root = c.compile(sentence);
  Evaluator ev(m, std::move(c.nodes));
  return ev.run(root);
}

bool eval(const ClassDescriptor& d, const Formula& sentence) {
  return eval_structure(realize(d, folog::quantifier_rank(sentence)), sentence);
}

// ---------------------------------------------------------------------------
// Boolean combinations

namespace {

constexpr std::size_t kMaxAtoms = 24;

std::vector<Nat> merge_atoms(const std::vector<Nat>& a, const std::vector<Nat>& b) {
  std::vector<Nat> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  if (out.size() > kMaxAtoms) throw std::length_error("boolean combination over too many atoms");
  return out;
}

}  // namespace

BoolCombo BoolCombo::constant(bool value) {
  BoolCombo b;
  b.table_ = {value};
  return b;
}

BoolCombo BoolCombo::atom(const Nat& n) {
  BoolCombo b;
  b.atoms_ = {n};
  b.table_ = {false, true};
  return b;
}

BoolCombo BoolCombo::from_table(std::vector<Nat> atoms, std::vector<bool> table) {
  if (!std::is_sorted(atoms.begin(), atoms.end()) ||
      std::adjacent_find(atoms.begin(), atoms.end()) != atoms.end())
    throw std::invalid_argument("atoms must be strictly increasing");
  if (atoms.size() > kMaxAtoms || table.size() != (std::size_t{1} << atoms.size()))
    throw std::invalid_argument("truth table size does not match atom count");
  BoolCombo b;
  b.atoms_ = std::move(atoms);
  b.table_ = std::move(table);
  return b;
}

BoolCombo BoolCombo::expand(const std::vector<Nat>& atoms) const {
  std::vector<std::size_t> where;
  for (const auto& a : atoms_)
    where.push_back(static_cast<std::size_t>(std::lower_bound(atoms.begin(), atoms.end(), a) - atoms.begin()));
  BoolCombo out;
  out.atoms_ = atoms;
  out.table_.resize(std::size_t{1} << atoms.size());
  for (std::size_t r = 0; r < out.table_.size(); ++r) {
    std::size_t old = 0;
    for (std::size_t i = 0; i < where.size(); ++i)
      if (r >> where[i] & 1) old |= std::size_t{1} << i;
    out.table_[r] = table_[old];
  }
  return out;
}

BoolCombo BoolCombo::combine(const BoolCombo& other, int op) const {
  auto atoms = merge_atoms(atoms_, other.atoms_);
  BoolCombo l = expand(atoms), r = other.expand(atoms);
  for (std::size_t i = 0; i < l.table_.size(); ++i) {
    bool a = l.table_[i], b = r.table_[i];
    l.table_[i] = op == 0 ? (a && b) : op == 1 ? (a || b) : (!a || b);
  }
  return l.reduced();
}

BoolCombo BoolCombo::operator!() const {
  BoolCombo out = *this;
  out.table_.flip();
  return out;
}

BoolCombo BoolCombo::operator&&(const BoolCombo& other) const { return combine(other, 0); }
BoolCombo BoolCombo::operator||(const BoolCombo& other) const { return combine(other, 1); }
BoolCombo BoolCombo::implies(const BoolCombo& other) const { return combine(other, 2); }

bool BoolCombo::evaluate(const Pins& values) const {
  std::size_t row = 0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    auto it = values.find(atoms_[i]);
    if (it != values.end() && it->second) row |= std::size_t{1} << i;
  }
  return table_[row];
}

BoolCombo BoolCombo::reduced() const {
  BoolCombo out = *this;
  for (std::size_t i = out.atoms_.size(); i-- > 0;) {
    std::size_t bit = std::size_t{1} << i;
    bool depends = false;
    for (std::size_t r = 0; r < out.table_.size() && !depends; ++r)
      if (!(r & bit) && out.table_[r] != out.table_[r | bit]) depends = true;
    if (depends) continue;
    std::vector<bool> smaller;
    smaller.reserve(out.table_.size() / 2);
    for (std::size_t r = 0; r < out.table_.size(); ++r)
      if (!(r & bit)) smaller.push_back(out.table_[r]);
    out.table_ = std::move(smaller);
    out.atoms_.erase(out.atoms_.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return out;
}

std::vector<Nat> BoolCombo::support() const { return reduced().atoms_; }

Nat BoolCombo::sup_plus() const {
  auto s = support();
  return s.empty() ? Nat(0) : s.back() + 1;
}

std::optional<bool> BoolCombo::constant_value() const {
  BoolCombo r = reduced();
  if (!r.atoms_.empty()) return std::nullopt;
  return r.table_[0];
}

std::vector<std::vector<Nat>> BoolCombo::satisfying_profiles() const {
  BoolCombo r = reduced();
  std::vector<std::vector<Nat>> out;
  for (std::size_t row = 0; row < r.table_.size(); ++row) {
    if (!r.table_[row]) continue;
    std::vector<Nat> on;
    for (std::size_t i = 0; i < r.atoms_.size(); ++i)
      if (row >> i & 1) on.push_back(r.atoms_[i]);
    out.push_back(std::move(on));
  }
  return out;
}

std::string BoolCombo::to_string() const {
  BoolCombo r = reduced();
  if (r.atoms_.empty()) return r.table_[0] ? "true" : "false";
  std::string out;
  for (std::size_t row = 0; row < r.table_.size(); ++row) {
    if (!r.table_[row]) continue;
    if (!out.empty()) out += " | ";
    std::string term;
    for (std::size_t i = 0; i < r.atoms_.size(); ++i) {
      if (!term.empty()) term += " & ";
      term += (row >> i & 1 ? "Phi" : "~Phi") + r.atoms_[i].str();
    }
    out += r.atoms_.size() > 1 ? "(" + term + ")" : term;
  }
  return out;
}

bool BoolCombo::operator==(const BoolCombo& other) const {
  auto atoms = merge_atoms(atoms_, other.atoms_);
  return expand(atoms).table_ == other.expand(atoms).table_;
}

Pins SignedConjunction::pins() const {
  Pins p;
  for (std::uint64_t i = 0; i < n; ++i) p[Nat(i)] = boost::multiprecision::bit_test(j, static_cast<unsigned>(i));
  return p;
}

BoolCombo SignedConjunction::combo() const {
  BoolCombo out = BoolCombo::constant(true);
  for (const auto& [atom, sign] : pins()) out = out && (sign ? BoolCombo::atom(atom) : !BoolCombo::atom(atom));
  return out;
}

// ---------------------------------------------------------------------------
// Quantifier elimination

BoolCombo qe_semantic(const Formula& sentence, std::uint64_t cutoff) {
  if (cutoff > kMaxAtoms) throw std::length_error("profile cut-off too large");
  std::uint64_t q = folog::quantifier_rank(sentence);
  std::uint64_t pad = q + cutoff + 1;
  Compiler c;
  std::uint32_t root = c.compile(sentence);
  std::vector<Nat> atoms;
  for (std::uint64_t n = 0; n < cutoff; ++n) atoms.emplace_back(n);
  std::vector<bool> table(std::size_t{1} << cutoff);
  for (std::size_t profile = 0; profile < table.size(); ++profile) {
    ClassDescriptor d;
    d.large_classes = d.threshold = pad;
    for (std::uint64_t n = 0; n < cutoff; ++n)
      if (profile >> n & 1) d.exact_sizes.insert(n + 1);
    EquivalenceStructure m = realize(d, q);
    Evaluator ev(m, c.nodes);
    table[profile] = ev.run(root);
  }
  return BoolCombo::from_table(std::move(atoms), std::move(table)).reduced();
}

namespace {

BoolCombo qe_rec(const Formula& f) {
  if (auto k = folog::as_phi(f)) return BoolCombo::atom(*k);
  switch (f.kind()) {
    case Kind::Not: return !qe_rec(f.child());
    case Kind::And: return qe_rec(f.child(0)) && qe_rec(f.child(1));
    case Kind::Or: return qe_rec(f.child(0)) || qe_rec(f.child(1));
    case Kind::Implies: return qe_rec(f.child(0)).implies(qe_rec(f.child(1)));
    case Kind::Forall:
    case Kind::Exists: return qe_semantic(f, folog::quantifier_rank(f));
    default: throw std::invalid_argument("atomic sentence outside the signature {E/2}");
  }
}

}  // namespace

BoolCombo qe(const Formula& sentence) {
  folog::check_formula(sentence, folog::signature_J());
  if (!folog::is_sentence(sentence)) throw std::invalid_argument("qe expects a sentence");
  return qe_rec(sentence);
}

std::optional<BoolCombo> qe_code(const Nat& code) {
  if (auto k = folog::phi_index_of_code(code)) return BoolCombo::atom(*k);
  if (auto k = folog::negated_phi_index_of_code(code)) return !BoolCombo::atom(*k);
  auto f = folog::ungodel(code);
  if (!f || !folog::well_formed(*f, folog::signature_J()) || !folog::is_sentence(*f)) return std::nullopt;
  return qe(*f);
}

TriState decide_combo(const BoolCombo& b, const Pins& pins) {
  const auto& atoms = b.atoms();
  std::size_t mask = 0, want = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    auto it = pins.find(atoms[i]);
    if (it == pins.end()) continue;
    mask |= std::size_t{1} << i;
    if (it->second) want |= std::size_t{1} << i;
  }
  bool any_true = false, any_false = false;
  const auto& table = b.table();
  for (std::size_t row = want; row < table.size() && !(any_true && any_false); ++row) {
    if ((row & mask) != want) continue;
    (table[row] ? any_true : any_false) = true;
  }
  if (!any_false) return TriState::Provable;
  if (!any_true) return TriState::Refutable;
  return TriState::Independent;
}

TriState decide_J(const Formula& sentence) { return decide_combo(qe(sentence), {}); }

TriState decide_J_plus(const Formula& sentence, const SignedConjunction& c) {
  return decide_combo(qe(sentence), c.pins());
}

TriState decide_J_plus(const Formula& sentence, const BoolCombo& c) {
  BoolCombo q = qe(sentence);
  if (decide_combo(c.implies(q), {}) == TriState::Provable) return TriState::Provable;
  if (decide_combo(c && q, {}) == TriState::Refutable) return TriState::Refutable;
  return TriState::Independent;
}

std::vector<Nat> support(const BoolCombo& b) { return b.support(); }
Nat sup_plus(const BoolCombo& b) { return b.sup_plus(); }

TbcDecision tbc_decide(const Formula& sentence, const resets::OracleHandle& oracle_b,
                       const resets::OracleHandle& oracle_c) {
  BoolCombo b = qe(sentence).reduced();
  TbcDecision out{TriState::Independent, {}};
  for (const auto& n : b.atoms()) {
    if (oracle_b(n))
      out.literals_used[n] = true;
    else if (oracle_c(n))
      out.literals_used[n] = false;
  }
  out.verdict = decide_combo(b, out.literals_used);
  return out;
}

std::vector<Nat> tbc_enumerate(const Nat& iB, const Nat& iC, machine::Fuel fuel) {
  std::set<Nat> out;
  Pins pins;
  for (const auto& n : resets::enumerate_without_reps(iB, fuel).elements) {
    pins[n] = true;
    out.insert(4 * n + 1);
  }
  for (const auto& n : resets::enumerate_without_reps(iC, fuel).elements) {
    if (pins.count(n)) continue;
    pins[n] = false;
    out.insert(4 * n + 3);
  }
  folog::Signature sig = folog::signature_J();
  std::uint64_t budget = static_cast<std::uint64_t>(boost::multiprecision::sqrt(Nat(fuel.max_steps)));
  for (std::uint64_t c = 0; c < budget; ++c) {
    Formula f = folog::decode_formula(Nat(c), sig, {});
    if (decide_combo(qe(f), pins) == TriState::Provable) out.insert(folog::godel(f));
  }
  return {out.begin(), out.end()};
}

Nat theory_index(const Nat& iB, const Nat& iC) {
  return machine::smn(machine::interpreter_index(machine::Interpreter::TbcTheorems), pair(iB, iC));
}

}  // namespace wb::janiczak
