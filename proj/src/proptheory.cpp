#include "wb/proptheory.hpp"

#include "wb/folog.hpp"

#include <cctype>
#include <stdexcept>

namespace wb::proptheory {

struct PropFormula::Node {
  Kind kind;
  Nat index;
  std::vector<PropFormula> children;
};

PropFormula PropFormula::atom(Nat n) { return PropFormula(std::make_shared<const Node>(Node{Kind::Atom, std::move(n), {}})); }
PropFormula PropFormula::negation(PropFormula a) {
  return PropFormula(std::make_shared<const Node>(Node{Kind::Not, 0, {std::move(a)}}));
}
PropFormula PropFormula::conjunction(PropFormula a, PropFormula b) {
  return PropFormula(std::make_shared<const Node>(Node{Kind::And, 0, {std::move(a), std::move(b)}}));
}
PropFormula PropFormula::disjunction(PropFormula a, PropFormula b) {
  return PropFormula(std::make_shared<const Node>(Node{Kind::Or, 0, {std::move(a), std::move(b)}}));
}
PropFormula PropFormula::implication(PropFormula a, PropFormula b) {
  return PropFormula(std::make_shared<const Node>(Node{Kind::Implies, 0, {std::move(a), std::move(b)}}));
}

PropFormula::Kind PropFormula::kind() const { return node_->kind; }
const Nat& PropFormula::index() const { return node_->index; }
const PropFormula& PropFormula::child(std::size_t i) const { return node_->children.at(i); }

std::set<Nat> PropFormula::support() const {
  std::set<Nat> out;
  if (kind() == Kind::Atom) {
    out.insert(index());
    return out;
  }
  for (const auto& c : node_->children) {
    auto s = c.support();
    out.insert(s.begin(), s.end());
  }
  return out;
}

bool PropFormula::evaluate(const std::map<Nat, bool>& v) const {
  switch (kind()) {
    case Kind::Atom: {
      auto it = v.find(index());
      return it != v.end() && it->second;
    }
    case Kind::Not: return !child().evaluate(v);
    case Kind::And: return child(0).evaluate(v) && child(1).evaluate(v);
    case Kind::Or: return child(0).evaluate(v) || child(1).evaluate(v);
    case Kind::Implies: return !child(0).evaluate(v) || child(1).evaluate(v);
  }
  return false;
}

bool PropFormula::operator==(const PropFormula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  if (kind() == Kind::Atom) return index() == other.index();
  return node_->children == other.node_->children;
}

namespace {

class PropParser {
 public:
  explicit PropParser(std::string_view s) : s_(s) {}

  PropFormula parse_all() {
    PropFormula f = formula();
    skip();
    if (pos_ < s_.size()) throw folog::ParseError("trailing input", pos_);
    return f;
  }

 private:
  void skip() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_[pos_] == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' &&
           s_[pos_] != ')')
      ++pos_;
    if (start == pos_) throw folog::ParseError("expected a word", start);
    return std::string(s_.substr(start, pos_ - start));
  }

  PropFormula atom_word(const std::string& w, std::size_t at) {
    if (w.size() < 2 || w[0] != 'p') throw folog::ParseError("expected a variable p<n>, got '" + w + "'", at);
    try {
      return PropFormula::atom(parse_nat(w.substr(1)));
    } catch (const std::invalid_argument&) {
      throw folog::ParseError("bad variable '" + w + "'", at);
    }
  }

  PropFormula formula() {
    skip();
    if (pos_ >= s_.size()) throw folog::ParseError("unexpected end of input", pos_);
    std::size_t at = pos_;
    if (s_[pos_] != '(') return atom_word(word(), at);
    ++pos_;
    std::string op = word();
    std::vector<PropFormula> args;
    for (skip(); pos_ < s_.size() && s_[pos_] != ')'; skip()) args.push_back(formula());
    if (pos_ >= s_.size()) throw folog::ParseError("missing ')'", at);
    ++pos_;
    auto need = [&](std::size_t lo, std::size_t hi) {
      if (args.size() < lo || args.size() > hi) throw folog::ParseError("wrong number of arguments to " + op, at);
    };
    if (op == "not") {
      need(1, 1);
      return PropFormula::negation(args[0]);
    }
    if (op == "->") {
      need(2, 2);
      return PropFormula::implication(args[0], args[1]);
    }
    if (op == "and" || op == "or") {
      need(2, SIZE_MAX);
      PropFormula acc = args.back();
      for (std::size_t i = args.size() - 1; i-- > 0;)
        acc = op == "and" ? PropFormula::conjunction(args[i], acc) : PropFormula::disjunction(args[i], acc);
      return acc;
    }
    throw folog::ParseError("unknown connective '" + op + "'", at);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

constexpr std::size_t kMaxFree = 24;

}  // namespace

PropFormula parse_prop(std::string_view text) { return PropParser(text).parse_all(); }

std::string print(const PropFormula& f) {
  switch (f.kind()) {
    case PropFormula::Kind::Atom: return "p" + f.index().str();
    case PropFormula::Kind::Not: return "(not " + print(f.child()) + ")";
    case PropFormula::Kind::And: return "(and " + print(f.child(0)) + " " + print(f.child(1)) + ")";
    case PropFormula::Kind::Or: return "(or " + print(f.child(0)) + " " + print(f.child(1)) + ")";
    case PropFormula::Kind::Implies: return "(-> " + print(f.child(0)) + " " + print(f.child(1)) + ")";
  }
  return "?";
}

UDecision u_decide(const PropFormula& f, const resets::OracleHandle& oracle_b, const resets::OracleHandle& oracle_c) {
  UDecision out{TriState::Independent, {}};
  std::vector<Nat> free;
  for (const auto& n : f.support()) {
    if (oracle_b(n))
      out.pins[n] = true;
    else if (oracle_c(n))
      out.pins[n] = false;
    else
      free.push_back(n);
  }
  if (free.size() > kMaxFree) throw std::length_error("too many unpinned variables");
  bool any_true = false, any_false = false;
  std::map<Nat, bool> v = out.pins;
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << free.size()); ++row) {
    for (std::size_t i = 0; i < free.size(); ++i) v[free[i]] = row >> i & 1;
    (f.evaluate(v) ? any_true : any_false) = true;
  }
  out.verdict = !any_false ? TriState::Provable : !any_true ? TriState::Refutable : TriState::Independent;
  return out;
}

std::vector<PropFormula> u_enumerate(const Nat& iB, const Nat& iC, machine::Fuel fuel) {
  std::vector<PropFormula> out;
  for (const auto& n : resets::enumerate_without_reps(iB, fuel).elements) out.push_back(PropFormula::atom(n));
  for (const auto& n : resets::enumerate_without_reps(iC, fuel).elements)
    out.push_back(PropFormula::negation(PropFormula::atom(n)));
  return out;
}

ProbeResult incompleteness_probe(const TheoremEnumerator& extension, std::uint64_t bound, machine::Fuel fuel) {
  std::set<Nat> decided;
  for (const auto& f : extension(fuel)) {
    if (f.kind() == PropFormula::Kind::Atom) decided.insert(f.index());
    if (f.kind() == PropFormula::Kind::Not && f.child().kind() == PropFormula::Kind::Atom)
      decided.insert(f.child().index());
  }
  for (std::uint64_t n = 0; n <= bound; ++n)
    if (!decided.count(Nat(n))) return Undecided{Nat(n)};
  return AllDecided{};
}

resets::ReductionResult persistence_reduction(const Nat& e, const Nat& d_index, const resets::OracleHandle& s_decider,
                                              const Nat& x, machine::Fuel fuel) {
  return resets::separator_reduction(e, d_index, s_decider, x, fuel);
}

}  // namespace wb::proptheory
