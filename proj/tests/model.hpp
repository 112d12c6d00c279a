#pragma once

// Brute-force evaluation of first-order formulas in small finite structures.

#include "wb/folog.hpp"

#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace model {

using wb::folog::Formula;
using wb::folog::Kind;
using wb::folog::Term;

struct Structure {
  unsigned size = 1;
  std::map<std::string, std::set<std::vector<unsigned>>> relations;
  std::map<std::string, std::map<std::vector<unsigned>, unsigned>> functions;
};

using Env = std::map<std::string, unsigned>;

inline unsigned eval_term(const Structure& m, const Term& t, const Env& env) {
  if (t.variable) {
    auto it = env.find(t.symbol);
    if (it == env.end()) throw std::logic_error("unbound variable " + t.symbol);
    return it->second;
  }
  std::vector<unsigned> args;
  for (const auto& a : t.args) args.push_back(eval_term(m, a, env));
  return m.functions.at(t.symbol).at(args);
}

inline bool holds(const Structure& m, const Formula& f, Env env) {
  switch (f.kind()) {
    case Kind::Eq: return eval_term(m, f.terms()[0], env) == eval_term(m, f.terms()[1], env);
    case Kind::Rel: {
      std::vector<unsigned> args;
      for (const auto& a : f.terms()) args.push_back(eval_term(m, a, env));
      auto it = m.relations.find(f.symbol());
      return it != m.relations.end() && it->second.count(args) != 0;
    }
    case Kind::Not: return !holds(m, f.child(0), env);
    case Kind::And: return holds(m, f.child(0), env) && holds(m, f.child(1), env);
    case Kind::Or: return holds(m, f.child(0), env) || holds(m, f.child(1), env);
    case Kind::Implies: return !holds(m, f.child(0), env) || holds(m, f.child(1), env);
    case Kind::Forall:
    case Kind::Exists: {
      bool all = f.kind() == Kind::Forall;
      for (unsigned v = 0; v < m.size; ++v) {
        env[f.symbol()] = v;
        if (holds(m, f.child(0), env) != all) return !all;
      }
      return all;
    }
  }
  return false;
}

inline std::vector<std::vector<unsigned>> tuples(unsigned size, unsigned arity) {
  std::vector<std::vector<unsigned>> out{{}};
  for (unsigned k = 0; k < arity; ++k) {
    std::vector<std::vector<unsigned>> next;
    for (const auto& t : out)
      for (unsigned v = 0; v < size; ++v) {
        auto u = t;
        u.push_back(v);
        next.push_back(u);
      }
    out = std::move(next);
  }
  return out;
}

/// Random structure for a signature, every relation tuple present with probability 1/2.
inline Structure random_structure(const wb::folog::Signature& sig, unsigned size, std::mt19937_64& rng) {
  Structure m;
  m.size = size;
  for (const auto& [name, arity] : sig.relations()) {
    auto& rel = m.relations[name];
    for (const auto& t : tuples(size, arity))
      if (rng() & 1) rel.insert(t);
  }
  for (const auto& [name, arity] : sig.functions()) {
    auto& fn = m.functions[name];
    for (const auto& t : tuples(size, arity)) fn[t] = static_cast<unsigned>(rng() % size);
  }
  return m;
}

/// Equivalence relation E with the given class sizes.
inline Structure equivalence(const std::vector<unsigned>& class_sizes) {
  Structure m;
  std::vector<unsigned> cls;
  for (unsigned c = 0; c < class_sizes.size(); ++c)
    for (unsigned k = 0; k < class_sizes[c]; ++k) cls.push_back(c);
  m.size = static_cast<unsigned>(cls.size());
  auto& e = m.relations["E"];
  for (unsigned a = 0; a < m.size; ++a)
    for (unsigned b = 0; b < m.size; ++b)
      if (cls[a] == cls[b]) e.insert({a, b});
  return m;
}

}  // namespace model
