#include "wb/folog.hpp"

#include <cctype>

namespace wb::folog {

namespace {

struct Token {
  enum Type { Open, Close, Atom, End } type;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    if (pos_ >= src_.size()) return {Token::End, {}, pos_};
    std::size_t start = pos_;
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      return {Token::Open, "(", start};
    }
    if (c == ')') {
      ++pos_;
      return {Token::Close, ")", start};
    }
    while (pos_ < src_.size()) {
      char d = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';') break;
      ++pos_;
    }
    return {Token::Atom, std::string(src_.substr(start, pos_ - start)), start};
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::string_view src, const Signature& sig) : lex_(src), sig_(sig) { advance(); }

  Formula formula() {
    if (cur_.type == Token::Atom) {
      Token t = take();
      if (sig_.has_relation(t.text)) {
        if (sig_.relation_arity(t.text) != 0)
          throw ParseError("relation '" + t.text + "' expects " + std::to_string(sig_.relation_arity(t.text)) +
                               " arguments, got 0",
                           t.pos);
        return Formula::relation(t.text);
      }
      throw ParseError("expected formula, got '" + t.text + "'", t.pos);
    }
    Token open = expect(Token::Open, "'('");
    if (cur_.type != Token::Atom) throw ParseError("expected connective or relation", cur_.pos);
    Token head = take();
    const std::string& h = head.text;
    Formula result = [&]() -> Formula {
      if (h == "forall" || h == "exists") {
        if (cur_.type != Token::Atom) throw ParseError("expected bound variable", cur_.pos);
        Token v = take();
        if (sig_.has_function(v.text) || sig_.has_relation(v.text))
          throw ParseError("cannot bind signature symbol '" + v.text + "'", v.pos);
        Formula body = formula();
        return h == "forall" ? Formula::forall(v.text, body) : Formula::exists(v.text, body);
      }
      if (h == "not") return Formula::negation(formula());
      if (h == "->") {
        Formula a = formula();
        return Formula::implication(a, formula());
      }
      if (h == "and" || h == "or") {
        std::vector<Formula> parts;
        while (cur_.type != Token::Close && cur_.type != Token::End) parts.push_back(formula());
        if (parts.size() < 2) throw ParseError("'" + h + "' needs at least two arguments", head.pos);
        return h == "and" ? conjoin(parts) : disjoin(parts);
      }
      if (h == "=") {
        Term a = term();
        return Formula::equal(a, term());
      }
      if (!sig_.has_relation(h)) throw ParseError("unknown relation '" + h + "'", head.pos);
      std::vector<Term> args;
      while (cur_.type != Token::Close && cur_.type != Token::End) args.push_back(term());
      unsigned arity = sig_.relation_arity(h);
      if (args.size() != arity)
        throw ParseError("relation '" + h + "' expects " + std::to_string(arity) + " arguments, got " +
                             std::to_string(args.size()),
                         head.pos);
      return Formula::relation(h, std::move(args));
    }();
    expect(Token::Close, "')'");
    (void)open;
    return result;
  }

  Term term() {
    if (cur_.type == Token::Atom) {
      Token t = take();
      if (sig_.has_relation(t.text)) throw ParseError("relation '" + t.text + "' used as term", t.pos);
      if (sig_.has_function(t.text)) {
        if (sig_.function_arity(t.text) != 0)
          throw ParseError("function '" + t.text + "' expects " + std::to_string(sig_.function_arity(t.text)) +
                               " arguments, got 0",
                           t.pos);
        return Term::app(t.text);
      }
      if (is_keyword(t.text)) throw ParseError("keyword '" + t.text + "' used as variable", t.pos);
      return Term::var(t.text);
    }
    expect(Token::Open, "term");
    if (cur_.type != Token::Atom) throw ParseError("expected function symbol", cur_.pos);
    Token fn = take();
    if (!sig_.has_function(fn.text)) throw ParseError("unknown function '" + fn.text + "'", fn.pos);
    std::vector<Term> args;
    while (cur_.type != Token::Close && cur_.type != Token::End) args.push_back(term());
    unsigned arity = sig_.function_arity(fn.text);
    if (args.size() != arity)
      throw ParseError("function '" + fn.text + "' expects " + std::to_string(arity) + " arguments, got " +
                           std::to_string(args.size()),
                       fn.pos);
    expect(Token::Close, "')'");
    return Term::app(fn.text, std::move(args));
  }

  void finish() {
    if (cur_.type != Token::End) throw ParseError("trailing input", cur_.pos);
  }

 private:
  static bool is_keyword(const std::string& s) {
    return s == "forall" || s == "exists" || s == "not" || s == "and" || s == "or" || s == "->" || s == "=";
  }

  void advance() { cur_ = lex_.next(); }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }
  Token expect(Token::Type type, const char* what) {
    if (cur_.type != type) {
      if (cur_.type == Token::End) throw ParseError(std::string("unexpected end of input, expected ") + what, cur_.pos);
      throw ParseError(std::string("expected ") + what + ", got '" + cur_.text + "'", cur_.pos);
    }
    return take();
  }

  Lexer lex_;
  const Signature& sig_;
  Token cur_{Token::End, {}, 0};
};

void print_term(const Term& t, std::string& out) {
  if (t.variable || t.args.empty()) {
    out += t.symbol;
    return;
  }
  out += "(" + t.symbol;
  for (const auto& a : t.args) {
    out += ' ';
    print_term(a, out);
  }
  out += ')';
}

void print_formula(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::Eq:
      out += "(= ";
      print_term(f.terms()[0], out);
      out += ' ';
      print_term(f.terms()[1], out);
      out += ')';
      return;
    case Kind::Rel:
      if (f.terms().empty()) {
        out += f.symbol();
        return;
      }
      out += "(" + f.symbol();
      for (const auto& t : f.terms()) {
        out += ' ';
        print_term(t, out);
      }
      out += ')';
      return;
    case Kind::Not:
      out += "(not ";
      print_formula(f.child(), out);
      out += ')';
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      out += f.kind() == Kind::And ? "(and " : f.kind() == Kind::Or ? "(or " : "(-> ";
      print_formula(f.child(0), out);
      out += ' ';
      print_formula(f.child(1), out);
      out += ')';
      return;
    case Kind::Forall:
    case Kind::Exists:
      out += f.kind() == Kind::Forall ? "(forall " : "(exists ";
      out += f.symbol();
      out += ' ';
      print_formula(f.child(), out);
      out += ')';
      return;
  }
}

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  print_formula(f, out);
  return out;
}

std::string print(const Term& t) {
  std::string out;
  print_term(t, out);
  return out;
}

Formula parse_formula(std::string_view text, const Signature& sig) {
  Parser p(text, sig);
  Formula f = p.formula();
  p.finish();
  return f;
}

Term parse_term(std::string_view text, const Signature& sig) {
  Parser p(text, sig);
  Term t = p.term();
  p.finish();
  return t;
}

}  // namespace wb::folog
