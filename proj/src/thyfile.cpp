#include "wb/theoryalg.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace wb::theoryalg {

namespace {

struct Segment {
  std::size_t offset;
  std::string text;
};

std::string first_word(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  std::size_t j = i;
  while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
  return std::string(line.substr(i, j - i));
}

std::string strip_comment(std::string_view line) {
  auto c = line.find(';');
  return std::string(c == std::string_view::npos ? line : line.substr(0, c));
}

// Top-level s-expressions and bare words of `body`, with their offsets.
std::vector<Segment> segments(const std::string& body) {
  std::vector<Segment> out;
  std::size_t i = 0;
  while (i < body.size()) {
    char c = body[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == ';') {
      while (i < body.size() && body[i] != '\n') ++i;
    } else if (c == ')') {
      throw folog::ParseError("unbalanced ')'", i);
    } else if (c == '(') {
      std::size_t start = i;
      int depth = 0;
      for (; i < body.size(); ++i) {
        if (body[i] == ';') {
          while (i < body.size() && body[i] != '\n') ++i;
          if (i >= body.size()) break;
        }
        if (body[i] == '(') ++depth;
        if (body[i] == ')' && --depth == 0) {
          ++i;
          break;
        }
      }
      if (depth != 0) throw folog::ParseError("unbalanced '('", start);
      out.push_back({start, body.substr(start, i - start)});
    } else {
      std::size_t start = i;
      while (i < body.size() && !std::isspace(static_cast<unsigned char>(body[i])) && body[i] != '(' &&
             body[i] != ')' && body[i] != ';')
        ++i;
      out.push_back({start, body.substr(start, i - start)});
    }
  }
  return out;
}

std::string bare_message(const folog::ParseError& e) {
  std::string what = e.what();
  auto at = what.rfind(" at offset ");
  return at == std::string::npos ? what : what.substr(0, at);
}

}  // namespace

TheoryPresentation parse_thy(std::string_view text, std::string name) {
  std::string body(text);
  std::optional<Signature> header;
  std::vector<std::string> schemes;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    std::string word = first_word(strip_comment(line));
    if (word == "sig" || word == "scheme") {
      std::string content = strip_comment(line);
      if (word == "sig") {
        if (header) throw folog::ParseError("second signature header", pos);
        try {
          header = Signature::parse_header(content);
        } catch (const folog::SignatureError& e) {
          throw folog::ParseError(e.what(), pos);
        }
      } else {
        std::istringstream in(content);
        std::string kw, s;
        in >> kw;
        if (!(in >> s)) throw folog::ParseError("scheme name expected", pos);
        schemes.push_back(s);
        if (in >> s) throw folog::ParseError("one scheme per line", pos);
      }
      std::fill(body.begin() + static_cast<std::ptrdiff_t>(pos), body.begin() + static_cast<std::ptrdiff_t>(end), ' ');
    }
    pos = end + 1;
  }

  Signature sig = header.value_or(Signature{});
  std::vector<TheoryPresentation> parts;
  for (const auto& s : schemes) {
    TheoryPresentation t;
    try {
      t = scheme(s);
    } catch (const std::invalid_argument& e) {
      throw folog::ParseError(e.what(), text.find(s));
    }
    for (const auto& [n, a] : t.signature.relations()) sig.add_relation(n, a);
    for (const auto& [n, a] : t.signature.functions()) sig.add_function(n, a);
    parts.push_back(std::move(t));
  }

  std::vector<Formula> explicit_axioms;
  for (const auto& seg : segments(body)) {
    try {
      Formula f = folog::parse_formula(seg.text, sig);
      if (!folog::is_sentence(f)) throw folog::ParseError("axiom has free variables", 0);
      explicit_axioms.push_back(std::move(f));
    } catch (const folog::ParseError& e) {
      throw folog::ParseError(bare_message(e), seg.offset + e.position);
    }
  }

  auto rest = interleave(name, sig, parts);
  auto head = TheoryPresentation::finite(name, sig, std::move(explicit_axioms));
  TheoryPresentation t;
  t.name = std::move(name);
  t.signature = sig;
  if (rest.length) t.length = *head.length + *rest.length;
  std::uint64_t n = *head.length;
  t.axiom = [head, rest, n](std::uint64_t k) -> std::optional<Formula> {
    return k < n ? head.axiom(k) : rest.axiom(k - n);
  };
  return t;
}

TheoryPresentation load_thy(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_thy(buf.str(), std::filesystem::path(path).stem().string());
}

}  // namespace wb::theoryalg
