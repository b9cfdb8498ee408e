#include <cctype>
#include <fstream>
#include <sstream>

#include "cfpq/error.hpp"
#include "cfpq/sparql.hpp"

namespace cfpq {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

struct Token {
  enum class Kind { Open, Close, Atom, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

class SexprLexer {
 public:
  explicit SexprLexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    if (c == '(' || c == ')') {
      t.kind = c == '(' ? Token::Kind::Open : Token::Kind::Close;
      t.text = std::string(1, c);
      advance();
      return t;
    }
    t.kind = Token::Kind::Atom;
    std::size_t start = pos_;
    if (c == '<') {
      while (pos_ < text_.size() && text_[pos_] != '>') advance();
      if (pos_ >= text_.size())
        throw ParseError(t.line, t.column, "unterminated IRI");
      advance();
    } else if (c == '"') {
      advance();
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) advance();
        advance();
      }
      if (pos_ >= text_.size())
        throw ParseError(t.line, t.column, "unterminated literal");
      advance();
      // Language tag or datatype suffix.
      while (pos_ < text_.size() && !is_delimiter(text_[pos_])) advance();
    } else {
      while (pos_ < text_.size() && !is_delimiter(text_[pos_])) advance();
    }
    t.text = std::string(text_.substr(start, pos_ - start));
    return t;
  }

 private:
  static bool is_delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')';
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class PatternParser {
 public:
  PatternParser(std::string_view text, const QueryRegistry& registry)
      : lex_(text), registry_(registry) {
    advance();
  }

  Pattern parse() {
    if (cur_.kind == Token::Kind::End)
      throw ParseError(cur_.line, cur_.column, "missing pattern");
    Pattern p = pattern();
    if (cur_.kind != Token::Kind::End)
      fail("unexpected text after the pattern");
    return p;
  }

 private:
  Pattern pattern() {
    expect_open();
    Token head = cur_;
    std::string op = keyword();
    Pattern out;
    if (op == "cftp" || op == "uccftp") {
      Variable x = variable();
      Token name = cur_;
      std::string q = atom("query name");
      auto it = registry_.find(q);
      if (it == registry_.end())
        throw ParseError(name.line, name.column, "unknown query '" + q + "'");
      if (op == "cftp" && it->second.disjuncts.size() != 1)
        throw ParseError(name.line, name.column,
                         "query '" + q + "' is a union; use uccftp");
      Variable y = variable();
      out = op == "cftp" ? pattern::cftp(x, q, y) : pattern::uccftp(x, q, y);
    } else if (op == "tp") {
      Variable x = variable();
      Variable y = variable();
      Variable z = variable();
      out = pattern::triple(x, y, z);
    } else if (op == "and" || op == "union" || op == "opt") {
      Pattern l = pattern();
      Pattern r = pattern();
      out = op == "and"     ? pattern::conj(l, r)
            : op == "union" ? pattern::disj(l, r)
                            : pattern::opt(l, r);
    } else if (op == "filter") {
      ConstraintPtr c = constraint();
      out = pattern::filter(pattern(), c);
    } else if (op == "select") {
      expect_open();
      std::vector<Variable> vars;
      while (cur_.kind == Token::Kind::Atom) vars.push_back(variable());
      expect_close();
      out = pattern::select(std::move(vars), pattern());
    } else {
      throw ParseError(head.line, head.column,
                       "unknown pattern operator '" + op + "'");
    }
    expect_close();
    return out;
  }

  ConstraintPtr constraint() {
    expect_open();
    Token head = cur_;
    std::string op = keyword();
    ConstraintPtr out;
    if (op == "=") {
      std::string var = variable().name;
      Token rhs = cur_;
      std::string other = atom("variable or constant");
      if (other.starts_with("?")) {
        if (other.size() == 1) fail_at(rhs, "empty variable name");
        out = constraint::equal(var, other);
      } else if (other.starts_with("<")) {
        out = constraint::equal_constant(var, other.substr(1, other.size() - 2));
      } else {
        out = constraint::equal_constant(var, other);
      }
    } else if (op == "bound") {
      out = constraint::bound(variable().name);
    } else if (op == "and" || op == "or") {
      ConstraintPtr l = constraint();
      ConstraintPtr r = constraint();
      out = op == "and" ? constraint::all(l, r) : constraint::any(l, r);
    } else if (op == "not") {
      out = constraint::negate(constraint());
    } else {
      throw ParseError(head.line, head.column,
                       "unknown constraint operator '" + op + "'");
    }
    expect_close();
    return out;
  }

  Variable variable() {
    Token t = cur_;
    std::string text = atom("variable");
    if (!text.starts_with("?") || text.size() == 1)
      fail_at(t, "expected a variable ('?name'), found '" + text + "'");
    for (char c : text.substr(1))
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        fail_at(t, "invalid variable name '" + text + "'");
    return Variable{text};
  }

  std::string keyword() { return atom("operator"); }

  std::string atom(const std::string& what) {
    if (cur_.kind != Token::Kind::Atom) fail("expected " + what);
    std::string text = cur_.text;
    advance();
    return text;
  }

  void expect_open() {
    if (cur_.kind != Token::Kind::Open) fail("expected '('");
    advance();
  }

  void expect_close() {
    if (cur_.kind != Token::Kind::Close) fail("expected ')'");
    advance();
  }

  void advance() { cur_ = lex_.next(); }

  [[noreturn]] void fail(const std::string& message) const {
    fail_at(cur_, message);
  }
  [[noreturn]] static void fail_at(const Token& t, const std::string& message) {
    throw ParseError(t.line, t.column, message);
  }

  SexprLexer lex_;
  const QueryRegistry& registry_;
  Token cur_;
};

}  // namespace

SparqlDocument parse_sparql(std::string_view text) {
  SparqlDocument doc;
  // Query blocks are cut out line by line; the pattern text keeps blank
  // lines in their place so reported positions stay correct.
  std::string pattern_text;
  std::string block;
  std::string block_name;
  std::size_t block_line = 0;
  bool in_block = false;
  bool in_grammar = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    std::string_view t = trim(line);
    ++line_no;
    pos = end + 1;

    if (in_block) {
      if (in_grammar) {
        if (t == "}") in_grammar = false;
        block += std::string(line) + '\n';
      } else if (t == "}") {
        in_block = false;
        try {
          Uccfpq q = parse_query(block);
          q.name = block_name;
          doc.queries.insert_or_assign(block_name, std::move(q));
        } catch (const ParseError& e) {
          throw ParseError(e.line() ? e.line() + block_line : 0, e.column(),
                           "query " + block_name + ": " + e.message());
        }
      } else {
        if (t.starts_with("grammar")) in_grammar = true;
        block += std::string(line) + '\n';
      }
      pattern_text += '\n';
      continue;
    }

    if (t.starts_with("query") &&
        (t.size() == 5 || std::isspace(static_cast<unsigned char>(t[5])))) {
      std::string_view rest = trim(t.substr(5));
      if (!rest.ends_with("{"))
        throw ParseError(line_no, 1, "expected 'query Name {'");
      std::string_view name = trim(rest.substr(0, rest.size() - 1));
      if (name.empty()) throw ParseError(line_no, 1, "query block has no name");
      for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
          throw ParseError(line_no, 1,
                           "invalid query name '" + std::string(name) + "'");
      block_name = std::string(name);
      block.clear();
      block_line = line_no;
      in_block = true;
      pattern_text += '\n';
      continue;
    }
    pattern_text += std::string(line) + '\n';
  }
  if (in_block)
    throw ParseError(block_line, 1, "unterminated query block " + block_name);

  doc.pattern = PatternParser(pattern_text, doc.queries).parse();
  return doc;
}

SparqlDocument load_sparql(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, 0, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_sparql(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path + ": " + e.message());
  }
}

}  // namespace cfpq
