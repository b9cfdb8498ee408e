#include <cctype>
#include <fstream>
#include <sstream>

#include "cfpq/error.hpp"
#include "cfpq/query.hpp"

namespace cfpq {
namespace {

class ExprLexer {
 public:
  ExprLexer(std::string_view text, std::size_t line_offset)
      : text_(text), line_(line_offset + 1) {}

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

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  bool accept(std::string_view punct) {
    skip_space();
    if (text_.substr(pos_).starts_with(punct)) {
      for (std::size_t i = 0; i < punct.size(); ++i) advance();
      return true;
    }
    return false;
  }

  void expect(std::string_view punct) {
    if (!accept(punct)) fail("expected '" + std::string(punct) + "'");
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string identifier() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      advance();
    if (start == pos_) fail("expected an identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  Variable variable() {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '?')
      fail("expected a variable ('?name')");
    std::size_t start = pos_;
    advance();
    std::size_t name_start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      advance();
    if (name_start == pos_) fail("empty variable name");
    return Variable{std::string(text_.substr(start, pos_ - start))};
  }

  [[noreturn]] void fail(const std::string& message) {
    throw ParseError(line_, column_, message);
  }

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
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
  std::size_t line_;
  std::size_t column_ = 1;
};

Atom parse_atom(ExprLexer& lex, const Cfg& grammar) {
  if (lex.accept("(")) {
    TriplePatternAtom tp;
    tp.s = lex.variable();
    lex.expect(",");
    tp.p = lex.variable();
    lex.expect(",");
    tp.o = lex.variable();
    lex.expect(")");
    return tp;
  }
  lex.skip_space();
  std::size_t line = lex.line(), column = lex.column();
  NonterminalAtom nt;
  nt.nonterminal = lex.identifier();
  if (!grammar.find_nonterminal(nt.nonterminal))
    throw ParseError(line, column,
                     "unknown nonterminal '" + nt.nonterminal + "'");
  lex.expect("(");
  nt.from = lex.variable();
  lex.expect(",");
  nt.to = lex.variable();
  lex.expect(")");
  return nt;
}

}  // namespace

Uccfpq parse_query_expression(std::string_view text,
                              std::shared_ptr<const Cfg> grammar,
                              std::size_t line_offset) {
  if (!grammar) grammar = std::make_shared<const Cfg>();
  ExprLexer lex(text, line_offset);
  Uccfpq q;
  q.grammar = grammar;
  q.name = lex.identifier();
  lex.expect("(");
  q.x = lex.variable();
  lex.expect(",");
  q.y = lex.variable();
  lex.expect(")");
  lex.expect(":=");

  do {
    lex.skip_space();
    std::size_t line = lex.line(), column = lex.column();
    std::vector<Atom> body;
    do {
      body.push_back(parse_atom(lex, *grammar));
    } while (lex.accept("&"));

    std::set<Variable> vars;
    for (const Atom& atom : body)
      for (const auto& v : variables_of(atom)) vars.insert(v);
    for (const auto& head : {q.x, q.y})
      if (!vars.contains(head))
        throw ParseError(line, column,
                         "head variable " + head.name +
                             " does not occur in this disjunct");
    q.disjuncts.push_back(std::move(body));
  } while (lex.accept("|"));

  if (!lex.at_end()) lex.fail("unexpected trailing text");
  return q;
}

Uccfpq parse_query(std::string_view text) {
  // Split off an optional leading `grammar { ... }` block.
  std::string grammar_text;
  std::size_t expr_start = 0;
  std::size_t expr_line = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool in_block = false;
  bool seen_block = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    std::string_view trimmed = line;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
      trimmed.remove_prefix(1);
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
      trimmed.remove_suffix(1);

    if (in_block) {
      if (trimmed == "}") {
        in_block = false;
        seen_block = true;
      } else {
        grammar_text += std::string(line);
      }
      grammar_text += '\n';
    } else if (trimmed.empty() || trimmed.front() == '#') {
      grammar_text += '\n';
    } else if (!seen_block && trimmed.starts_with("grammar")) {
      std::string_view rest = trimmed.substr(7);
      while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.front())))
        rest.remove_prefix(1);
      if (rest != "{")
        throw ParseError(line_no, 1, "expected 'grammar {' on its own line");
      in_block = true;
      grammar_text += '\n';
    } else {
      expr_start = pos;
      expr_line = line_no - 1;
      break;
    }
    pos = end + 1;
    expr_start = pos;
    expr_line = line_no;
  }
  if (in_block) throw ParseError(line_no, 1, "unterminated grammar block");

  auto grammar = std::make_shared<const Cfg>(parse_grammar(grammar_text));
  if (expr_start >= text.size())
    throw ParseError(line_no, 1, "missing query expression");
  return parse_query_expression(text.substr(expr_start), grammar, expr_line);
}

Uccfpq load_query(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, 0, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_query(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path + ": " + e.message());
  }
}

}  // namespace cfpq
