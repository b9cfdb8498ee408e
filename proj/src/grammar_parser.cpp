#include <cctype>
#include <fstream>
#include <sstream>

#include "cfpq/error.hpp"
#include "cfpq/grammar.hpp"

namespace cfpq {

bool is_nonterminal_name(std::string_view name) {
  if (name.empty() || !std::isupper(static_cast<unsigned char>(name[0])))
    return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;
};

// Whitespace-separated tokens; `<...>` may contain spaces and '#'. A token
// starting with '#' begins a comment.
std::vector<Token> split(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i >= line.size() || line[i] == '#') break;
    std::size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i]))) {
      if (line[i] == '<') {
        std::size_t close = line.find('>', i);
        if (close == std::string_view::npos) break;
        i = close;
      }
      ++i;
    }
    if (i < line.size() && line[i] == '<') i = line.size();
    tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

void parse_line(Cfg& g, std::string_view line, std::size_t line_no) {
  auto tokens = split(line);
  if (tokens.empty()) return;

  const Token& head = tokens[0];
  if (!is_nonterminal_name(head.text))
    throw ParseError(line_no, head.column,
                     "rule head '" + std::string(head.text) +
                         "' is not a nonterminal name");
  if (tokens.size() < 2 || tokens[1].text != "->")
    throw ParseError(line_no,
                     tokens.size() < 2 ? head.column + head.text.size()
                                       : tokens[1].column,
                     "expected '->' after rule head");
  NonterminalIndex v = g.add_nonterminal(head.text);

  std::vector<Symbol> body;
  bool saw_symbol = false;
  bool saw_eps = false;
  std::size_t alt_column = tokens[1].column;

  auto finish = [&](std::size_t column) {
    if (!saw_symbol && !saw_eps)
      throw ParseError(line_no, column, "empty alternative (use 'eps')");
    g.add_rule(Rule{v, body});
    body.clear();
    saw_symbol = saw_eps = false;
  };

  for (std::size_t i = 2; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (t.text == "|") {
      finish(t.column);
      alt_column = t.column;
      continue;
    }
    if (t.text == "eps") {
      if (saw_symbol || saw_eps)
        throw ParseError(line_no, t.column,
                         "'eps' must be the only symbol of its alternative");
      saw_eps = true;
      continue;
    }
    if (saw_eps)
      throw ParseError(line_no, t.column,
                       "'eps' must be the only symbol of its alternative");
    saw_symbol = true;
    if (is_nonterminal_name(t.text)) {
      body.push_back(Symbol::nonterminal(g.add_nonterminal(t.text)));
      continue;
    }
    if (auto label = parse_axis_label(t.text)) {
      body.push_back(Symbol::terminal(g.add_terminal(*label)));
      continue;
    }
    std::string_view axis = t.text.substr(0, t.text.find("::"));
    if (axis.ends_with("-1")) axis.remove_suffix(2);
    if (axis == "nest")
      throw ParseError(line_no, t.column, "axis 'nest' is reserved");
    if (!parse_axis_name(axis) && t.text.find("::") != std::string_view::npos)
      throw ParseError(line_no, t.column,
                       "unknown axis name '" + std::string(axis) + "'");
    throw ParseError(line_no, t.column,
                     "symbol '" + std::string(t.text) +
                         "' is neither an axis terminal nor a nonterminal");
  }
  finish(alt_column);
}

}  // namespace

Cfg parse_grammar(std::string_view text) {
  Cfg g;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    parse_line(g, text.substr(start, end - start), line_no);
    start = end + 1;
  }
  return g;
}

Cfg load_grammar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, 0, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_grammar(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path + ": " + e.message());
  }
}

}  // namespace cfpq
