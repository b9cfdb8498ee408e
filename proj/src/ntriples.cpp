#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cfpq/error.hpp"
#include "cfpq/rdf.hpp"

namespace cfpq {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

bool is_blank_label_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
         c == '-' || c == ':';
}

class LineScanner {
 public:
  LineScanner(std::string_view line, std::size_t line_no)
      : line_(line), line_no_(line_no) {}

  void skip_space() {
    while (pos_ < line_.size() && is_space(line_[pos_])) ++pos_;
  }
  bool at_end() const { return pos_ >= line_.size(); }
  char peek() const { return at_end() ? '\0' : line_[pos_]; }
  std::size_t column() const { return pos_ + 1; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_no_, column(), message);
  }

  // Returns the stored lexical form of the next term.
  std::string term(bool& is_blank) {
    is_blank = false;
    switch (peek()) {
      case '<':
        return iri();
      case '"':
        return literal();
      case '_':
        is_blank = true;
        return blank();
      default:
        fail("expected a term ('<iri>', '\"literal\"' or '_:label')");
    }
  }

 private:
  std::string iri() {
    std::size_t start = ++pos_;
    while (!at_end() && line_[pos_] != '>') {
      if (is_space(line_[pos_])) fail("whitespace inside IRI");
      ++pos_;
    }
    if (at_end()) {
      pos_ = start - 1;
      fail("unterminated IRI");
    }
    std::string out(line_.substr(start, pos_ - start));
    ++pos_;
    if (out.empty()) fail("empty IRI");
    return out;
  }

  std::string literal() {
    std::size_t start = pos_++;
    bool closed = false;
    while (!at_end()) {
      char c = line_[pos_++];
      if (c == '\\') {
        if (at_end()) break;
        ++pos_;
      } else if (c == '"') {
        closed = true;
        break;
      }
    }
    if (!closed) {
      pos_ = start;
      fail("unterminated literal");
    }
    if (peek() == '@') {
      ++pos_;
      std::size_t tag = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                           peek() == '-'))
        ++pos_;
      if (tag == pos_) fail("empty language tag");
    } else if (line_.substr(pos_).starts_with("^^")) {
      pos_ += 2;
      if (peek() != '<') fail("expected datatype IRI after '^^'");
      iri();
    }
    return std::string(line_.substr(start, pos_ - start));
  }

  std::string blank() {
    std::size_t start = pos_;
    if (!line_.substr(pos_).starts_with("_:")) fail("expected '_:' prefix");
    pos_ += 2;
    while (!at_end()) {
      char c = line_[pos_];
      if (is_blank_label_char(c)) {
        ++pos_;
      } else if (c == '.' && pos_ + 1 < line_.size() &&
                 is_blank_label_char(line_[pos_ + 1])) {
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start + 2) fail("empty blank node label");
    return std::string(line_.substr(start, pos_ - start));
  }

  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

}  // namespace

RdfGraph parse_ntriples(std::istream& in, const NTriplesOptions& options,
                        NTriplesReport* report) {
  RdfGraph g;
  NTriplesReport local;
  NTriplesReport& r = report ? *report : local;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    LineScanner scan(line, line_no);
    scan.skip_space();
    if (scan.at_end() || scan.peek() == '#') continue;

    std::string terms[3];
    for (int i = 0; i < 3; ++i) {
      scan.skip_space();
      if (scan.at_end() || scan.peek() == '.')
        scan.fail("expected 3 terms, found " + std::to_string(i));
      bool blank = false;
      terms[i] = scan.term(blank);
      if (blank) {
        if (options.strict)
          scan.fail("blank node '" + terms[i] + "' rejected in strict mode");
        ++r.blank_nodes;
      }
    }
    scan.skip_space();
    if (scan.peek() != '.') {
      if (scan.at_end()) scan.fail("missing terminating '.'");
      scan.fail("expected '.' after object (more than 3 terms?)");
    }
    LineScanner rest(std::string_view(line).substr(scan.column()), line_no);
    rest.skip_space();
    if (!rest.at_end() && rest.peek() != '#')
      throw ParseError(line_no, scan.column() + 1,
                       "unexpected text after terminating '.'");

    ++r.lines;
    if (!g.add(terms[0], terms[1], terms[2])) ++r.duplicates;
  }
  if (r.blank_nodes > 0)
    r.warnings.push_back(std::to_string(r.blank_nodes) +
                         " blank node occurrence(s) treated as opaque "
                         "constants");
  return g;
}

RdfGraph parse_ntriples(std::string_view text, const NTriplesOptions& options,
                        NTriplesReport* report) {
  std::istringstream in{std::string(text)};
  return parse_ntriples(in, options, report);
}

RdfGraph load_ntriples(const std::string& path,
                       const NTriplesOptions& options,
                       NTriplesReport* report) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, 0, "cannot open '" + path + "'");
  try {
    return parse_ntriples(in, options, report);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path + ": " + e.message());
  }
}

std::string render_term(std::string_view lexical) {
  if (term_kind(lexical) == TermKind::Iri) {
    std::string out = "<";
    out += lexical;
    out += '>';
    return out;
  }
  return std::string(lexical);
}

void write_ntriples(std::ostream& out, const RdfGraph& g) {
  std::vector<std::string> lines;
  lines.reserve(g.size());
  for (const auto& t : g.triples()) {
    lines.push_back(render_term(g.lexical(t.s)) + " " +
                    render_term(g.lexical(t.p)) + " " +
                    render_term(g.lexical(t.o)) + " .");
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& line : lines) out << line << '\n';
}

}  // namespace cfpq
