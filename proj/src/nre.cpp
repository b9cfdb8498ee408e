#include "cfpq/nre.hpp"

#include <algorithm>
#include <cctype>

#include "cfpq/error.hpp"

namespace cfpq {

namespace nre {

Nre axis(Axis a, bool inverse) {
  auto n = std::make_shared<NreNode>();
  n->kind = NreNode::Kind::Axis;
  n->label = AxisLabel{a, inverse, {}};
  return n;
}

Nre axis_const(Axis a, bool inverse, std::string qualifier) {
  auto n = std::make_shared<NreNode>();
  n->kind = NreNode::Kind::AxisConst;
  n->label = AxisLabel{a, inverse, std::move(qualifier)};
  return n;
}

Nre nest(Axis a, bool inverse, Nre inner) {
  auto n = std::make_shared<NreNode>();
  n->kind = NreNode::Kind::Nest;
  n->label = AxisLabel{a, inverse, {}};
  n->left = std::move(inner);
  return n;
}

namespace {
Nre binary(NreNode::Kind kind, Nre l, Nre r) {
  auto n = std::make_shared<NreNode>();
  n->kind = kind;
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}
}  // namespace

Nre seq(Nre l, Nre r) {
  return binary(NreNode::Kind::Seq, std::move(l), std::move(r));
}
Nre alt(Nre l, Nre r) {
  return binary(NreNode::Kind::Alt, std::move(l), std::move(r));
}
Nre star(Nre e) {
  auto n = std::make_shared<NreNode>();
  n->kind = NreNode::Kind::Star;
  n->left = std::move(e);
  return n;
}

}  // namespace nre

namespace {

class NreParser {
 public:
  explicit NreParser(std::string_view text) : text_(text) {}

  Nre parse() {
    Nre e = alternation();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  Nre alternation() {
    Nre e = sequence();
    while (accept('|')) e = nre::alt(e, sequence());
    return e;
  }

  Nre sequence() {
    Nre e = postfix();
    while (accept('/')) e = nre::seq(e, postfix());
    return e;
  }

  Nre postfix() {
    Nre e = primary();
    while (accept('*')) e = nre::star(e);
    return e;
  }

  Nre primary() {
    skip_space();
    if (accept('(')) {
      Nre e = alternation();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    if (name.empty()) fail("expected an axis or '('");
    auto axis = parse_axis_name(name);
    if (!axis) {
      pos_ = start;
      fail("unknown axis '" + std::string(name) + "'");
    }
    bool inverse = false;
    if (text_.substr(pos_).starts_with("-1")) {
      inverse = true;
      pos_ += 2;
    }
    if (!text_.substr(pos_).starts_with("::")) return nre::axis(*axis, inverse);
    pos_ += 2;
    if (pos_ < text_.size() && text_[pos_] == '[') {
      ++pos_;
      Nre inner = alternation();
      if (!accept(']')) fail("expected ']'");
      return nre::nest(*axis, inverse, inner);
    }
    return nre::axis_const(*axis, inverse, qualifier());
  }

  std::string qualifier() {
    if (pos_ < text_.size() && text_[pos_] == '<') {
      std::size_t close = text_.find('>', pos_);
      if (close == std::string_view::npos) fail("unterminated '<'");
      std::string iri(text_.substr(pos_ + 1, close - pos_ - 1));
      if (iri.empty()) fail("empty qualifier");
      pos_ = close + 1;
      return iri;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           std::string_view("/|*()[]").find(text_[pos_]) ==
               std::string_view::npos)
      ++pos_;
    if (start == pos_) fail("empty qualifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(1, pos_ + 1, message);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Nre parse_nre(std::string_view text) { return NreParser(text).parse(); }

std::string to_string(const Nre& e) {
  using K = NreNode::Kind;
  switch (e->kind) {
    case K::Axis:
    case K::AxisConst:
      return to_string(e->label);
    case K::Nest:
      return to_string(e->label) + "::[" + to_string(e->left) + "]";
    case K::Seq:
      return "(" + to_string(e->left) + "/" + to_string(e->right) + ")";
    case K::Alt:
      return "(" + to_string(e->left) + "|" + to_string(e->right) + ")";
    case K::Star:
      return "(" + to_string(e->left) + ")*";
  }
  return {};
}

bool structurally_equal(const Nre& a, const Nre& b) {
  if (!a || !b) return !a && !b;
  return a->kind == b->kind && a->label == b->label &&
         structurally_equal(a->left, b->left) &&
         structurally_equal(a->right, b->right);
}

std::size_t depth(const Nre& e) {
  if (!e) return 0;
  return 1 + std::max(depth(e->left), depth(e->right));
}

std::string_view fragment_name(NreFragment f) {
  switch (f) {
    case NreFragment::Basic:
      return "nre0";
    case NreFragment::Nested:
      return "nre0(N)";
    case NreFragment::Union:
      return "nre0(|)";
    case NreFragment::Full:
      return "nre";
  }
  return "?";
}

namespace {
void scan(const Nre& e, bool& has_alt, bool& has_nest) {
  if (!e) return;
  has_alt = has_alt || e->kind == NreNode::Kind::Alt;
  has_nest = has_nest || e->kind == NreNode::Kind::Nest;
  scan(e->left, has_alt, has_nest);
  scan(e->right, has_alt, has_nest);
}
}  // namespace

NreFragment classify_nre(const Nre& e) {
  bool has_alt = false, has_nest = false;
  scan(e, has_alt, has_nest);
  if (has_alt && has_nest) return NreFragment::Full;
  if (has_alt) return NreFragment::Union;
  if (has_nest) return NreFragment::Nested;
  return NreFragment::Basic;
}

namespace {

// Successor lists, sorted and unique.
using Relation = std::vector<std::vector<ConstantId>>;

void normalize_rows(Relation& r) {
  for (auto& row : r) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
}

Relation from_edges(const LabeledGraph& lg, std::optional<LabelId> label) {
  Relation r(lg.node_count());
  if (!label) return r;
  for (const auto& [a, b] : lg.edges_with_label(*label))
    r[index_of(a)].push_back(b);
  normalize_rows(r);
  return r;
}

Relation evaluate(const LabeledGraph& lg, const Nre& e) {
  using K = NreNode::Kind;
  const std::size_t n = lg.node_count();
  switch (e->kind) {
    case K::Axis:
    case K::AxisConst:
      return from_edges(lg, lg.resolve(e->label));
    case K::Nest: {
      Relation inner = evaluate(lg, e->left);
      Relation r(n);
      for (std::uint32_t c = 0; c < n; ++c) {
        if (inner[c].empty()) continue;
        auto label = lg.find_label({e->label.axis, e->label.inverse, c});
        if (!label) continue;
        for (const auto& [a, b] : lg.edges_with_label(*label))
          r[index_of(a)].push_back(b);
      }
      normalize_rows(r);
      return r;
    }
    case K::Seq: {
      Relation l = evaluate(lg, e->left);
      Relation rr = evaluate(lg, e->right);
      Relation r(n);
      for (std::size_t a = 0; a < n; ++a)
        for (ConstantId mid : l[a])
          for (ConstantId b : rr[index_of(mid)]) r[a].push_back(b);
      normalize_rows(r);
      return r;
    }
    case K::Alt: {
      Relation l = evaluate(lg, e->left);
      Relation rr = evaluate(lg, e->right);
      for (std::size_t a = 0; a < n; ++a)
        l[a].insert(l[a].end(), rr[a].begin(), rr[a].end());
      normalize_rows(l);
      return l;
    }
    case K::Star: {
      Relation step = evaluate(lg, e->left);
      Relation r(n);
      for (std::uint32_t a = 0; a < n; ++a) {
        std::vector<bool> seen(n, false);
        std::vector<std::uint32_t> stack{a};
        seen[a] = true;
        while (!stack.empty()) {
          std::uint32_t x = stack.back();
          stack.pop_back();
          r[a].push_back(constant_at(x));
          for (ConstantId y : step[x]) {
            if (!seen[index_of(y)]) {
              seen[index_of(y)] = true;
              stack.push_back(index_of(y));
            }
          }
        }
      }
      normalize_rows(r);
      return r;
    }
  }
  return Relation(n);
}

}  // namespace

PairSet eval_nre(const LabeledGraph& lg, const Nre& e) {
  Relation r = evaluate(lg, e);
  PairSet out;
  for (std::uint32_t a = 0; a < r.size(); ++a)
    for (ConstantId b : r[a]) out.emplace(constant_at(a), b);
  return out;
}

PairSet eval_nre(const RdfGraph& g, const Nre& e) {
  return eval_nre(convert(g), e);
}

}  // namespace cfpq
