#include "cfpq/axis_graph.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <ostream>
#include <string>

namespace cfpq {

std::string_view axis_name(Axis axis) {
  switch (axis) {
    case Axis::Self:
      return "self";
    case Axis::Next:
      return "next";
    case Axis::Edge:
      return "edge";
    case Axis::Node:
      return "node";
    case Axis::Nest:
      return "nest";
  }
  return "?";
}

std::optional<Axis> parse_axis_name(std::string_view name) {
  if (name == "self") return Axis::Self;
  if (name == "next") return Axis::Next;
  if (name == "edge") return Axis::Edge;
  if (name == "node") return Axis::Node;
  return std::nullopt;
}

namespace {

bool needs_brackets(std::string_view iri) {
  return iri.find_first_of(" \t/|*()[]<>&,") != std::string_view::npos;
}

}  // namespace

std::string to_string(const AxisLabel& label) {
  std::string out(axis_name(label.axis));
  if (label.inverse) out += "-1";
  if (label.qualified()) {
    out += "::";
    if (label.axis != Axis::Nest && needs_brackets(label.qualifier)) {
      out += '<';
      out += label.qualifier;
      out += '>';
    } else {
      out += label.qualifier;
    }
  }
  return out;
}

std::optional<AxisLabel> parse_axis_label(std::string_view token) {
  std::string_view head = token;
  std::string_view qualifier;
  bool has_qualifier = false;
  if (auto sep = token.find("::"); sep != std::string_view::npos) {
    head = token.substr(0, sep);
    qualifier = token.substr(sep + 2);
    has_qualifier = true;
  }
  AxisLabel label;
  if (head.ends_with("-1")) {
    label.inverse = true;
    head.remove_suffix(2);
  }
  auto axis = parse_axis_name(head);
  if (!axis) return std::nullopt;
  label.axis = *axis;
  if (has_qualifier) {
    if (qualifier.size() >= 2 && qualifier.front() == '<' &&
        qualifier.back() == '>')
      qualifier = qualifier.substr(1, qualifier.size() - 2);
    if (qualifier.empty()) return std::nullopt;
    label.qualifier = std::string(qualifier);
  }
  return label;
}

AxisLabel nest_label(std::uint32_t k) {
  return AxisLabel{Axis::Nest, false, "#" + std::to_string(k)};
}

LabeledGraph::LabeledGraph(std::size_t node_count,
                           std::shared_ptr<const Dictionary> dictionary,
                           std::uint64_t source_digest)
    : dictionary_(std::move(dictionary)),
      source_digest_(source_digest),
      outgoing_(node_count),
      incoming_(node_count) {}

LabelId LabeledGraph::intern_label(const EdgeLabel& label) {
  if (auto it = label_ids_.find(label); it != label_ids_.end())
    return it->second;
  auto id = static_cast<LabelId>(labels_.size());
  labels_.push_back(label);
  label_ids_.emplace(label, id);
  by_label_.emplace_back();
  return id;
}

std::optional<LabelId> LabeledGraph::find_label(const EdgeLabel& label) const {
  if (auto it = label_ids_.find(label); it != label_ids_.end())
    return it->second;
  return std::nullopt;
}

std::optional<LabelId> LabeledGraph::resolve(const AxisLabel& text) const {
  EdgeLabel label{text.axis, text.inverse, EdgeLabel::kNoQualifier};
  if (text.qualified()) {
    if (text.axis == Axis::Nest) {
      if (text.qualifier.size() < 2 || text.qualifier.front() != '#')
        return std::nullopt;
      std::uint32_t k = 0;
      const char* first = text.qualifier.data() + 1;
      const char* last = text.qualifier.data() + text.qualifier.size();
      auto [ptr, ec] = std::from_chars(first, last, k);
      if (ec != std::errc() || ptr != last) return std::nullopt;
      label.qualifier = k;
    } else {
      auto id = dictionary_->find(text.qualifier);
      if (!id) return std::nullopt;
      label.qualifier = index_of(*id);
    }
  }
  return find_label(label);
}

AxisLabel LabeledGraph::describe(LabelId id) const {
  const EdgeLabel& l = label(id);
  AxisLabel out{l.axis, l.inverse, {}};
  if (l.qualifier != EdgeLabel::kNoQualifier) {
    out.qualifier = l.axis == Axis::Nest
                        ? "#" + std::to_string(l.qualifier)
                        : dictionary_->lexical(constant_at(l.qualifier));
  }
  return out;
}

bool LabeledGraph::add_edge(ConstantId source, LabelId label,
                            ConstantId target) {
  auto& out = outgoing_[index_of(source)];
  std::pair<LabelId, ConstantId> key{label, target};
  auto pos = std::lower_bound(out.begin(), out.end(), key);
  if (pos != out.end() && *pos == key) return false;
  out.insert(pos, key);

  auto& in = incoming_[index_of(target)];
  std::pair<LabelId, ConstantId> back{label, source};
  in.insert(std::lower_bound(in.begin(), in.end(), back), back);

  by_label_[index_of(label)].emplace_back(source, target);
  ++edge_count_;
  return true;
}

bool LabeledGraph::has_edge(ConstantId source, LabelId label,
                            ConstantId target) const {
  const auto& out = outgoing_[index_of(source)];
  return std::binary_search(out.begin(), out.end(),
                            std::pair<LabelId, ConstantId>{label, target});
}

std::span<const ConstantPair> LabeledGraph::edges_with_label(
    LabelId label) const {
  return by_label_[index_of(label)];
}

std::vector<ConstantId> LabeledGraph::successors(ConstantId node,
                                                 LabelId label) const {
  const auto& out = outgoing_[index_of(node)];
  auto lo = std::lower_bound(
      out.begin(), out.end(), label,
      [](const auto& entry, LabelId l) { return entry.first < l; });
  std::vector<ConstantId> targets;
  for (; lo != out.end() && lo->first == label; ++lo)
    targets.push_back(lo->second);
  return targets;
}

std::vector<LabeledEdge> LabeledGraph::edges() const {
  std::vector<LabeledEdge> all;
  all.reserve(edge_count_);
  for (std::uint32_t s = 0; s < outgoing_.size(); ++s)
    for (const auto& [label, target] : outgoing_[s])
      all.push_back({constant_at(s), label, target});
  return all;
}

LabeledGraph convert(const RdfGraph& g) {
  LabeledGraph lg(g.constant_count(), g.shared_dictionary(), g.digest());
  constexpr auto bare = EdgeLabel::kNoQualifier;

  auto add = [&lg](ConstantId from, Axis axis, bool inverse,
                   std::uint32_t qualifier, ConstantId to) {
    lg.add_edge(from, lg.intern_label({axis, inverse, qualifier}), to);
  };

  for (ConstantId c : vocabulary(g)) {
    add(c, Axis::Self, false, bare, c);
    add(c, Axis::Self, false, index_of(c), c);
  }
  for (const auto& [s, p, o] : g.triples()) {
    add(s, Axis::Next, false, index_of(p), o);
    add(s, Axis::Next, false, bare, o);
    add(o, Axis::Next, true, index_of(p), s);
    add(o, Axis::Next, true, bare, s);
    add(s, Axis::Edge, false, index_of(o), p);
    add(s, Axis::Edge, false, bare, p);
    add(p, Axis::Edge, true, index_of(o), s);
    add(p, Axis::Edge, true, bare, s);
    add(p, Axis::Node, false, index_of(s), o);
    add(p, Axis::Node, false, bare, o);
    add(o, Axis::Node, true, index_of(s), p);
    add(o, Axis::Node, true, bare, p);
  }
  return lg;
}

void write_labeled_graph(std::ostream& out, const LabeledGraph& lg) {
  std::vector<std::string> lines;
  lines.reserve(lg.edge_count());
  for (const auto& e : lg.edges()) {
    lines.push_back(lg.dictionary().lexical(e.source) + "\t" +
                    to_string(lg.describe(e.label)) + "\t" +
                    lg.dictionary().lexical(e.target));
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& line : lines) out << line << '\n';
}

}  // namespace cfpq
