#include "cfpq/rdf.hpp"

#include <algorithm>
#include <stdexcept>

#include "cfpq/hash.hpp"

namespace cfpq {

TermKind term_kind(std::string_view lexical) {
  if (!lexical.empty() && lexical.front() == '"') return TermKind::Literal;
  if (lexical.starts_with("_:")) return TermKind::BlankNode;
  return TermKind::Iri;
}

ConstantId Dictionary::intern(std::string_view lexical) {
  std::string key(lexical);
  if (auto it = ids_.find(key); it != ids_.end()) return it->second;
  auto id = constant_at(static_cast<std::uint32_t>(lexicals_.size()));
  lexicals_.push_back(key);
  ids_.emplace(std::move(key), id);
  return id;
}

std::optional<ConstantId> Dictionary::find(std::string_view lexical) const {
  if (auto it = ids_.find(std::string(lexical)); it != ids_.end())
    return it->second;
  return std::nullopt;
}

const std::string& Dictionary::lexical(ConstantId id) const {
  if (index_of(id) >= lexicals_.size())
    throw std::out_of_range("constant id out of range");
  return lexicals_[index_of(id)];
}

RdfGraph::RdfGraph() : dictionary_(std::make_shared<Dictionary>()) {}

// Copies get their own dictionary so that growing one graph never leaks
// constants into the other's vocabulary.
RdfGraph::RdfGraph(const RdfGraph& other)
    : dictionary_(std::make_shared<Dictionary>(*other.dictionary_)),
      triples_(other.triples_) {}

RdfGraph& RdfGraph::operator=(const RdfGraph& other) {
  if (this != &other) {
    dictionary_ = std::make_shared<Dictionary>(*other.dictionary_);
    triples_ = other.triples_;
  }
  return *this;
}

bool RdfGraph::add(std::string_view s, std::string_view p,
                   std::string_view o) {
  Triple t{dictionary_->intern(s), dictionary_->intern(p),
           dictionary_->intern(o)};
  return triples_.insert(t).second;
}

std::uint64_t RdfGraph::digest() const {
  std::vector<std::string> lines;
  lines.reserve(triples_.size());
  for (const auto& t : triples_) {
    std::string line = lexical(t.s);
    line += '\x1f';
    line += lexical(t.p);
    line += '\x1f';
    line += lexical(t.o);
    lines.push_back(std::move(line));
  }
  std::sort(lines.begin(), lines.end());
  Fnv1a h;
  for (const auto& line : lines) {
    h.update(line);
    h.update("\x1e");
  }
  return h.value();
}

std::vector<ConstantId> vocabulary(const RdfGraph& g) {
  std::vector<bool> seen(g.constant_count(), false);
  for (const auto& t : g.triples()) {
    seen[index_of(t.s)] = true;
    seen[index_of(t.p)] = true;
    seen[index_of(t.o)] = true;
  }
  std::vector<ConstantId> out;
  for (std::uint32_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(constant_at(i));
  return out;
}

}  // namespace cfpq
