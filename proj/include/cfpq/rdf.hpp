#pragma once

// RDF data model: interned constants, triples, graphs and N-Triples I/O.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cfpq {

/// Dense id of an interned constant. Ids are assigned in first-seen order.
enum class ConstantId : std::uint32_t {};

constexpr std::uint32_t index_of(ConstantId id) {
  return static_cast<std::uint32_t>(id);
}
constexpr ConstantId constant_at(std::uint32_t index) {
  return static_cast<ConstantId>(index);
}

using ConstantPair = std::pair<ConstantId, ConstantId>;
using PairSet = std::set<ConstantPair>;

enum class TermKind { Iri, Literal, BlankNode };

/// Classifies a stored lexical form. IRIs are stored without angle brackets,
/// literals keep their quotes and suffix, blank nodes keep the `_:` prefix.
TermKind term_kind(std::string_view lexical);

/// Bidirectional constant table; interning is injective on lexical forms.
class Dictionary {
 public:
  ConstantId intern(std::string_view lexical);
  std::optional<ConstantId> find(std::string_view lexical) const;
  const std::string& lexical(ConstantId id) const;
  std::size_t size() const { return lexicals_.size(); }

 private:
  std::vector<std::string> lexicals_;
  std::unordered_map<std::string, ConstantId> ids_;
};

struct Triple {
  ConstantId s;
  ConstantId p;
  ConstantId o;

  auto operator<=>(const Triple&) const = default;
};

/// A finite set of triples. The dictionary only ever holds constants that
/// occur in some triple, so the dense id range [0, constant_count()) is
/// exactly voc(G).
class RdfGraph {
 public:
  RdfGraph();
  RdfGraph(const RdfGraph& other);
  RdfGraph& operator=(const RdfGraph& other);
  RdfGraph(RdfGraph&&) noexcept = default;
  RdfGraph& operator=(RdfGraph&&) noexcept = default;

  /// Interns the three terms and inserts the triple. Returns false if the
  /// triple was already present.
  bool add(std::string_view s, std::string_view p, std::string_view o);

  const std::set<Triple>& triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }

  std::size_t constant_count() const { return dictionary_->size(); }
  const Dictionary& dictionary() const { return *dictionary_; }
  std::shared_ptr<const Dictionary> shared_dictionary() const {
    return dictionary_;
  }

  std::optional<ConstantId> find(std::string_view lexical) const {
    return dictionary_->find(lexical);
  }
  const std::string& lexical(ConstantId id) const {
    return dictionary_->lexical(id);
  }

  /// Content digest over the lexical triple set; independent of the order
  /// in which triples were added.
  std::uint64_t digest() const;

 private:
  std::shared_ptr<Dictionary> dictionary_;
  std::set<Triple> triples_;
};

/// The active domain: every constant occurring in some triple, ascending.
std::vector<ConstantId> vocabulary(const RdfGraph& g);

struct NTriplesOptions {
  /// Reject blank nodes instead of interning them as opaque constants.
  bool strict = false;
};

struct NTriplesReport {
  std::size_t lines = 0;
  std::size_t duplicates = 0;
  std::size_t blank_nodes = 0;
  std::vector<std::string> warnings;
};

RdfGraph parse_ntriples(std::istream& in, const NTriplesOptions& options = {},
                        NTriplesReport* report = nullptr);
RdfGraph parse_ntriples(std::string_view text,
                        const NTriplesOptions& options = {},
                        NTriplesReport* report = nullptr);
RdfGraph load_ntriples(const std::string& path,
                       const NTriplesOptions& options = {},
                       NTriplesReport* report = nullptr);

/// Renders a constant as an N-Triples term.
std::string render_term(std::string_view lexical);

/// One triple per line, sorted by rendered text.
void write_ntriples(std::ostream& out, const RdfGraph& g);

}  // namespace cfpq
