#pragma once

// Edge-labeled directed graph over the navigation-axis alphabet, built from
// an RDF graph by expanding every triple into its twelve axis moves.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cfpq/axis.hpp"
#include "cfpq/rdf.hpp"

namespace cfpq {

enum class LabelId : std::uint32_t {};

constexpr std::uint32_t index_of(LabelId id) {
  return static_cast<std::uint32_t>(id);
}

/// Id-level label. `qualifier` is a constant index, the stratum number for
/// Axis::Nest, or kNoQualifier for a bare axis.
struct EdgeLabel {
  static constexpr std::uint32_t kNoQualifier = UINT32_MAX;

  Axis axis = Axis::Self;
  bool inverse = false;
  std::uint32_t qualifier = kNoQualifier;

  auto operator<=>(const EdgeLabel&) const = default;
};

struct LabeledEdge {
  ConstantId source;
  LabelId label;
  ConstantId target;

  auto operator<=>(const LabeledEdge&) const = default;
};

class LabeledGraph {
 public:
  /// (label, neighbour) pairs sorted by label, then neighbour.
  using Adjacency = std::vector<std::pair<LabelId, ConstantId>>;

  LabeledGraph() = default;
  LabeledGraph(std::size_t node_count,
               std::shared_ptr<const Dictionary> dictionary,
               std::uint64_t source_digest);

  /// Nodes are the dense constant ids [0, node_count()).
  std::size_t node_count() const { return outgoing_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t label_count() const { return labels_.size(); }

  LabelId intern_label(const EdgeLabel& label);
  std::optional<LabelId> find_label(const EdgeLabel& label) const;
  const EdgeLabel& label(LabelId id) const { return labels_[index_of(id)]; }

  /// Maps a textual label onto this graph's label ids. Returns nullopt when
  /// the qualifier names no constant of the graph or no edge carries it.
  std::optional<LabelId> resolve(const AxisLabel& label) const;
  AxisLabel describe(LabelId id) const;

  /// Returns false if the edge was already present.
  bool add_edge(ConstantId source, LabelId label, ConstantId target);
  bool has_edge(ConstantId source, LabelId label, ConstantId target) const;

  /// Edges carrying `label`, in insertion order.
  std::span<const ConstantPair> edges_with_label(LabelId label) const;
  const Adjacency& outgoing(ConstantId node) const {
    return outgoing_[index_of(node)];
  }
  const Adjacency& incoming(ConstantId node) const {
    return incoming_[index_of(node)];
  }
  /// Targets of `label`-edges leaving `node`.
  std::vector<ConstantId> successors(ConstantId node, LabelId label) const;

  /// All edges, sorted by (source, label, target).
  std::vector<LabeledEdge> edges() const;

  std::uint64_t source_digest() const { return source_digest_; }
  const Dictionary& dictionary() const { return *dictionary_; }
  std::shared_ptr<const Dictionary> shared_dictionary() const {
    return dictionary_;
  }

 private:
  std::shared_ptr<const Dictionary> dictionary_ =
      std::make_shared<const Dictionary>();
  std::uint64_t source_digest_ = 0;
  std::vector<EdgeLabel> labels_;
  std::map<EdgeLabel, LabelId> label_ids_;
  std::vector<std::vector<ConstantPair>> by_label_;
  std::vector<Adjacency> outgoing_;
  std::vector<Adjacency> incoming_;
  std::size_t edge_count_ = 0;
};

/// The RDF convertor: self and self::c loops on every constant plus the
/// twelve axis edges of every triple.
LabeledGraph convert(const RdfGraph& g);

/// TSV dump, one `source<TAB>label<TAB>target` line per edge, sorted.
void write_labeled_graph(std::ostream& out, const LabeledGraph& lg);

}  // namespace cfpq
