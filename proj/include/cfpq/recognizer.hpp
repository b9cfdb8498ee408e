#pragma once

// Worklist fixpoint for the context-free relation: computes every fact
// (v, a, b) such that some path from a to b has a trace in L(G_v).

#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "cfpq/axis_graph.hpp"
#include "cfpq/grammar.hpp"

namespace cfpq {

struct SolveOptions {
  /// When set, facts are popped from the worklist in a pseudo-random order
  /// drawn from this seed instead of FIFO. The result must not change.
  std::optional<std::uint64_t> shuffle_seed;
};

struct SolveStats {
  std::size_t seed_facts = 0;
  std::size_t facts = 0;
  std::size_t iterations = 0;   // facts popped from the worklist
  std::size_t join_probes = 0;  // partner facts inspected by the join loops
  std::size_t max_worklist = 0;
  /// |N| * |voc|^2 for this run; facts can never exceed it.
  std::size_t fact_bound = 0;
};

struct Fact {
  NonterminalIndex nonterminal;
  ConstantId source;
  ConstantId target;

  auto operator<=>(const Fact&) const = default;
};

/// The fact set Theta with its two join indexes, kept consistent.
class CfRelation {
 public:
  CfRelation() = default;

  bool contains(NonterminalIndex v, ConstantId a, ConstantId b) const;
  std::size_t size() const { return facts_.size(); }

  /// Facts sorted by (nonterminal, source, target).
  std::vector<Fact> facts() const;
  /// Sources a with (v, a, target) in the relation.
  const std::vector<ConstantId>& sources_of(NonterminalIndex v,
                                            ConstantId target) const;
  /// Targets b with (v, source, b) in the relation.
  const std::vector<ConstantId>& targets_of(NonterminalIndex v,
                                            ConstantId source) const;

  std::size_t nonterminal_count() const { return nonterminal_count_; }
  std::size_t node_count() const { return node_count_; }
  const Cfg& grammar() const { return grammar_; }
  std::optional<NonterminalIndex> find_nonterminal(std::string_view name) const {
    return grammar_.find_nonterminal(name);
  }

  /// Digest of the grammar the relation was solved for (pre-normalization).
  std::uint64_t grammar_digest() const { return grammar_digest_; }
  /// Digest of the RDF graph behind the labeled graph.
  std::uint64_t graph_digest() const { return graph_digest_; }
  const SolveStats& stats() const { return stats_; }

 private:
  friend class Solver;

  std::uint64_t key(NonterminalIndex v, ConstantId a, ConstantId b) const {
    return (static_cast<std::uint64_t>(v) * node_count_ + index_of(a)) *
               node_count_ +
           index_of(b);
  }
  bool insert(NonterminalIndex v, ConstantId a, ConstantId b);

  std::size_t nonterminal_count_ = 0;
  std::size_t node_count_ = 0;
  Cfg grammar_;
  std::uint64_t grammar_digest_ = 0;
  std::uint64_t graph_digest_ = 0;
  SolveStats stats_;
  std::unordered_set<std::uint64_t> facts_;
  std::vector<std::vector<ConstantId>> by_target_;  // [v * n + b] -> a
  std::vector<std::vector<ConstantId>> by_source_;  // [v * n + a] -> b
};

/// Runs the recognizer. Terminals resolve against `lg` by full label
/// equality; terminals naming no label of `lg` match nothing.
CfRelation solve(const LabeledGraph& lg, const NormCfg& g,
                 const SolveOptions& options = {});

/// {(a, b) | (v, a, b) in r}, sorted. Unknown nonterminals give the empty set.
std::vector<ConstantPair> relation_of(const CfRelation& r,
                                      std::string_view nonterminal);
std::vector<ConstantPair> relation_of(const CfRelation& r, NonterminalIndex v);

}  // namespace cfpq
