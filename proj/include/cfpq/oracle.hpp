#pragma once

// Brute-force reference implementations used as ground truth in tests:
// bounded walk/trace enumeration and CYK membership.

#include <compare>
#include <optional>
#include <set>
#include <vector>

#include "cfpq/axis_graph.hpp"
#include "cfpq/grammar.hpp"
#include "cfpq/rdf.hpp"

namespace cfpq {

struct TraceEntry {
  ConstantId source;
  ConstantId target;
  std::vector<LabelId> trace;

  auto operator<=>(const TraceEntry&) const = default;
};

using TraceSet = std::set<TraceEntry>;

/// Every (a, b, w) where w labels a walk of at most `max_len` edges from a to
/// b, including (a, a, eps). When `allowed` is given, only edges with those
/// labels are followed.
TraceSet enumerate_traces(const LabeledGraph& lg, std::size_t max_len,
                          const std::set<LabelId>* allowed = nullptr);

/// CYK over a norm-form grammar, extended to eps rules.
bool cyk_membership(const NormCfg& g, NonterminalIndex v, const Word& w);

/// {(a, b) | some walk of at most `max_len` edges from a to b has a trace in
/// L(G_v)}. Traces are checked with CYK under normalize(cfg).
PairSet oracle_relation(const LabeledGraph& lg, const Cfg& cfg,
                        NonterminalIndex v, std::size_t max_len);
PairSet oracle_relation(const RdfGraph& g, const Cfg& cfg, NonterminalIndex v,
                        std::size_t max_len);

struct StableOracle {
  PairSet pairs;
  /// Length at which the result last changed.
  std::size_t max_len = 0;
};

/// Grows max_len from 0 until no longer walks exist or, when the followed
/// edges contain a cycle, until the oracle relation is unchanged for two
/// consecutive increments. Returns nullopt if neither happens by `cap`.
std::optional<StableOracle> stabilized_oracle_relation(const LabeledGraph& lg,
                                                       const Cfg& cfg,
                                                       NonterminalIndex v,
                                                       std::size_t cap);

}  // namespace cfpq
