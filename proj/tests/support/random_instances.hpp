#pragma once

// Random graphs, grammars, expressions and patterns for property tests.

#include <random>
#include <string>
#include <vector>

#include "cfpq/axis.hpp"
#include "cfpq/grammar.hpp"
#include "cfpq/nre.hpp"
#include "cfpq/rdf.hpp"
#include "cfpq/sparql.hpp"

namespace cfpq::testing {

using Rng = std::mt19937_64;

/// Constant names c0 .. c{n-1}.
std::string constant_name(std::size_t i);

/// Up to `max_triples` triples over at most `max_constants` constants, no
/// other restriction (cycles, repeated positions allowed).
RdfGraph random_graph(Rng& rng, std::size_t max_constants,
                      std::size_t max_triples);

/// Every triple (s, p, o) satisfies rank(s) < rank(p) < rank(o) for a hidden
/// random ranking, so every non-inverse, non-self axis edge of the converted
/// graph points forward in that ranking.
RdfGraph random_forward_graph(Rng& rng, std::size_t max_constants,
                              std::size_t max_triples);

/// Non-inverse, non-self labels of convert(g), bare and qualified, in their
/// textual form.
std::vector<AxisLabel> forward_labels(const RdfGraph& g);
/// Every label of convert(g) except the Nest ones.
std::vector<AxisLabel> all_labels(const RdfGraph& g);

/// Nonterminals A, B, C, ... (at most `max_nonterminals`), at most
/// `max_rules` rules with bodies of length 0 to 3 drawn from the nonterminals
/// and `terminals`. The first nonterminal always has at least one rule.
Cfg random_grammar(Rng& rng, const std::vector<AxisLabel>& terminals,
                   std::size_t max_nonterminals, std::size_t max_rules);

/// An expression of depth at most `max_depth` over the six constructors.
/// Qualifiers are drawn from `constants`.
Nre random_nre(Rng& rng, std::size_t max_depth,
               const std::vector<std::string>& constants);

/// Random cfSPARQL pattern over a small variable pool. Leaves refer to the
/// names in `cftp_queries` (single disjunct) and `uccftp_queries`.
Pattern random_pattern(Rng& rng, std::size_t max_depth,
                       const std::vector<std::string>& cftp_queries,
                       const std::vector<std::string>& uccftp_queries,
                       const std::vector<std::string>& constants);

/// Random UCCFPQ over `grammar`, 1 to 3 disjuncts with 1 to 3 atoms each.
Uccfpq random_query(Rng& rng, std::shared_ptr<const Cfg> grammar,
                    std::size_t max_disjuncts);

}  // namespace cfpq::testing
