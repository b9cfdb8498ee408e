#pragma once

// Nested regular expressions: syntax, reference semantics, fragment
// classification, and compilation into stratified context-free plans.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cfpq/axis.hpp"
#include "cfpq/axis_graph.hpp"
#include "cfpq/query.hpp"
#include "cfpq/rdf.hpp"

namespace cfpq {

struct NreNode;
using Nre = std::shared_ptr<const NreNode>;

struct NreNode {
  enum class Kind : std::uint8_t { Axis, AxisConst, Nest, Seq, Alt, Star };

  Kind kind = Kind::Axis;
  /// Axis, AxisConst and Nest: the navigation axis (qualifier set only for
  /// AxisConst).
  AxisLabel label;
  /// Nest and Star: the operand. Seq and Alt: the left operand.
  Nre left;
  Nre right;
};

namespace nre {
Nre axis(Axis a, bool inverse = false);
Nre axis_const(Axis a, bool inverse, std::string qualifier);
Nre nest(Axis a, bool inverse, Nre inner);
Nre seq(Nre l, Nre r);
Nre alt(Nre l, Nre r);
Nre star(Nre e);
}  // namespace nre

/// Surface syntax: `axis`, `axis::iri`, `axis::<iri>`, `axis::[e]`, `e/e`,
/// `e|e`, `e*`, parentheses; `*` binds tighter than `/`, which binds
/// tighter than `|`. Axes are self, next, edge, node with an optional `-1`.
Nre parse_nre(std::string_view text);

/// Fully parenthesized rendering; parse_nre(to_string(e)) is structurally
/// equal to e.
std::string to_string(const Nre& e);
bool structurally_equal(const Nre& a, const Nre& b);
std::size_t depth(const Nre& e);

enum class NreFragment { Basic, Nested, Union, Full };

std::string_view fragment_name(NreFragment f);
/// Basic: no `|` and no nesting; Nested: nesting but no `|`;
/// Union: `|` but no nesting; Full: both.
NreFragment classify_nre(const Nre& e);

/// Reference semantics over convert(g). Star includes the whole diagonal of
/// voc(G).
PairSet eval_nre(const RdfGraph& g, const Nre& e);
PairSet eval_nre(const LabeledGraph& lg, const Nre& e);

/// A compiled nre. Each stratum materializes one nesting: the inner plan's
/// relation is evaluated, and {(a, b) | (a, axis::c, b) is an edge and c is
/// in the domain of the inner relation} is attached to the labeled graph
/// under the synthetic label `nest::#label`.
struct QueryPlan {
  struct Stratum {
    std::uint32_t label = 0;
    Axis axis = Axis::Self;
    bool inverse = false;
    std::shared_ptr<const QueryPlan> inner;
  };

  std::vector<Stratum> strata;
  /// A single-atom query over the root nonterminal of `top.grammar`.
  Uccfpq top;
  std::string root;
  /// Rules that stem from `|` alternatives.
  std::size_t union_rules = 0;
};

QueryPlan compile_nre(const Nre& e);

PairSet execute_plan(const RdfGraph& g, const QueryPlan& plan);
PairSet execute_plan(const RdfGraph& g, const LabeledGraph& lg,
                     const QueryPlan& plan);

}  // namespace cfpq
