#pragma once

// Conjunctive context-free path queries and their unions, evaluated as
// natural joins over context-free relations and raw triple patterns.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cfpq/axis_graph.hpp"
#include "cfpq/grammar.hpp"
#include "cfpq/rdf.hpp"
#include "cfpq/recognizer.hpp"

namespace cfpq {

/// A query variable; the name includes the leading '?'.
struct Variable {
  std::string name;

  auto operator<=>(const Variable&) const = default;
};

struct TriplePatternAtom {
  Variable s;
  Variable p;
  Variable o;
};

struct NonterminalAtom {
  std::string nonterminal;
  Variable from;
  Variable to;
};

using Atom = std::variant<TriplePatternAtom, NonterminalAtom>;

std::vector<Variable> variables_of(const Atom& atom);

/// q(?x, ?y) := a1 & ... & am over a grammar.
struct Ccfpq {
  Variable x;
  Variable y;
  std::vector<Atom> body;
  std::shared_ptr<const Cfg> grammar;
};

/// q(?x, ?y) := body1 | ... | bodym, all bodies sharing head and grammar.
struct Uccfpq {
  std::string name = "q";
  Variable x;
  Variable y;
  std::vector<std::vector<Atom>> disjuncts;
  std::shared_ptr<const Cfg> grammar;

  Ccfpq disjunct(std::size_t i) const { return {x, y, disjuncts[i], grammar}; }
  /// A single disjunct consisting of a single nonterminal atom.
  bool is_cfpq() const;
};

/// Checks the head/body variable constraint and that every nonterminal atom
/// names a nonterminal of the grammar. Throws ContractError.
void validate(const Uccfpq& q);

/// A finite partial assignment of variables to constants.
class Mapping {
 public:
  Mapping() = default;

  /// Returns false (and leaves the mapping unchanged) when `var` is already
  /// bound to a different constant.
  bool bind(const std::string& var, ConstantId value);
  std::optional<ConstantId> get(const std::string& var) const;
  bool binds(const std::string& var) const { return bindings_.contains(var); }
  std::size_t size() const { return bindings_.size(); }
  const std::map<std::string, ConstantId>& bindings() const {
    return bindings_;
  }

  bool compatible(const Mapping& other) const;
  /// Union of two compatible mappings.
  Mapping merged(const Mapping& other) const;
  Mapping restricted(const std::set<std::string>& vars) const;

  auto operator<=>(const Mapping&) const = default;

 private:
  std::map<std::string, ConstantId> bindings_;
};

using MappingSet = std::set<Mapping>;

/// Answer set of one conjunctive query: mappings over exactly {x, y}.
/// `rel` must have been solved for `q.grammar` over convert(g).
MappingSet evaluate_ccfpq(const RdfGraph& g, const CfRelation& rel,
                          const Ccfpq& q);
MappingSet evaluate_uccfpq(const RdfGraph& g, const CfRelation& rel,
                           const Uccfpq& q);

/// (x, y) pairs of an answer set, sorted.
std::vector<ConstantPair> answer_pairs(const MappingSet& answers,
                                       const Variable& x, const Variable& y);

/// Owns the labeled graph of one RDF graph and memoizes solved relations
/// per grammar digest. Safe to share between threads.
class QueryEngine {
 public:
  explicit QueryEngine(std::shared_ptr<const RdfGraph> graph);
  explicit QueryEngine(const RdfGraph& graph);

  const RdfGraph& graph() const { return *graph_; }
  const LabeledGraph& labeled_graph() const { return labeled_; }

  std::shared_ptr<const CfRelation> relation_for(const Cfg& grammar);
  MappingSet evaluate(const Uccfpq& q);
  std::size_t cached_relations() const;

 private:
  std::shared_ptr<const RdfGraph> graph_;
  LabeledGraph labeled_;
  std::uint64_t graph_digest_;
  mutable std::mutex mutex_;
  std::map<std::pair<std::uint64_t, std::uint64_t>,
           std::shared_ptr<const CfRelation>>
      cache_;
};

/// Parses a query file: an optional `grammar { ... }` block followed by
///   q(?x,?y) := atom (& atom)* ( | atom (& atom)* )*
/// where atoms are `V(?a,?b)` or `(?a,?b,?c)`.
Uccfpq parse_query(std::string_view text);
Uccfpq load_query(const std::string& path);

/// Parses only the `q(?x,?y) := ...` part against an existing grammar.
/// `line_offset` shifts reported line numbers.
Uccfpq parse_query_expression(std::string_view text,
                              std::shared_ptr<const Cfg> grammar,
                              std::size_t line_offset = 0);

}  // namespace cfpq
