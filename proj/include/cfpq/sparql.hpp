#pragma once

// cfSPARQL: a SPARQL-style pattern algebra whose leaves are context-free
// triple patterns and raw triple patterns, with set-of-mappings semantics.

#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cfpq/query.hpp"
#include "cfpq/rdf.hpp"

namespace cfpq {

struct Constraint;
using ConstraintPtr = std::shared_ptr<const Constraint>;

/// Boolean combination of `?x = ?y`, `?x = c` and `bound(?x)`.
struct Constraint {
  enum class Kind : std::uint8_t { EqualVars, EqualConst, Bound, And, Or, Not };

  Kind kind = Kind::Bound;
  std::string var;
  /// EqualVars: the second variable. EqualConst: the constant's stored
  /// lexical form.
  std::string other;
  ConstraintPtr left;
  ConstraintPtr right;
};

namespace constraint {
ConstraintPtr equal(std::string var, std::string other_var);
ConstraintPtr equal_constant(std::string var, std::string lexical);
ConstraintPtr bound(std::string var);
ConstraintPtr all(ConstraintPtr l, ConstraintPtr r);
ConstraintPtr any(ConstraintPtr l, ConstraintPtr r);
ConstraintPtr negate(ConstraintPtr c);
}  // namespace constraint

enum class Truth : std::uint8_t { False, True, Error };

/// Three-valued: `=` on an unbound variable is an error, `bound` never is.
/// Connectives follow the usual SPARQL error tables.
Truth evaluate_constraint(const Constraint& c, const Mapping& m,
                          const Dictionary& dict);

struct PatternNode;
using Pattern = std::shared_ptr<const PatternNode>;

struct PatternNode {
  enum class Kind : std::uint8_t {
    Cftp,
    Uccftp,
    Triple,
    And,
    Union,
    Opt,
    Filter,
    Select
  };

  Kind kind = Kind::Triple;
  /// Cftp/Uccftp: {x, y}. Triple: {x, y, z}. Select: the projection.
  std::vector<Variable> vars;
  /// Cftp/Uccftp: name of the query in the registry.
  std::string query;
  Pattern left;
  Pattern right;
  ConstraintPtr constraint;
};

namespace pattern {
Pattern cftp(Variable x, std::string query, Variable y);
Pattern uccftp(Variable x, std::string query, Variable y);
Pattern triple(Variable x, Variable y, Variable z);
Pattern conj(Pattern l, Pattern r);
Pattern disj(Pattern l, Pattern r);
Pattern opt(Pattern l, Pattern r);
Pattern filter(Pattern p, ConstraintPtr c);
Pattern select(std::vector<Variable> vars, Pattern p);
}  // namespace pattern

/// Named queries referenced by Cftp and Uccftp leaves. A Cftp must name a
/// query with a single disjunct.
using QueryRegistry = std::map<std::string, Uccfpq, std::less<>>;

/// Variables a result mapping may bind, sorted.
std::set<std::string> pattern_variables(const Pattern& p);

/// Throws EvaluationError on unknown query names or a multi-disjunct Cftp.
MappingSet evaluate_pattern(QueryEngine& engine, const QueryRegistry& registry,
                            const Pattern& p);
MappingSet evaluate_pattern(const RdfGraph& g, const QueryRegistry& registry,
                            const Pattern& p);

/// Rewrites every Uccftp into a Union of per-disjunct Select_{x,y}(And ...)
/// subpatterns over fresh single-nonterminal queries, which are added to
/// `registry`. Non-head body variables get fresh names.
Pattern normalize_uccf(const Pattern& p, QueryRegistry& registry);

/// S-expression rendering in the file syntax.
std::string to_string(const Pattern& p);
std::string to_string(const Constraint& c);

struct SparqlDocument {
  QueryRegistry queries;
  Pattern pattern;
};

/// File format: any number of
///   query Name {
///     grammar { ... }
///     q(?x,?y) := ...
///   }
/// blocks, then one pattern:
///   (cftp ?x Q ?y) (uccftp ?x Q ?y) (tp ?x ?y ?z) (and p p) (union p p)
///   (opt p p) (filter c p) (select (?x ?y) p)
/// with constraints (= ?x ?y), (= ?x <iri>), (bound ?x), (and c c),
/// (or c c), (not c).
SparqlDocument parse_sparql(std::string_view text);
SparqlDocument load_sparql(const std::string& path);

/// Header of sorted variable names, one row per mapping in set order;
/// unbound cells are empty.
void write_mappings_tsv(std::ostream& out, const MappingSet& answers,
                        const std::set<std::string>& vars,
                        const Dictionary& dict);

}  // namespace cfpq
