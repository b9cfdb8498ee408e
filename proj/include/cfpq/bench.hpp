#pragma once

// Class-hierarchy benchmark: same-layer (Q1) and adjacent-layer (Q2) queries
// over ontology graphs.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfpq/grammar.hpp"
#include "cfpq/rdf.hpp"

namespace cfpq {

inline constexpr std::string_view kSubClassOfIri =
    "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr std::string_view kTypeIri =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

/// S -> next-1::sc S next::sc | next-1::type S next::type | eps
Cfg hierarchy_q1(std::string_view subclass_iri = kSubClassOfIri,
                 std::string_view type_iri = kTypeIri);
/// S -> B S | eps
/// B -> next::sc B next-1::sc | B next-1::sc | next::sc next-1::sc
Cfg hierarchy_q2(std::string_view subclass_iri = kSubClassOfIri);

struct BenchOptions {
  std::string subclass_iri{kSubClassOfIri};
  std::string type_iri{kTypeIri};
};

struct BenchRow {
  std::string name;
  std::size_t triple_count = 0;
  std::string query;  // "Q1" or "Q2"
  double elapsed_ms = 0;
  std::size_t result_count = 0;
  /// Only meaningful for Q1.
  bool reflexive = false;
  bool symmetric = false;
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

/// Published reference sizes for the ontologies commonly used with these
/// queries. Used for side-by-side reporting only.
struct ReferenceCounts {
  std::string_view name;
  std::size_t triples;
  std::size_t q1;
  std::size_t q2;
};

std::span<const ReferenceCounts> reference_counts();
std::optional<ReferenceCounts> find_reference(std::string_view name);

/// Runs Q1 and Q2 on one graph. Elapsed time covers solve and evaluation.
std::vector<BenchRow> bench_graph(const RdfGraph& g, const std::string& name,
                                  const BenchOptions& options = {});
/// One pair of rows per file; the name is the file stem.
BenchReport bench_hierarchy(const std::vector<std::string>& files,
                            const BenchOptions& options = {});

bool is_reflexive(const PairSet& pairs, std::size_t constant_count);
bool is_symmetric(const PairSet& pairs);

/// Tab-separated table with reference columns where a reference exists.
void write_bench_tsv(std::ostream& out, const BenchReport& report);

}  // namespace cfpq
