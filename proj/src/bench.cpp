#include "cfpq/bench.hpp"

#include <array>
#include <chrono>
#include <filesystem>
#include <ostream>

#include "cfpq/query.hpp"
#include "cfpq/recognizer.hpp"

namespace cfpq {

Cfg hierarchy_q1(std::string_view subclass_iri, std::string_view type_iri) {
  const std::string sc(subclass_iri), ty(type_iri);
  return parse_grammar("S -> next-1::<" + sc + "> S next::<" + sc + ">" +
                       " | next-1::<" + ty + "> S next::<" + ty + "> | eps\n");
}

Cfg hierarchy_q2(std::string_view subclass_iri) {
  const std::string up = "next::<" + std::string(subclass_iri) + ">";
  const std::string down = "next-1::<" + std::string(subclass_iri) + ">";
  return parse_grammar("S -> B S | eps\n"
                       "B -> " + up + " B " + down + " | B " + down + " | " +
                       up + " " + down + "\n");
}

namespace {
constexpr std::array<ReferenceCounts, 12> kReference{{
    {"protege", 41, 509, 0},
    {"funding", 144, 296, 77},
    {"skos", 254, 810, 1},
    {"foaf", 454, 1929, 324},
    {"generation", 319, 2164, 0},
    {"univ-bench", 306, 2540, 228},
    {"travel", 327, 2499, 151},
    {"people+pets", 703, 9472, 120},
    {"biomedical-measure-primitive", 459, 15156, 9178},
    {"atom-primitive", 561, 15454, 13940},
    {"pizza", 1980, 56195, 4694},
    {"wine", 2012, 66572, 79},
}};
}  // namespace

std::span<const ReferenceCounts> reference_counts() { return kReference; }

std::optional<ReferenceCounts> find_reference(std::string_view name) {
  for (const auto& r : kReference)
    if (r.name == name) return r;
  return std::nullopt;
}

bool is_reflexive(const PairSet& pairs, std::size_t constant_count) {
  for (std::uint32_t a = 0; a < constant_count; ++a)
    if (!pairs.contains({constant_at(a), constant_at(a)})) return false;
  return true;
}

bool is_symmetric(const PairSet& pairs) {
  for (const auto& [a, b] : pairs)
    if (!pairs.contains({b, a})) return false;
  return true;
}

std::vector<BenchRow> bench_graph(const RdfGraph& g, const std::string& name,
                                  const BenchOptions& options) {
  const LabeledGraph lg = convert(g);
  std::vector<BenchRow> rows;
  const std::pair<std::string, Cfg> queries[] = {
      {"Q1", hierarchy_q1(options.subclass_iri, options.type_iri)},
      {"Q2", hierarchy_q2(options.subclass_iri)},
  };
  for (const auto& [id, grammar] : queries) {
    Uccfpq q;
    q.x = Variable{"?x"};
    q.y = Variable{"?y"};
    q.grammar = std::make_shared<const Cfg>(grammar);
    q.disjuncts = {{NonterminalAtom{"S", q.x, q.y}}};

    auto start = std::chrono::steady_clock::now();
    CfRelation rel = solve(lg, normalize(grammar));
    MappingSet answers = evaluate_uccfpq(g, rel, q);
    auto stop = std::chrono::steady_clock::now();

    BenchRow row;
    row.name = name;
    row.triple_count = g.size();
    row.query = id;
    row.elapsed_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    row.result_count = answers.size();
    if (id == "Q1") {
      auto pairs = answer_pairs(answers, q.x, q.y);
      PairSet set(pairs.begin(), pairs.end());
      row.reflexive = is_reflexive(set, g.constant_count());
      row.symmetric = is_symmetric(set);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

BenchReport bench_hierarchy(const std::vector<std::string>& files,
                            const BenchOptions& options) {
  BenchReport report;
  for (const auto& file : files) {
    RdfGraph g = load_ntriples(file);
    auto rows = bench_graph(g, std::filesystem::path(file).stem().string(),
                            options);
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  return report;
}

void write_bench_tsv(std::ostream& out, const BenchReport& report) {
  out << "name\ttriples\tquery\telapsed_ms\tresults\treference_triples\t"
         "reference_results\n";
  for (const auto& row : report.rows) {
    out << row.name << '\t' << row.triple_count << '\t' << row.query << '\t'
        << row.elapsed_ms << '\t' << row.result_count << '\t';
    if (auto ref = find_reference(row.name))
      out << ref->triples << '\t' << (row.query == "Q1" ? ref->q1 : ref->q2);
    else
      out << '\t';
    out << '\n';
  }
}

}  // namespace cfpq
