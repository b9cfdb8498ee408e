// cfpq: command-line front end for the context-free path query engine.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cfpq/axis_graph.hpp"
#include "cfpq/bench.hpp"
#include "cfpq/error.hpp"
#include "cfpq/grammar.hpp"
#include "cfpq/nre.hpp"
#include "cfpq/oracle.hpp"
#include "cfpq/query.hpp"
#include "cfpq/rdf.hpp"
#include "cfpq/recognizer.hpp"
#include "cfpq/sparql.hpp"

using namespace cfpq;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kEvaluationFailed = 1;
constexpr int kUsage = 2;

struct Output {
  std::string format = "tsv";
  std::string path;

  bool json() const { return format == "json"; }

  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file) {
      file = std::make_unique<std::ofstream>(path);
      if (!*file) throw std::runtime_error("cannot write '" + path + "'");
    }
    return *file;
  }

  std::unique_ptr<std::ofstream> file;
};

void add_output_flags(CLI::App* cmd, Output& out) {
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"tsv", "json"}));
  cmd->add_option("--out", out.path, "Write results to FILE");
}

RdfGraph read_graph(const std::string& path, bool strict) {
  NTriplesOptions options;
  options.strict = strict;
  NTriplesReport report;
  RdfGraph g = load_ntriples(path, options, &report);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  return g;
}

void write_pairs(Output& out, const RdfGraph& g,
                 const std::vector<ConstantPair>& pairs) {
  std::ostream& os = out.stream();
  for (const auto& [a, b] : pairs) {
    if (out.json())
      os << json{{"x", g.lexical(a)}, {"y", g.lexical(b)}}.dump() << '\n';
    else
      os << g.lexical(a) << '\t' << g.lexical(b) << '\n';
  }
}

NonterminalIndex require_nonterminal(const Cfg& grammar,
                                     const std::string& name) {
  auto v = grammar.find_nonterminal(name);
  if (!v) throw ParseError(0, 0, "grammar has no nonterminal '" + name + "'");
  return *v;
}

struct Args {
  Output out;
  std::string graph;
  std::string grammar;
  std::string start;
  std::string query;
  std::string expr;
  std::string engine = "both";
  std::string pattern;
  std::string suite = "hierarchy";
  std::vector<std::string> graphs;
  std::string subclass_iri{kSubClassOfIri};
  std::string type_iri{kTypeIri};
  std::size_t max_len = 6;
  std::optional<std::uint64_t> seed;
  bool strict = false;
  bool stats = false;
  bool normalize_first = false;
};

int run_convert(Args& a) {
  RdfGraph g = read_graph(a.graph, a.strict);
  LabeledGraph lg = convert(g);
  if (!a.out.json()) {
    write_labeled_graph(a.out.stream(), lg);
    return kOk;
  }
  std::ostream& os = a.out.stream();
  for (const auto& e : lg.edges())
    os << json{{"source", g.lexical(e.source)},
               {"label", to_string(lg.describe(e.label))},
               {"target", g.lexical(e.target)}}
              .dump()
       << '\n';
  return kOk;
}

int run_solve(Args& a) {
  RdfGraph g = read_graph(a.graph, a.strict);
  Cfg grammar = load_grammar(a.grammar);
  std::optional<NonterminalIndex> start;
  if (!a.start.empty()) start = require_nonterminal(grammar, a.start);

  SolveOptions options;
  options.shuffle_seed = a.seed;
  CfRelation rel = solve(convert(g), normalize(grammar), options);

  if (start) {
    write_pairs(a.out, g, relation_of(rel, *start));
  } else {
    std::ostream& os = a.out.stream();
    for (const Fact& f : rel.facts()) {
      if (f.nonterminal >= grammar.nonterminal_count()) continue;
      const std::string& v = grammar.nonterminal_name(f.nonterminal);
      if (a.out.json())
        os << json{{"nonterminal", v},
                   {"x", g.lexical(f.source)},
                   {"y", g.lexical(f.target)}}
                  .dump()
           << '\n';
      else
        os << v << '\t' << g.lexical(f.source) << '\t' << g.lexical(f.target)
           << '\n';
    }
  }
  if (a.stats) {
    const SolveStats& s = rel.stats();
    std::cerr << "facts " << s.facts << " (bound " << s.fact_bound
              << "), seeds " << s.seed_facts << ", iterations " << s.iterations
              << ", join probes " << s.join_probes << ", max worklist "
              << s.max_worklist << '\n';
  }
  return kOk;
}

int run_query(Args& a) {
  RdfGraph g = read_graph(a.graph, a.strict);
  Uccfpq q = load_query(a.query);
  QueryEngine engine(g);
  MappingSet answers = engine.evaluate(q);
  write_pairs(a.out, g, answer_pairs(answers, q.x, q.y));
  return kOk;
}

int run_nre(Args& a) {
  RdfGraph g = read_graph(a.graph, a.strict);
  Nre e = parse_nre(a.expr);
  LabeledGraph lg = convert(g);
  std::optional<PairSet> direct, compiled;
  if (a.engine != "compiled") direct = eval_nre(lg, e);
  if (a.engine != "direct") compiled = execute_plan(g, lg, compile_nre(e));

  const PairSet& shown = direct ? *direct : *compiled;
  write_pairs(a.out, g, {shown.begin(), shown.end()});
  std::cerr << "fragment: " << fragment_name(classify_nre(e)) << '\n';
  if (direct && compiled && *direct != *compiled) {
    std::cerr << "engines disagree: direct " << direct->size()
              << " pairs, compiled " << compiled->size() << " pairs\n";
    return kEvaluationFailed;
  }
  return kOk;
}

int run_sparql(Args& a) {
  RdfGraph g = read_graph(a.graph, a.strict);
  SparqlDocument doc = load_sparql(a.pattern);
  Pattern p = doc.pattern;
  if (a.normalize_first) p = normalize_uccf(p, doc.queries);
  QueryEngine engine(g);
  MappingSet answers = evaluate_pattern(engine, doc.queries, p);
  auto vars = pattern_variables(p);
  if (!a.out.json()) {
    write_mappings_tsv(a.out.stream(), answers, vars, g.dictionary());
    return kOk;
  }
  std::ostream& os = a.out.stream();
  for (const Mapping& m : answers) {
    json row = json::object();
    for (const auto& [var, value] : m.bindings())
      row[var.substr(1)] = g.lexical(value);
    os << row.dump() << '\n';
  }
  return kOk;
}

int run_oracle(Args& a) {
  RdfGraph g = read_graph(a.graph, a.strict);
  Cfg grammar = load_grammar(a.grammar);
  NonterminalIndex v = require_nonterminal(grammar, a.start);
  PairSet pairs = oracle_relation(g, grammar, v, a.max_len);
  write_pairs(a.out, g, {pairs.begin(), pairs.end()});
  return kOk;
}

int run_bench(Args& a) {
  if (a.suite != "hierarchy")
    throw ParseError(0, 0, "unknown suite '" + a.suite + "'");
  std::vector<std::string> files;
  for (const auto& path : a.graphs) {
    if (std::filesystem::is_directory(path)) {
      std::vector<std::string> found;
      for (const auto& entry : std::filesystem::directory_iterator(path))
        if (entry.path().extension() == ".nt")
          found.push_back(entry.path().string());
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (std::filesystem::exists(path)) {
      files.push_back(path);
    } else {
      throw ParseError(0, 0, "no such file or directory '" + path + "'");
    }
  }
  BenchOptions options;
  options.subclass_iri = a.subclass_iri;
  options.type_iri = a.type_iri;
  BenchReport report = bench_hierarchy(files, options);

  if (!a.out.json()) {
    write_bench_tsv(a.out.stream(), report);
    return kOk;
  }
  std::ostream& os = a.out.stream();
  for (const auto& row : report.rows) {
    json j{{"name", row.name},
           {"triples", row.triple_count},
           {"query", row.query},
           {"elapsed_ms", row.elapsed_ms},
           {"results", row.result_count}};
    if (row.query == "Q1") {
      j["reflexive"] = row.reflexive;
      j["symmetric"] = row.symmetric;
    }
    if (auto ref = find_reference(row.name)) {
      j["reference_triples"] = ref->triples;
      j["reference_results"] = row.query == "Q1" ? ref->q1 : ref->q2;
    }
    os << j.dump() << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Context-free path queries over RDF graphs"};
  app.require_subcommand(1);
  Args a;

  auto graph_flags = [&](CLI::App* cmd) {
    cmd->add_option("--graph", a.graph, "N-Triples file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_flag("--strict", a.strict, "Reject blank nodes");
    add_output_flags(cmd, a.out);
  };

  auto* convert_cmd =
      app.add_subcommand("convert", "Print the axis-labeled graph");
  graph_flags(convert_cmd);

  auto* solve_cmd = app.add_subcommand("solve", "Compute a context-free relation");
  graph_flags(solve_cmd);
  solve_cmd->add_option("--grammar", a.grammar, "Grammar file")
      ->required()
      ->check(CLI::ExistingFile);
  solve_cmd->add_option("--start", a.start,
                        "Nonterminal to report (default: all)");
  solve_cmd->add_option("--seed", a.seed, "Randomize the worklist order");
  solve_cmd->add_flag("--stats", a.stats, "Print solver counters");

  auto* query_cmd = app.add_subcommand("query", "Evaluate a (U)CCFPQ");
  graph_flags(query_cmd);
  query_cmd->add_option("--query", a.query, "Query file")
      ->required()
      ->check(CLI::ExistingFile);

  auto* nre_cmd = app.add_subcommand("nre", "Evaluate a nested regular expression");
  graph_flags(nre_cmd);
  nre_cmd->add_option("--expr", a.expr, "Expression")->required();
  nre_cmd->add_option("--engine", a.engine, "Evaluation engine")
      ->check(CLI::IsMember({"direct", "compiled", "both"}));

  auto* sparql_cmd = app.add_subcommand("sparql", "Evaluate a cfSPARQL pattern");
  graph_flags(sparql_cmd);
  sparql_cmd->add_option("--pattern", a.pattern, "Pattern file")
      ->required()
      ->check(CLI::ExistingFile);
  sparql_cmd->add_flag("--normalize", a.normalize_first,
                       "Rewrite uccftp leaves before evaluating");

  auto* oracle_cmd =
      app.add_subcommand("oracle", "Brute-force relation by trace enumeration");
  graph_flags(oracle_cmd);
  oracle_cmd->add_option("--grammar", a.grammar, "Grammar file")
      ->required()
      ->check(CLI::ExistingFile);
  oracle_cmd->add_option("--start", a.start, "Nonterminal")->required();
  oracle_cmd->add_option("--max-len", a.max_len, "Longest walk")
      ->check(CLI::Range(0, 12));

  auto* bench_cmd = app.add_subcommand("bench", "Class-hierarchy benchmark");
  bench_cmd->add_option("--suite", a.suite, "Benchmark suite")
      ->check(CLI::IsMember({"hierarchy"}));
  bench_cmd->add_option("--graphs", a.graphs, "N-Triples files or directories")
      ->required();
  bench_cmd->add_option("--subclass-iri", a.subclass_iri, "subClassOf IRI");
  bench_cmd->add_option("--type-iri", a.type_iri, "type IRI");
  add_output_flags(bench_cmd, a.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*convert_cmd) return run_convert(a);
    if (*solve_cmd) return run_solve(a);
    if (*query_cmd) return run_query(a);
    if (*nre_cmd) return run_nre(a);
    if (*sparql_cmd) return run_sparql(a);
    if (*oracle_cmd) return run_oracle(a);
    if (*bench_cmd) return run_bench(a);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kEvaluationFailed;
  } catch (const EvaluationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kEvaluationFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kEvaluationFailed;
  }
  return kUsage;
}
