#include "cfpq/query.hpp"

#include <algorithm>
#include <unordered_map>

#include "cfpq/error.hpp"
#include "cfpq/hash.hpp"

namespace cfpq {

std::vector<Variable> variables_of(const Atom& atom) {
  if (const auto* tp = std::get_if<TriplePatternAtom>(&atom))
    return {tp->s, tp->p, tp->o};
  const auto& nt = std::get<NonterminalAtom>(atom);
  return {nt.from, nt.to};
}

bool Uccfpq::is_cfpq() const {
  return disjuncts.size() == 1 && disjuncts[0].size() == 1 &&
         std::holds_alternative<NonterminalAtom>(disjuncts[0][0]);
}

void validate(const Uccfpq& q) {
  if (!q.grammar) throw ContractError("query has no grammar");
  if (q.disjuncts.empty()) throw ContractError("query has no body");
  for (const auto& body : q.disjuncts) {
    if (body.empty()) throw ContractError("query disjunct has no atoms");
    std::set<Variable> vars;
    for (const Atom& atom : body) {
      for (const auto& v : variables_of(atom)) vars.insert(v);
      if (const auto* nt = std::get_if<NonterminalAtom>(&atom)) {
        if (!q.grammar->find_nonterminal(nt->nonterminal))
          throw ContractError("unknown nonterminal '" + nt->nonterminal + "'");
      }
    }
    for (const auto& head : {q.x, q.y})
      if (!vars.contains(head))
        throw ContractError("head variable " + head.name +
                            " does not occur in the body");
  }
}

bool Mapping::bind(const std::string& var, ConstantId value) {
  auto [it, inserted] = bindings_.emplace(var, value);
  return inserted || it->second == value;
}

std::optional<ConstantId> Mapping::get(const std::string& var) const {
  if (auto it = bindings_.find(var); it != bindings_.end()) return it->second;
  return std::nullopt;
}

bool Mapping::compatible(const Mapping& other) const {
  const auto& small = size() <= other.size() ? bindings_ : other.bindings_;
  const auto& large = size() <= other.size() ? other.bindings_ : bindings_;
  for (const auto& [var, value] : small) {
    if (auto it = large.find(var); it != large.end() && it->second != value)
      return false;
  }
  return true;
}

Mapping Mapping::merged(const Mapping& other) const {
  Mapping out = *this;
  for (const auto& [var, value] : other.bindings_) out.bindings_.emplace(var, value);
  return out;
}

Mapping Mapping::restricted(const std::set<std::string>& vars) const {
  Mapping out;
  for (const auto& [var, value] : bindings_)
    if (vars.contains(var)) out.bindings_.emplace(var, value);
  return out;
}

namespace {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<ConstantId>> rows;
};

struct RowHash {
  std::size_t operator()(const std::vector<ConstantId>& row) const {
    std::size_t seed = row.size();
    for (ConstantId c : row) hash_combine(seed, index_of(c));
    return seed;
  }
};

// Builds a table with one column per distinct variable; rows whose repeated
// variables disagree are dropped.
class TableBuilder {
 public:
  explicit TableBuilder(const std::vector<Variable>& vars) {
    for (const auto& v : vars) {
      auto it = std::find(table_.columns.begin(), table_.columns.end(), v.name);
      if (it == table_.columns.end()) {
        slot_.push_back(table_.columns.size());
        table_.columns.push_back(v.name);
      } else {
        slot_.push_back(static_cast<std::size_t>(it - table_.columns.begin()));
      }
    }
  }

  void add(std::initializer_list<ConstantId> values) {
    std::vector<ConstantId> row(table_.columns.size());
    std::vector<bool> set(row.size(), false);
    std::size_t i = 0;
    for (ConstantId value : values) {
      std::size_t s = slot_[i++];
      if (set[s] && row[s] != value) return;
      row[s] = value;
      set[s] = true;
    }
    table_.rows.push_back(std::move(row));
  }

  Table take() { return std::move(table_); }

 private:
  Table table_;
  std::vector<std::size_t> slot_;
};

Table atom_table(const RdfGraph& g, const CfRelation& rel, const Atom& atom) {
  TableBuilder builder(variables_of(atom));
  if (std::holds_alternative<TriplePatternAtom>(atom)) {
    for (const auto& t : g.triples()) builder.add({t.s, t.p, t.o});
  } else {
    const auto& nt = std::get<NonterminalAtom>(atom);
    auto v = rel.find_nonterminal(nt.nonterminal);
    if (!v)
      throw ContractError("relation has no nonterminal '" + nt.nonterminal +
                          "'");
    for (const auto& [a, b] : relation_of(rel, *v)) builder.add({a, b});
  }
  return builder.take();
}

Table join(const Table& left, const Table& right) {
  std::vector<std::size_t> left_keys, right_keys, right_rest;
  for (std::size_t j = 0; j < right.columns.size(); ++j) {
    auto it = std::find(left.columns.begin(), left.columns.end(),
                        right.columns[j]);
    if (it != left.columns.end()) {
      left_keys.push_back(static_cast<std::size_t>(it - left.columns.begin()));
      right_keys.push_back(j);
    } else {
      right_rest.push_back(j);
    }
  }

  Table out;
  out.columns = left.columns;
  for (std::size_t j : right_rest) out.columns.push_back(right.columns[j]);

  std::unordered_map<std::vector<ConstantId>, std::vector<std::size_t>, RowHash>
      index;
  for (std::size_t r = 0; r < right.rows.size(); ++r) {
    std::vector<ConstantId> key;
    for (std::size_t j : right_keys) key.push_back(right.rows[r][j]);
    index[std::move(key)].push_back(r);
  }
  for (const auto& row : left.rows) {
    std::vector<ConstantId> key;
    for (std::size_t j : left_keys) key.push_back(row[j]);
    auto it = index.find(key);
    if (it == index.end()) continue;
    for (std::size_t r : it->second) {
      auto combined = row;
      for (std::size_t j : right_rest) combined.push_back(right.rows[r][j]);
      out.rows.push_back(std::move(combined));
    }
  }
  return out;
}

bool shares_column(const Table& a, const Table& b) {
  for (const auto& c : b.columns)
    if (std::find(a.columns.begin(), a.columns.end(), c) != a.columns.end())
      return true;
  return false;
}

void check_contract(const RdfGraph& g, const CfRelation& rel, const Cfg& cfg) {
  if (rel.grammar_digest() != cfg.digest())
    throw ContractError(
        "context-free relation was solved for a different grammar");
  if (rel.graph_digest() != g.digest())
    throw ContractError(
        "context-free relation was solved over a different graph");
}

MappingSet evaluate_body(const RdfGraph& g, const CfRelation& rel,
                         const Variable& x, const Variable& y,
                         const std::vector<Atom>& body) {
  std::vector<Table> pending;
  for (const Atom& atom : body) pending.push_back(atom_table(g, rel, atom));

  // Greedy order: smallest table first, then the smallest table that shares
  // a variable with what has been joined so far.
  auto smallest = [&](auto&& eligible) {
    std::size_t best = pending.size();
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (!eligible(pending[i])) continue;
      if (best == pending.size() ||
          pending[i].rows.size() < pending[best].rows.size())
        best = i;
    }
    return best;
  };
  auto take = [&](std::size_t i) {
    Table t = std::move(pending[i]);
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(i));
    return t;
  };

  Table acc = take(smallest([](const Table&) { return true; }));
  while (!pending.empty() && !acc.rows.empty()) {
    std::size_t next =
        smallest([&](const Table& t) { return shares_column(acc, t); });
    if (next == pending.size()) next = smallest([](const Table&) { return true; });
    acc = join(acc, take(next));
  }

  MappingSet out;
  if (!pending.empty()) return out;
  auto column = [&](const Variable& v) {
    auto it = std::find(acc.columns.begin(), acc.columns.end(), v.name);
    if (it == acc.columns.end())
      throw ContractError("head variable " + v.name + " not bound by body");
    return static_cast<std::size_t>(it - acc.columns.begin());
  };
  const std::size_t cx = column(x);
  const std::size_t cy = column(y);
  for (const auto& row : acc.rows) {
    Mapping m;
    m.bind(x.name, row[cx]);
    m.bind(y.name, row[cy]);
    out.insert(std::move(m));
  }
  return out;
}

}  // namespace

MappingSet evaluate_ccfpq(const RdfGraph& g, const CfRelation& rel,
                          const Ccfpq& q) {
  if (!q.grammar) throw ContractError("query has no grammar");
  check_contract(g, rel, *q.grammar);
  return evaluate_body(g, rel, q.x, q.y, q.body);
}

MappingSet evaluate_uccfpq(const RdfGraph& g, const CfRelation& rel,
                           const Uccfpq& q) {
  validate(q);
  check_contract(g, rel, *q.grammar);
  MappingSet out;
  for (const auto& body : q.disjuncts) {
    auto part = evaluate_body(g, rel, q.x, q.y, body);
    out.insert(part.begin(), part.end());
  }
  return out;
}

std::vector<ConstantPair> answer_pairs(const MappingSet& answers,
                                       const Variable& x, const Variable& y) {
  std::vector<ConstantPair> out;
  for (const Mapping& m : answers) {
    auto a = m.get(x.name);
    auto b = m.get(y.name);
    if (a && b) out.emplace_back(*a, *b);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

QueryEngine::QueryEngine(std::shared_ptr<const RdfGraph> graph)
    : graph_(std::move(graph)),
      labeled_(convert(*graph_)),
      graph_digest_(labeled_.source_digest()) {}

QueryEngine::QueryEngine(const RdfGraph& graph)
    : QueryEngine(std::make_shared<const RdfGraph>(graph)) {}

std::shared_ptr<const CfRelation> QueryEngine::relation_for(
    const Cfg& grammar) {
  const auto key = std::make_pair(graph_digest_, grammar.digest());
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  auto rel = std::make_shared<const CfRelation>(
      solve(labeled_, normalize(grammar)));
  std::lock_guard lock(mutex_);
  return cache_.emplace(key, std::move(rel)).first->second;
}

MappingSet QueryEngine::evaluate(const Uccfpq& q) {
  validate(q);
  auto rel = relation_for(*q.grammar);
  return evaluate_uccfpq(*graph_, *rel, q);
}

std::size_t QueryEngine::cached_relations() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

}  // namespace cfpq
