#include "cfpq/oracle.hpp"

#include <map>

#include "cfpq/error.hpp"

namespace cfpq {

TraceSet enumerate_traces(const LabeledGraph& lg, std::size_t max_len,
                          const std::set<LabelId>* allowed) {
  TraceSet out;
  std::vector<TraceEntry> layer;
  for (std::uint32_t a = 0; a < lg.node_count(); ++a)
    layer.push_back({constant_at(a), constant_at(a), {}});
  out.insert(layer.begin(), layer.end());

  for (std::size_t len = 1; len <= max_len && !layer.empty(); ++len) {
    std::vector<TraceEntry> next;
    for (const TraceEntry& e : layer) {
      for (const auto& [label, to] : lg.outgoing(e.target)) {
        if (allowed && !allowed->contains(label)) continue;
        TraceEntry ext{e.source, to, e.trace};
        ext.trace.push_back(label);
        next.push_back(std::move(ext));
      }
    }
    out.insert(next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

bool cyk_membership(const NormCfg& g, NonterminalIndex v, const Word& w) {
  const std::size_t n = w.size();
  const std::size_t nts = g.nonterminal_count();
  const std::vector<bool> nullable = nullable_nonterminals(g.grammar());

  // table[i][j]: nonterminals deriving w[i..j).
  std::vector<std::vector<std::vector<bool>>> table(
      n + 1, std::vector<std::vector<bool>>(n + 1));
  for (std::size_t i = 0; i <= n; ++i) table[i][i] = nullable;

  for (std::size_t len = 1; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      const std::size_t j = i + len;
      auto& cell = table[i][j];
      cell.assign(nts, false);
      if (len == 1 && w[i] < g.grammar().terminal_count())
        for (NonterminalIndex h : g.heads_of_terminal(w[i])) cell[h] = true;
      // Splits at k = i or k = j refer back to this cell, so iterate.
      bool changed = true;
      while (changed) {
        changed = false;
        for (const auto& r : g.binary_rules()) {
          if (cell[r.head]) continue;
          for (std::size_t k = i; k <= j; ++k) {
            if (table[i][k][r.left] && table[k][j][r.right]) {
              cell[r.head] = true;
              changed = true;
              break;
            }
          }
        }
      }
    }
  }
  return v < nts && table[0][n][v];
}

namespace {

// Walks grouped by trace: each layer maps a trace to the endpoint pairs of
// the walks carrying it. Only labels that are grammar terminals are
// followed, since any other label makes every extension a non-member.
class TraceWalker {
 public:
  TraceWalker(const LabeledGraph& lg, const Cfg& cfg, NonterminalIndex v)
      : lg_(lg), norm_(normalize(cfg)), v_(v) {
    if (v >= cfg.nonterminal_count())
      throw ContractError("nonterminal index out of range");
    const Cfg& ng = norm_.grammar();
    for (TerminalIndex t = 0; t < ng.terminal_count(); ++t)
      if (auto id = lg.resolve(ng.terminal(t))) terminal_of_[*id] = t;
    PairSet diagonal;
    for (std::uint32_t a = 0; a < lg.node_count(); ++a)
      diagonal.emplace(constant_at(a), constant_at(a));
    layer_[Word{}] = std::move(diagonal);
    absorb();
  }

  const PairSet& result() const { return result_; }
  bool exhausted() const { return layer_.empty(); }

  // True when the followed edges form no cycle, so every walk is finite and
  // the walker is eventually exhausted.
  bool acyclic() const {
    const std::size_t n = lg_.node_count();
    std::vector<std::size_t> indegree(n, 0);
    for (std::uint32_t a = 0; a < n; ++a)
      for (const auto& [label, to] : lg_.outgoing(constant_at(a)))
        if (terminal_of_.contains(label)) ++indegree[index_of(to)];
    std::vector<std::uint32_t> ready;
    for (std::uint32_t a = 0; a < n; ++a)
      if (indegree[a] == 0) ready.push_back(a);
    std::size_t removed = 0;
    while (!ready.empty()) {
      std::uint32_t a = ready.back();
      ready.pop_back();
      ++removed;
      for (const auto& [label, to] : lg_.outgoing(constant_at(a)))
        if (terminal_of_.contains(label) && --indegree[index_of(to)] == 0)
          ready.push_back(index_of(to));
    }
    return removed == n;
  }

  void step() {
    std::map<Word, PairSet> next;
    for (const auto& [word, pairs] : layer_) {
      for (const auto& [a, b] : pairs) {
        for (const auto& [label, c] : lg_.outgoing(b)) {
          auto t = terminal_of_.find(label);
          if (t == terminal_of_.end()) continue;
          Word ext = word;
          ext.push_back(t->second);
          next[std::move(ext)].emplace(a, c);
        }
      }
    }
    layer_ = std::move(next);
    absorb();
  }

 private:
  void absorb() {
    for (const auto& [word, pairs] : layer_)
      if (cyk_membership(norm_, v_, word))
        result_.insert(pairs.begin(), pairs.end());
  }

  const LabeledGraph& lg_;
  NormCfg norm_;
  NonterminalIndex v_;
  std::map<LabelId, TerminalIndex> terminal_of_;
  std::map<Word, PairSet> layer_;
  PairSet result_;
};

}  // namespace

PairSet oracle_relation(const LabeledGraph& lg, const Cfg& cfg,
                        NonterminalIndex v, std::size_t max_len) {
  TraceWalker walker(lg, cfg, v);
  for (std::size_t len = 1; len <= max_len && !walker.exhausted(); ++len)
    walker.step();
  return walker.result();
}

PairSet oracle_relation(const RdfGraph& g, const Cfg& cfg, NonterminalIndex v,
                        std::size_t max_len) {
  return oracle_relation(convert(g), cfg, v, max_len);
}

std::optional<StableOracle> stabilized_oracle_relation(const LabeledGraph& lg,
                                                       const Cfg& cfg,
                                                       NonterminalIndex v,
                                                       std::size_t cap) {
  TraceWalker walker(lg, cfg, v);
  // Without cycles the walk is run to exhaustion, which is exact; an early
  // plateau (for instance an empty result before the shortest member word
  // fits) is not trusted.
  const bool finite = walker.acyclic();
  PairSet previous = walker.result();
  std::size_t since = 0;  // length at which `previous` was first reached
  for (std::size_t len = 1; len <= cap; ++len) {
    if (walker.exhausted()) return StableOracle{previous, since};
    walker.step();
    if (walker.result() != previous) {
      previous = walker.result();
      since = len;
    } else if (!finite && len - since >= 2) {
      return StableOracle{previous, since};
    }
  }
  return std::nullopt;
}

}  // namespace cfpq
