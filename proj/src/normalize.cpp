#include <map>

#include "cfpq/grammar.hpp"

namespace cfpq {

// Pipeline: TERM (bodies of length >= 2 only), BIN, then UNIT elimination
// through the unit closure. No epsilon elimination and no useless-symbol
// removal: both would change L(G_v) for some original v or drop nonterminals
// that queries may still name.
NormCfg normalize(const Cfg& g) {
  Cfg out;
  for (NonterminalIndex v = 0; v < g.nonterminal_count(); ++v)
    out.add_nonterminal(g.nonterminal_name(v));
  for (TerminalIndex t = 0; t < g.terminal_count(); ++t)
    out.add_terminal(g.terminal(t));

  std::size_t fresh = 0;
  auto fresh_nonterminal = [&](std::string_view kind) {
    // '#' cannot appear in a parsed nonterminal name.
    return out.add_nonterminal("#" + std::string(kind) +
                               std::to_string(fresh++));
  };

  // TERM
  std::map<TerminalIndex, NonterminalIndex> term_proxy;
  auto proxy = [&](TerminalIndex t) {
    if (auto it = term_proxy.find(t); it != term_proxy.end()) return it->second;
    NonterminalIndex x = fresh_nonterminal("T");
    out.add_rule(Rule{x, {Symbol::terminal(t)}});
    term_proxy.emplace(t, x);
    return x;
  };

  std::vector<Rule> unit_rules;
  std::vector<Rule> proper;  // already-normal rules other than unit rules
  for (const Rule& r : g.rules()) {
    if (r.body.size() <= 1) {
      if (r.body.size() == 1 && !r.body[0].is_terminal())
        unit_rules.push_back(r);
      else
        proper.push_back(r);
      continue;
    }
    std::vector<NonterminalIndex> symbols;
    for (const Symbol& s : r.body)
      symbols.push_back(s.is_terminal() ? proxy(s.index) : s.index);

    // BIN
    NonterminalIndex head = r.head;
    for (std::size_t i = 0; i + 2 < symbols.size(); ++i) {
      NonterminalIndex chain = fresh_nonterminal("B");
      proper.push_back(Rule{head, {Symbol::nonterminal(symbols[i]),
                                   Symbol::nonterminal(chain)}});
      head = chain;
    }
    proper.push_back(Rule{head,
                          {Symbol::nonterminal(symbols[symbols.size() - 2]),
                           Symbol::nonterminal(symbols.back())}});
  }

  // UNIT: v gets every non-unit rule of every u in its unit closure.
  const std::size_t n = out.nonterminal_count();
  std::vector<std::vector<bool>> closure(n, std::vector<bool>(n, false));
  for (std::size_t v = 0; v < n; ++v) closure[v][v] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : unit_rules) {
      const auto u = r.body[0].index;
      for (std::size_t w = 0; w < n; ++w) {
        if (closure[u][w] && !closure[r.head][w]) {
          closure[r.head][w] = true;
          changed = true;
        }
      }
    }
  }

  std::vector<std::vector<const Rule*>> by_head(n);
  for (const Rule& r : proper) by_head[r.head].push_back(&r);
  for (const Rule& r : proper) out.add_rule(r);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t u = 0; u < n; ++u) {
      if (u == v || !closure[v][u]) continue;
      for (const Rule* r : by_head[u])
        out.add_rule(Rule{static_cast<NonterminalIndex>(v), r->body});
    }
  }

  NormCfg result = NormCfg::adopt(std::move(out));
  result.source_digest_ = g.digest();
  return result;
}

}  // namespace cfpq
