#include <algorithm>

#include "cfpq/error.hpp"
#include "cfpq/grammar.hpp"
#include "cfpq/hash.hpp"

namespace cfpq {

NonterminalIndex Cfg::add_nonterminal(std::string_view name) {
  if (auto it = nonterminal_ids_.find(name); it != nonterminal_ids_.end())
    return it->second;
  auto index = static_cast<NonterminalIndex>(nonterminals_.size());
  nonterminals_.emplace_back(name);
  nonterminal_ids_.emplace(std::string(name), index);
  return index;
}

TerminalIndex Cfg::add_terminal(const AxisLabel& label) {
  if (auto it = terminal_ids_.find(label); it != terminal_ids_.end())
    return it->second;
  auto index = static_cast<TerminalIndex>(terminals_.size());
  terminals_.push_back(label);
  terminal_ids_.emplace(label, index);
  return index;
}

bool Cfg::add_rule(Rule rule) {
  if (rule.head >= nonterminals_.size())
    throw ContractError("rule head out of range");
  for (const Symbol& s : rule.body) {
    std::size_t limit =
        s.is_terminal() ? terminals_.size() : nonterminals_.size();
    if (s.index >= limit) throw ContractError("rule symbol out of range");
  }
  if (!rule_set_.insert(rule).second) return false;
  rules_.push_back(std::move(rule));
  return true;
}

std::optional<NonterminalIndex> Cfg::find_nonterminal(
    std::string_view name) const {
  if (auto it = nonterminal_ids_.find(name); it != nonterminal_ids_.end())
    return it->second;
  return std::nullopt;
}

std::optional<TerminalIndex> Cfg::find_terminal(const AxisLabel& label) const {
  if (auto it = terminal_ids_.find(label); it != terminal_ids_.end())
    return it->second;
  return std::nullopt;
}

std::string Cfg::to_string() const {
  std::vector<std::vector<const Rule*>> by_head(nonterminals_.size());
  for (const Rule& r : rules_) by_head[r.head].push_back(&r);
  std::string out;
  for (NonterminalIndex v = 0; v < nonterminals_.size(); ++v) {
    if (by_head[v].empty()) continue;
    out += nonterminals_[v] + " ->";
    bool first = true;
    for (const Rule* r : by_head[v]) {
      if (!first) out += " |";
      first = false;
      if (r->body.empty()) out += " eps";
      for (const Symbol& s : r->body) {
        out += ' ';
        out += s.is_terminal() ? cfpq::to_string(terminals_[s.index])
                               : nonterminals_[s.index];
      }
    }
    out += '\n';
  }
  return out;
}

std::string Cfg::render(const Word& word) const {
  if (word.empty()) return "eps";
  std::string out;
  for (TerminalIndex t : word) {
    if (!out.empty()) out += ' ';
    out += cfpq::to_string(terminals_[t]);
  }
  return out;
}

std::uint64_t Cfg::digest() const {
  Fnv1a h;
  h.update_u64(nonterminals_.size());
  for (const auto& name : nonterminals_) {
    h.update(name);
    h.update("\x1f");
  }
  h.update_u64(terminals_.size());
  for (const auto& t : terminals_) {
    h.update(cfpq::to_string(t));
    h.update("\x1f");
  }
  // Rule order does not matter.
  h.update_u64(rule_set_.size());
  for (const Rule& r : rule_set_) {
    h.update_u64(r.head);
    h.update_u64(r.body.size());
    for (const Symbol& s : r.body)
      h.update_u64((static_cast<std::uint64_t>(s.kind) << 32) | s.index);
  }
  return h.value();
}

bool is_norm_form(const Rule& rule) {
  switch (rule.body.size()) {
    case 0:
      return true;
    case 1:
      return rule.body[0].is_terminal();
    case 2:
      return !rule.body[0].is_terminal() && !rule.body[1].is_terminal();
    default:
      return false;
  }
}

NormCfg NormCfg::adopt(Cfg grammar) {
  NormCfg n;
  const std::size_t nts = grammar.nonterminal_count();
  n.terminal_heads_.resize(grammar.terminal_count());
  n.by_left_.resize(nts);
  n.by_right_.resize(nts);
  for (const Rule& r : grammar.rules()) {
    if (!is_norm_form(r))
      throw ContractError("grammar is not in norm form: rule for '" +
                          grammar.nonterminal_name(r.head) +
                          "' has an illegal body shape");
    switch (r.body.size()) {
      case 0:
        n.epsilon_heads_.push_back(r.head);
        break;
      case 1:
        n.terminal_heads_[r.body[0].index].push_back(r.head);
        break;
      default: {
        BinaryRule b{r.head, r.body[0].index, r.body[1].index};
        n.binary_.push_back(b);
        n.by_left_[b.left].push_back(b);
        n.by_right_[b.right].push_back(b);
      }
    }
  }
  n.source_digest_ = grammar.digest();
  n.grammar_ = std::move(grammar);
  return n;
}

std::vector<bool> nullable_nonterminals(const Cfg& g) {
  std::vector<bool> nullable(g.nonterminal_count(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : g.rules()) {
      if (nullable[r.head]) continue;
      bool all = std::all_of(r.body.begin(), r.body.end(), [&](Symbol s) {
        return !s.is_terminal() && nullable[s.index];
      });
      if (all) {
        nullable[r.head] = true;
        changed = true;
      }
    }
  }
  return nullable;
}

}  // namespace cfpq
