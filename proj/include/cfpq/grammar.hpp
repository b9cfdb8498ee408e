#pragma once

// Context-free grammars over axis-label terminals, without a distinguished
// start symbol: every nonterminal defines its own language.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cfpq/axis.hpp"

namespace cfpq {

using NonterminalIndex = std::uint32_t;
using TerminalIndex = std::uint32_t;

struct Symbol {
  enum class Kind : std::uint8_t { Nonterminal, Terminal };

  Kind kind = Kind::Nonterminal;
  std::uint32_t index = 0;

  static Symbol nonterminal(NonterminalIndex i) {
    return {Kind::Nonterminal, i};
  }
  static Symbol terminal(TerminalIndex i) { return {Kind::Terminal, i}; }
  bool is_terminal() const { return kind == Kind::Terminal; }

  auto operator<=>(const Symbol&) const = default;
};

struct Rule {
  NonterminalIndex head = 0;
  std::vector<Symbol> body;  // empty body is the epsilon rule

  auto operator<=>(const Rule&) const = default;
};

/// A terminal string, as indices into the grammar's terminal table.
using Word = std::vector<TerminalIndex>;

class Cfg {
 public:
  /// Returns the existing index when the name is already declared.
  NonterminalIndex add_nonterminal(std::string_view name);
  TerminalIndex add_terminal(const AxisLabel& label);
  /// Returns false if an identical rule already exists.
  bool add_rule(Rule rule);

  std::optional<NonterminalIndex> find_nonterminal(std::string_view name) const;
  std::optional<TerminalIndex> find_terminal(const AxisLabel& label) const;

  std::size_t nonterminal_count() const { return nonterminals_.size(); }
  std::size_t terminal_count() const { return terminals_.size(); }
  const std::string& nonterminal_name(NonterminalIndex i) const {
    return nonterminals_[i];
  }
  const AxisLabel& terminal(TerminalIndex i) const { return terminals_[i]; }
  const std::vector<AxisLabel>& terminals() const { return terminals_; }
  const std::vector<Rule>& rules() const { return rules_; }

  /// Grammar-file rendering: one `Head -> alt | alt` line per nonterminal in
  /// declaration order.
  std::string to_string() const;
  std::string render(const Word& word) const;

  /// Content digest over names, terminal table and rule set.
  std::uint64_t digest() const;

 private:
  std::vector<std::string> nonterminals_;
  std::map<std::string, NonterminalIndex, std::less<>> nonterminal_ids_;
  std::vector<AxisLabel> terminals_;
  std::map<AxisLabel, TerminalIndex> terminal_ids_;
  std::vector<Rule> rules_;
  std::set<Rule> rule_set_;
};

/// Parses the grammar file format:
///   # comment
///   Head -> sym sym ... | eps | ...
/// Nonterminals match [A-Z][A-Za-z0-9_]*; terminals are axis tokens.
Cfg parse_grammar(std::string_view text);
Cfg load_grammar(const std::string& path);

/// True iff `name` is a legal nonterminal identifier of the file format.
bool is_nonterminal_name(std::string_view name);

/// A grammar whose rules all have the shape v -> u w, v -> a or v -> eps,
/// with rule tables indexed for the recognizer and CYK.
class NormCfg {
 public:
  struct BinaryRule {
    NonterminalIndex head;
    NonterminalIndex left;
    NonterminalIndex right;
  };

  /// Validates the shape; throws ContractError on the first offending rule.
  static NormCfg adopt(Cfg grammar);

  const Cfg& grammar() const { return grammar_; }
  std::size_t nonterminal_count() const { return grammar_.nonterminal_count(); }

  /// Digest of the grammar this one was normalized from.
  std::uint64_t source_digest() const { return source_digest_; }

  const std::vector<NonterminalIndex>& epsilon_heads() const {
    return epsilon_heads_;
  }
  /// Heads of rules v -> a, per terminal.
  const std::vector<NonterminalIndex>& heads_of_terminal(TerminalIndex t) const {
    return terminal_heads_[t];
  }
  const std::vector<BinaryRule>& binary_rules() const { return binary_; }
  /// Binary rules h -> x w keyed by x (their left child) and by w.
  const std::vector<BinaryRule>& rules_with_left(NonterminalIndex v) const {
    return by_left_[v];
  }
  const std::vector<BinaryRule>& rules_with_right(NonterminalIndex v) const {
    return by_right_[v];
  }

 private:
  friend NormCfg normalize(const Cfg& g);
  NormCfg() = default;

  Cfg grammar_;
  std::uint64_t source_digest_ = 0;
  std::vector<NonterminalIndex> epsilon_heads_;
  std::vector<std::vector<NonterminalIndex>> terminal_heads_;
  std::vector<BinaryRule> binary_;
  std::vector<std::vector<BinaryRule>> by_left_;
  std::vector<std::vector<BinaryRule>> by_right_;
};

bool is_norm_form(const Rule& rule);

/// Converts to norm form while preserving L(G_v) for every original
/// nonterminal v. Original nonterminals and terminals keep their indices;
/// fresh nonterminals are appended with names outside the identifier syntax.
NormCfg normalize(const Cfg& g);

/// Nonterminals that derive the empty string.
std::vector<bool> nullable_nonterminals(const Cfg& g);

/// Every word of L(G_v) with at most `max_len` terminals.
std::set<Word> generate_strings(const Cfg& g, NonterminalIndex v,
                                std::size_t max_len);

}  // namespace cfpq
