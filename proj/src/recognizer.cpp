#include "cfpq/recognizer.hpp"

#include <algorithm>
#include <deque>
#include <random>

namespace cfpq {

namespace {
const std::vector<ConstantId> kEmpty;
}

bool CfRelation::contains(NonterminalIndex v, ConstantId a,
                          ConstantId b) const {
  if (v >= nonterminal_count_ || index_of(a) >= node_count_ ||
      index_of(b) >= node_count_)
    return false;
  return facts_.contains(key(v, a, b));
}

bool CfRelation::insert(NonterminalIndex v, ConstantId a, ConstantId b) {
  if (!facts_.insert(key(v, a, b)).second) return false;
  by_target_[v * node_count_ + index_of(b)].push_back(a);
  by_source_[v * node_count_ + index_of(a)].push_back(b);
  return true;
}

const std::vector<ConstantId>& CfRelation::sources_of(
    NonterminalIndex v, ConstantId target) const {
  if (v >= nonterminal_count_ || index_of(target) >= node_count_) return kEmpty;
  return by_target_[v * node_count_ + index_of(target)];
}

const std::vector<ConstantId>& CfRelation::targets_of(
    NonterminalIndex v, ConstantId source) const {
  if (v >= nonterminal_count_ || index_of(source) >= node_count_) return kEmpty;
  return by_source_[v * node_count_ + index_of(source)];
}

std::vector<Fact> CfRelation::facts() const {
  std::vector<Fact> out;
  out.reserve(facts_.size());
  for (NonterminalIndex v = 0; v < nonterminal_count_; ++v)
    for (std::uint32_t a = 0; a < node_count_; ++a)
      for (ConstantId b : by_source_[v * node_count_ + a])
        out.push_back({v, constant_at(a), b});
  std::sort(out.begin(), out.end());
  return out;
}

class Solver {
 public:
  Solver(const LabeledGraph& lg, const NormCfg& g, const SolveOptions& options)
      : lg_(lg), g_(g), options_(options) {}

  CfRelation run() {
    const std::size_t n = lg_.node_count();
    const std::size_t nts = g_.nonterminal_count();
    rel_.nonterminal_count_ = nts;
    rel_.node_count_ = n;
    rel_.grammar_ = g_.grammar();
    rel_.grammar_digest_ = g_.source_digest();
    rel_.graph_digest_ = lg_.source_digest();
    rel_.by_target_.resize(nts * n);
    rel_.by_source_.resize(nts * n);
    stats().fact_bound = nts * n * n;
    if (options_.shuffle_seed) rng_.seed(*options_.shuffle_seed);

    seed();
    stats().seed_facts = rel_.size();

    while (!worklist_.empty()) {
      stats().max_worklist = std::max(stats().max_worklist, worklist_.size());
      Fact f = pop();
      ++stats().iterations;
      propagate(f);
    }
    stats().facts = rel_.size();
    return std::move(rel_);
  }

 private:
  SolveStats& stats() { return rel_.stats_; }

  void add(NonterminalIndex v, ConstantId a, ConstantId b) {
    if (rel_.insert(v, a, b)) worklist_.push_back({v, a, b});
  }

  Fact pop() {
    if (options_.shuffle_seed) {
      std::uniform_int_distribution<std::size_t> pick(0, worklist_.size() - 1);
      std::swap(worklist_[pick(rng_)], worklist_.back());
      Fact f = worklist_.back();
      worklist_.pop_back();
      return f;
    }
    Fact f = worklist_.front();
    worklist_.pop_front();
    return f;
  }

  void seed() {
    for (NonterminalIndex v : g_.epsilon_heads())
      for (std::uint32_t a = 0; a < lg_.node_count(); ++a)
        add(v, constant_at(a), constant_at(a));

    const Cfg& grammar = g_.grammar();
    for (TerminalIndex t = 0; t < grammar.terminal_count(); ++t) {
      const auto& heads = g_.heads_of_terminal(t);
      if (heads.empty()) continue;
      auto label = lg_.resolve(grammar.terminal(t));
      if (!label) continue;
      for (const auto& [a, b] : lg_.edges_with_label(*label))
        for (NonterminalIndex v : heads) add(v, a, b);
    }
  }

  // Joins the popped fact (v, a, b) with every fact adjacent to it: a left
  // partner (u, a', a) for rules h -> u v, and a right partner (u, b, b')
  // for rules h -> v u. Index loops re-read the size because the partner
  // list may grow while we iterate it.
  void propagate(const Fact& f) {
    const auto [v, a, b] = f;
    for (const auto& rule : g_.rules_with_right(v)) {
      const auto& lefts = rel_.sources_of(rule.left, a);
      for (std::size_t i = 0; i < lefts.size(); ++i) {
        ++stats().join_probes;
        add(rule.head, lefts[i], b);
      }
    }
    for (const auto& rule : g_.rules_with_left(v)) {
      const auto& rights = rel_.targets_of(rule.right, b);
      for (std::size_t i = 0; i < rights.size(); ++i) {
        ++stats().join_probes;
        add(rule.head, a, rights[i]);
      }
    }
  }

  const LabeledGraph& lg_;
  const NormCfg& g_;
  const SolveOptions& options_;
  CfRelation rel_;
  std::deque<Fact> worklist_;
  std::mt19937_64 rng_;
};

CfRelation solve(const LabeledGraph& lg, const NormCfg& g,
                 const SolveOptions& options) {
  return Solver(lg, g, options).run();
}

std::vector<ConstantPair> relation_of(const CfRelation& r, NonterminalIndex v) {
  std::vector<ConstantPair> out;
  if (v >= r.nonterminal_count()) return out;
  for (std::uint32_t a = 0; a < r.node_count(); ++a)
    for (ConstantId b : r.targets_of(v, constant_at(a)))
      out.emplace_back(constant_at(a), b);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ConstantPair> relation_of(const CfRelation& r,
                                      std::string_view nonterminal) {
  auto v = r.find_nonterminal(nonterminal);
  if (!v) return {};
  return relation_of(r, *v);
}

}  // namespace cfpq
