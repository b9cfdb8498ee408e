#include <atomic>

#include "cfpq/error.hpp"
#include "cfpq/nre.hpp"

namespace cfpq {
namespace {

// Stratum labels are unique process-wide so plans never collide when their
// strata end up on the same augmented graph.
std::atomic<std::uint32_t> next_stratum{0};

class Compiler {
 public:
  QueryPlan run(const Nre& e) {
    NonterminalIndex root = emit(e);
    plan_.root = grammar_->nonterminal_name(root);
    plan_.top.name = "nre";
    plan_.top.x = Variable{"?x"};
    plan_.top.y = Variable{"?y"};
    plan_.top.disjuncts = {{NonterminalAtom{plan_.root, plan_.top.x,
                                            plan_.top.y}}};
    plan_.top.grammar = grammar_;
    return std::move(plan_);
  }

 private:
  NonterminalIndex fresh() {
    return grammar_->add_nonterminal("N" + std::to_string(counter_++));
  }

  void rule(NonterminalIndex head, std::vector<Symbol> body) {
    grammar_->add_rule(Rule{head, std::move(body)});
  }

  NonterminalIndex emit(const Nre& e) {
    using K = NreNode::Kind;
    NonterminalIndex v = 0;
    switch (e->kind) {
      case K::Axis:
      case K::AxisConst:
        v = fresh();
        rule(v, {Symbol::terminal(grammar_->add_terminal(e->label))});
        break;
      case K::Nest: {
        std::uint32_t k = next_stratum++;
        auto inner = std::make_shared<const QueryPlan>(Compiler().run(e->left));
        plan_.strata.push_back({k, e->label.axis, e->label.inverse, inner});
        v = fresh();
        rule(v, {Symbol::terminal(grammar_->add_terminal(nest_label(k)))});
        break;
      }
      case K::Seq: {
        NonterminalIndex l = emit(e->left);
        NonterminalIndex r = emit(e->right);
        v = fresh();
        rule(v, {Symbol::nonterminal(l), Symbol::nonterminal(r)});
        break;
      }
      case K::Alt: {
        NonterminalIndex l = emit(e->left);
        NonterminalIndex r = emit(e->right);
        v = fresh();
        rule(v, {Symbol::nonterminal(l)});
        rule(v, {Symbol::nonterminal(r)});
        plan_.union_rules += 2;
        break;
      }
      case K::Star: {
        NonterminalIndex inner = emit(e->left);
        v = fresh();
        rule(v, {});
        rule(v, {Symbol::nonterminal(inner), Symbol::nonterminal(v)});
        break;
      }
    }
    return v;
  }

  std::shared_ptr<Cfg> grammar_ = std::make_shared<Cfg>();
  QueryPlan plan_;
  std::size_t counter_ = 0;
};

}  // namespace

QueryPlan compile_nre(const Nre& e) {
  if (!e) throw ContractError("cannot compile an empty expression");
  return Compiler().run(e);
}

namespace {

void materialize(const RdfGraph& g, const LabeledGraph& base,
                 LabeledGraph& target, const QueryPlan& plan) {
  for (const auto& stratum : plan.strata) {
    PairSet inner = execute_plan(g, base, *stratum.inner);
    LabelId nest = target.intern_label(
        EdgeLabel{Axis::Nest, false, stratum.label});
    ConstantId last{};
    bool first = true;
    for (const auto& [c, unused] : inner) {
      if (!first && c == last) continue;
      first = false;
      last = c;
      auto label = base.find_label(
          EdgeLabel{stratum.axis, stratum.inverse, index_of(c)});
      if (!label) continue;
      for (const auto& [a, b] : base.edges_with_label(*label))
        target.add_edge(a, nest, b);
    }
  }
}

}  // namespace

PairSet execute_plan(const RdfGraph& g, const LabeledGraph& lg,
                     const QueryPlan& plan) {
  const LabeledGraph* graph = &lg;
  LabeledGraph augmented;
  if (!plan.strata.empty()) {
    augmented = lg;
    materialize(g, lg, augmented, plan);
    graph = &augmented;
  }
  CfRelation rel = solve(*graph, normalize(*plan.top.grammar));
  MappingSet answers = evaluate_uccfpq(g, rel, plan.top);
  PairSet out;
  for (const auto& pair : answer_pairs(answers, plan.top.x, plan.top.y))
    out.insert(pair);
  return out;
}

PairSet execute_plan(const RdfGraph& g, const QueryPlan& plan) {
  return execute_plan(g, convert(g), plan);
}

}  // namespace cfpq
