#include "cfpq/sparql.hpp"

#include <atomic>
#include <ostream>

#include "cfpq/error.hpp"

namespace cfpq {

namespace constraint {
namespace {
ConstraintPtr make(Constraint c) {
  return std::make_shared<const Constraint>(std::move(c));
}
}  // namespace

ConstraintPtr equal(std::string var, std::string other_var) {
  return make({Constraint::Kind::EqualVars, std::move(var),
               std::move(other_var), nullptr, nullptr});
}
ConstraintPtr equal_constant(std::string var, std::string lexical) {
  return make({Constraint::Kind::EqualConst, std::move(var),
               std::move(lexical), nullptr, nullptr});
}
ConstraintPtr bound(std::string var) {
  return make({Constraint::Kind::Bound, std::move(var), {}, nullptr, nullptr});
}
ConstraintPtr all(ConstraintPtr l, ConstraintPtr r) {
  return make({Constraint::Kind::And, {}, {}, std::move(l), std::move(r)});
}
ConstraintPtr any(ConstraintPtr l, ConstraintPtr r) {
  return make({Constraint::Kind::Or, {}, {}, std::move(l), std::move(r)});
}
ConstraintPtr negate(ConstraintPtr c) {
  return make({Constraint::Kind::Not, {}, {}, std::move(c), nullptr});
}
}  // namespace constraint

Truth evaluate_constraint(const Constraint& c, const Mapping& m,
                          const Dictionary& dict) {
  using K = Constraint::Kind;
  switch (c.kind) {
    case K::Bound:
      return m.binds(c.var) ? Truth::True : Truth::False;
    case K::EqualVars: {
      auto a = m.get(c.var);
      auto b = m.get(c.other);
      if (!a || !b) return Truth::Error;
      return *a == *b ? Truth::True : Truth::False;
    }
    case K::EqualConst: {
      auto a = m.get(c.var);
      if (!a) return Truth::Error;
      auto id = dict.find(c.other);
      return id && *id == *a ? Truth::True : Truth::False;
    }
    case K::And: {
      Truth l = evaluate_constraint(*c.left, m, dict);
      Truth r = evaluate_constraint(*c.right, m, dict);
      if (l == Truth::False || r == Truth::False) return Truth::False;
      if (l == Truth::Error || r == Truth::Error) return Truth::Error;
      return Truth::True;
    }
    case K::Or: {
      Truth l = evaluate_constraint(*c.left, m, dict);
      Truth r = evaluate_constraint(*c.right, m, dict);
      if (l == Truth::True || r == Truth::True) return Truth::True;
      if (l == Truth::Error || r == Truth::Error) return Truth::Error;
      return Truth::False;
    }
    case K::Not:
      switch (evaluate_constraint(*c.left, m, dict)) {
        case Truth::True:
          return Truth::False;
        case Truth::False:
          return Truth::True;
        case Truth::Error:
          return Truth::Error;
      }
  }
  return Truth::Error;
}

namespace pattern {
namespace {
Pattern make(PatternNode n) {
  return std::make_shared<const PatternNode>(std::move(n));
}
Pattern binary(PatternNode::Kind kind, Pattern l, Pattern r) {
  PatternNode n;
  n.kind = kind;
  n.left = std::move(l);
  n.right = std::move(r);
  return make(std::move(n));
}
}  // namespace

Pattern cftp(Variable x, std::string query, Variable y) {
  PatternNode n;
  n.kind = PatternNode::Kind::Cftp;
  n.vars = {std::move(x), std::move(y)};
  n.query = std::move(query);
  return make(std::move(n));
}
Pattern uccftp(Variable x, std::string query, Variable y) {
  PatternNode n;
  n.kind = PatternNode::Kind::Uccftp;
  n.vars = {std::move(x), std::move(y)};
  n.query = std::move(query);
  return make(std::move(n));
}
Pattern triple(Variable x, Variable y, Variable z) {
  PatternNode n;
  n.kind = PatternNode::Kind::Triple;
  n.vars = {std::move(x), std::move(y), std::move(z)};
  return make(std::move(n));
}
Pattern conj(Pattern l, Pattern r) {
  return binary(PatternNode::Kind::And, std::move(l), std::move(r));
}
Pattern disj(Pattern l, Pattern r) {
  return binary(PatternNode::Kind::Union, std::move(l), std::move(r));
}
Pattern opt(Pattern l, Pattern r) {
  return binary(PatternNode::Kind::Opt, std::move(l), std::move(r));
}
Pattern filter(Pattern p, ConstraintPtr c) {
  PatternNode n;
  n.kind = PatternNode::Kind::Filter;
  n.left = std::move(p);
  n.constraint = std::move(c);
  return make(std::move(n));
}
Pattern select(std::vector<Variable> vars, Pattern p) {
  PatternNode n;
  n.kind = PatternNode::Kind::Select;
  n.vars = std::move(vars);
  n.left = std::move(p);
  return make(std::move(n));
}
}  // namespace pattern

std::set<std::string> pattern_variables(const Pattern& p) {
  using K = PatternNode::Kind;
  std::set<std::string> out;
  switch (p->kind) {
    case K::Cftp:
    case K::Uccftp:
    case K::Triple:
      for (const auto& v : p->vars) out.insert(v.name);
      break;
    case K::And:
    case K::Union:
    case K::Opt: {
      out = pattern_variables(p->left);
      auto r = pattern_variables(p->right);
      out.insert(r.begin(), r.end());
      break;
    }
    case K::Filter:
      out = pattern_variables(p->left);
      break;
    case K::Select: {
      auto inner = pattern_variables(p->left);
      for (const auto& v : p->vars)
        if (inner.contains(v.name)) out.insert(v.name);
      break;
    }
  }
  return out;
}

namespace {

MappingSet join(const MappingSet& l, const MappingSet& r) {
  MappingSet out;
  for (const Mapping& a : l)
    for (const Mapping& b : r)
      if (a.compatible(b)) out.insert(a.merged(b));
  return out;
}

class Evaluator {
 public:
  Evaluator(QueryEngine& engine, const QueryRegistry& registry)
      : engine_(engine), registry_(registry) {}

  MappingSet eval(const Pattern& p) {
    using K = PatternNode::Kind;
    switch (p->kind) {
      case K::Cftp:
      case K::Uccftp:
        return leaf(*p);
      case K::Triple: {
        const RdfGraph& g = engine_.graph();
        MappingSet out;
        for (const Triple& t : g.triples()) {
          Mapping m;
          if (m.bind(p->vars[0].name, t.s) && m.bind(p->vars[1].name, t.p) &&
              m.bind(p->vars[2].name, t.o))
            out.insert(std::move(m));
        }
        return out;
      }
      case K::And:
        return join(eval(p->left), eval(p->right));
      case K::Union: {
        MappingSet out = eval(p->left);
        MappingSet r = eval(p->right);
        out.insert(r.begin(), r.end());
        return out;
      }
      case K::Opt: {
        MappingSet l = eval(p->left);
        MappingSet r = eval(p->right);
        MappingSet out = join(l, r);
        for (const Mapping& a : l) {
          bool partner = false;
          for (const Mapping& b : r) {
            if (a.compatible(b)) {
              partner = true;
              break;
            }
          }
          if (!partner) out.insert(a);
        }
        return out;
      }
      case K::Filter: {
        MappingSet out;
        const Dictionary& dict = engine_.graph().dictionary();
        for (const Mapping& m : eval(p->left))
          if (evaluate_constraint(*p->constraint, m, dict) == Truth::True)
            out.insert(m);
        return out;
      }
      case K::Select: {
        std::set<std::string> keep;
        for (const auto& v : p->vars) keep.insert(v.name);
        MappingSet out;
        for (const Mapping& m : eval(p->left)) out.insert(m.restricted(keep));
        return out;
      }
    }
    return {};
  }

 private:
  MappingSet leaf(const PatternNode& p) {
    auto it = registry_.find(p.query);
    if (it == registry_.end())
      throw EvaluationError("unknown query '" + p.query + "'");
    const Uccfpq& q = it->second;
    if (p.kind == PatternNode::Kind::Cftp && q.disjuncts.size() != 1)
      throw EvaluationError("query '" + p.query +
                            "' is a union; use uccftp instead of cftp");
    MappingSet out;
    for (const Mapping& m : engine_.evaluate(q)) {
      Mapping renamed;
      if (renamed.bind(p.vars[0].name, *m.get(q.x.name)) &&
          renamed.bind(p.vars[1].name, *m.get(q.y.name)))
        out.insert(std::move(renamed));
    }
    return out;
  }

  QueryEngine& engine_;
  const QueryRegistry& registry_;
};

}  // namespace

MappingSet evaluate_pattern(QueryEngine& engine, const QueryRegistry& registry,
                            const Pattern& p) {
  return Evaluator(engine, registry).eval(p);
}

MappingSet evaluate_pattern(const RdfGraph& g, const QueryRegistry& registry,
                            const Pattern& p) {
  QueryEngine engine(g);
  return evaluate_pattern(engine, registry, p);
}

namespace {

std::atomic<std::uint64_t> fresh_counter{0};

Variable fresh_variable() {
  return Variable{"?#" + std::to_string(fresh_counter++)};
}

// Registers the single-nonterminal query for `nonterminal` of `q`.
std::string nonterminal_query(QueryRegistry& registry, const std::string& name,
                              const Uccfpq& q, const std::string& nonterminal) {
  std::string key = name + "#" + nonterminal;
  if (!registry.contains(key)) {
    Uccfpq single;
    single.name = key;
    single.x = Variable{"?x"};
    single.y = Variable{"?y"};
    single.grammar = q.grammar;
    single.disjuncts = {{NonterminalAtom{nonterminal, single.x, single.y}}};
    registry.emplace(key, std::move(single));
  }
  return key;
}

Pattern lower_disjunct(QueryRegistry& registry, const std::string& name,
                       const Uccfpq& q, const std::vector<Atom>& body,
                       const Variable& x, const Variable& y) {
  std::map<std::string, Variable> rename{{q.x.name, x}, {q.y.name, y}};
  auto var = [&](const Variable& v) {
    auto it = rename.find(v.name);
    if (it == rename.end()) it = rename.emplace(v.name, fresh_variable()).first;
    return it->second;
  };

  if (body.size() == 1) {
    if (const auto* nt = std::get_if<NonterminalAtom>(&body[0])) {
      std::string key = nonterminal_query(registry, name, q, nt->nonterminal);
      return pattern::cftp(var(nt->from), key, var(nt->to));
    }
  }

  Pattern acc;
  for (const Atom& atom : body) {
    Pattern leaf;
    if (const auto* nt = std::get_if<NonterminalAtom>(&atom)) {
      std::string key = nonterminal_query(registry, name, q, nt->nonterminal);
      leaf = pattern::cftp(var(nt->from), key, var(nt->to));
    } else {
      const auto& tp = std::get<TriplePatternAtom>(atom);
      leaf = pattern::triple(var(tp.s), var(tp.p), var(tp.o));
    }
    acc = acc ? pattern::conj(acc, leaf) : leaf;
  }
  std::vector<Variable> head{x};
  if (y != x) head.push_back(y);
  return pattern::select(head, acc);
}

}  // namespace

Pattern normalize_uccf(const Pattern& p, QueryRegistry& registry) {
  using K = PatternNode::Kind;
  switch (p->kind) {
    case K::Cftp:
    case K::Triple:
      return p;
    case K::Uccftp: {
      auto it = registry.find(p->query);
      if (it == registry.end())
        throw EvaluationError("unknown query '" + p->query + "'");
      const Uccfpq q = it->second;
      Pattern acc;
      for (const auto& body : q.disjuncts) {
        Pattern part =
            lower_disjunct(registry, p->query, q, body, p->vars[0], p->vars[1]);
        acc = acc ? pattern::disj(acc, part) : part;
      }
      return acc;
    }
    case K::And:
      return pattern::conj(normalize_uccf(p->left, registry),
                           normalize_uccf(p->right, registry));
    case K::Union:
      return pattern::disj(normalize_uccf(p->left, registry),
                           normalize_uccf(p->right, registry));
    case K::Opt:
      return pattern::opt(normalize_uccf(p->left, registry),
                          normalize_uccf(p->right, registry));
    case K::Filter:
      return pattern::filter(normalize_uccf(p->left, registry), p->constraint);
    case K::Select:
      return pattern::select(p->vars, normalize_uccf(p->left, registry));
  }
  return p;
}

std::string to_string(const Constraint& c) {
  using K = Constraint::Kind;
  switch (c.kind) {
    case K::EqualVars:
      return "(= " + c.var + " " + c.other + ")";
    case K::EqualConst:
      return "(= " + c.var + " " + render_term(c.other) + ")";
    case K::Bound:
      return "(bound " + c.var + ")";
    case K::And:
      return "(and " + to_string(*c.left) + " " + to_string(*c.right) + ")";
    case K::Or:
      return "(or " + to_string(*c.left) + " " + to_string(*c.right) + ")";
    case K::Not:
      return "(not " + to_string(*c.left) + ")";
  }
  return {};
}

std::string to_string(const Pattern& p) {
  using K = PatternNode::Kind;
  switch (p->kind) {
    case K::Cftp:
      return "(cftp " + p->vars[0].name + " " + p->query + " " +
             p->vars[1].name + ")";
    case K::Uccftp:
      return "(uccftp " + p->vars[0].name + " " + p->query + " " +
             p->vars[1].name + ")";
    case K::Triple:
      return "(tp " + p->vars[0].name + " " + p->vars[1].name + " " +
             p->vars[2].name + ")";
    case K::And:
      return "(and " + to_string(p->left) + " " + to_string(p->right) + ")";
    case K::Union:
      return "(union " + to_string(p->left) + " " + to_string(p->right) + ")";
    case K::Opt:
      return "(opt " + to_string(p->left) + " " + to_string(p->right) + ")";
    case K::Filter:
      return "(filter " + to_string(*p->constraint) + " " +
             to_string(p->left) + ")";
    case K::Select: {
      std::string vars;
      for (const auto& v : p->vars) vars += (vars.empty() ? "" : " ") + v.name;
      return "(select (" + vars + ") " + to_string(p->left) + ")";
    }
  }
  return {};
}

void write_mappings_tsv(std::ostream& out, const MappingSet& answers,
                        const std::set<std::string>& vars,
                        const Dictionary& dict) {
  bool first = true;
  for (const auto& v : vars) {
    out << (first ? "" : "\t") << v.substr(1);
    first = false;
  }
  out << '\n';
  for (const Mapping& m : answers) {
    first = true;
    for (const auto& v : vars) {
      if (!first) out << '\t';
      first = false;
      if (auto c = m.get(v)) out << dict.lexical(*c);
    }
    out << '\n';
  }
}

}  // namespace cfpq
