#include "kbl/formula.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "kbl/errors.hpp"

namespace kbl {

// ---------------------------------------------------------------------------
// Term

Term Term::constant(Symbol name) { return Term(Kind::Constant, std::move(name), {}); }

Term Term::variable(Symbol name) { return Term(Kind::Variable, std::move(name), {}); }

Term Term::function(Symbol name, std::vector<Term> args) {
  return Term(Kind::Function, std::move(name), std::move(args));
}

bool Term::is_ground() const {
  if (kind_ == Kind::Variable) return false;
  return std::all_of(args_.begin(), args_.end(), [](const Term& t) { return t.is_ground(); });
}

std::string Term::to_string() const {
  if (kind_ != Kind::Function) return name_;
  std::string out = name_ + "(";
  for (std::size_t i = 0; i < args_.size(); ++i) {
    if (i) out += ",";
    out += args_[i].to_string();
  }
  return out + ")";
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.name_ <=> b.name_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.args_.begin(), a.args_.end(), b.args_.begin(),
                                                b.args_.end());
}

const char* to_string(PredKind kind) {
  switch (kind) {
    case PredKind::Regular: return "regular";
    case PredKind::Connection: return "connection";
    case PredKind::Action: return "action";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Formula nodes

struct Formula::Node {
  Kind kind = Kind::False;
  PredKind pred_kind = PredKind::Regular;
  Symbol name;  // predicate name, bound variable, or agent
  Symbol sort;
  std::vector<Term> args;
  std::vector<Formula> children;
  Group group;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_term(const Term& t) {
  std::size_t h = mix(static_cast<std::size_t>(t.kind()), std::hash<std::string>{}(t.name()));
  for (const auto& a : t.args()) h = mix(h, hash_term(a));
  return h;
}

}  // namespace

namespace detail {

struct NodeBuilder {
  static Formula make(Formula::Node n) {
    std::size_t h = mix(static_cast<std::size_t>(n.kind) * 7919, std::hash<std::string>{}(n.name));
    h = mix(h, std::hash<std::string>{}(n.sort));
    for (const auto& a : n.args) h = mix(h, hash_term(a));
    for (const auto& c : n.children) h = mix(h, c.hash());
    for (const auto& g : n.group) h = mix(h, std::hash<std::string>{}(g));
    n.hash = h;
    return Formula::from_node(std::make_shared<const Formula::Node>(std::move(n)));
  }

  static Formula group(Formula::Kind kind, Group group, Formula f) {
    Formula::Node n;
    n.kind = kind;
    n.group = make_group(std::move(group));
    n.children.push_back(std::move(f));
    return make(std::move(n));
  }
};

}  // namespace detail

Formula Formula::from_node(std::shared_ptr<const Node> node) { return Formula(std::move(node)); }

Formula Formula::pred(Symbol name, std::vector<Term> args, PredKind kind) {
  Node n;
  n.kind = Kind::Pred;
  n.name = std::move(name);
  n.args = std::move(args);
  n.pred_kind = kind;
  return detail::NodeBuilder::make(std::move(n));
}

Formula Formula::falsum() {
  static const Formula f = [] {
    Node n;
    n.kind = Kind::False;
    return detail::NodeBuilder::make(std::move(n));
  }();
  return f;
}

Formula Formula::negation(Formula f) {
  Node n;
  n.kind = Kind::Not;
  n.children.push_back(std::move(f));
  return detail::NodeBuilder::make(std::move(n));
}

Formula Formula::conjunction(Formula a, Formula b) {
  Node n;
  n.kind = Kind::And;
  n.children.push_back(std::move(a));
  n.children.push_back(std::move(b));
  return detail::NodeBuilder::make(std::move(n));
}

Formula Formula::forall(Symbol var, Symbol sort, Formula body) {
  Node n;
  n.kind = Kind::Forall;
  n.name = std::move(var);
  n.sort = std::move(sort);
  n.children.push_back(std::move(body));
  return detail::NodeBuilder::make(std::move(n));
}

Formula Formula::knows(AgentId agent, Formula f) {
  Node n;
  n.kind = Kind::Knows;
  n.name = std::move(agent);
  n.children.push_back(std::move(f));
  return detail::NodeBuilder::make(std::move(n));
}

Formula Formula::everyone(Group group, Formula f) {
  return detail::NodeBuilder::group(Kind::Everyone, std::move(group), std::move(f));
}
Formula Formula::someone(Group group, Formula f) {
  return detail::NodeBuilder::group(Kind::Someone, std::move(group), std::move(f));
}
Formula Formula::common(Group group, Formula f) {
  return detail::NodeBuilder::group(Kind::Common, std::move(group), std::move(f));
}
Formula Formula::distributed(Group group, Formula f) {
  return detail::NodeBuilder::group(Kind::Distributed, std::move(group), std::move(f));
}

Formula Formula::implies(Formula a, Formula b) {
  return negation(conjunction(std::move(a), negation(std::move(b))));
}

Formula Formula::disjunction(Formula a, Formula b) {
  return negation(conjunction(negation(std::move(a)), negation(std::move(b))));
}

Formula Formula::truth() {
  static const Formula t = negation(falsum());
  return t;
}

Formula Formula::conjoin(std::span<const Formula> parts) {
  if (parts.empty()) return truth();
  Formula acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = conjunction(parts[i], acc);
  return acc;
}

Formula::Kind Formula::kind() const { return node_->kind; }

bool Formula::is_modal() const {
  switch (kind()) {
    case Kind::Knows:
    case Kind::Everyone:
    case Kind::Someone:
    case Kind::Common:
    case Kind::Distributed: return true;
    default: return false;
  }
}

const Symbol& Formula::name() const { return node_->name; }
PredKind Formula::pred_kind() const { return node_->pred_kind; }
const std::vector<Term>& Formula::args() const { return node_->args; }
const Formula& Formula::body() const { return node_->children.front(); }
const Formula& Formula::left() const { return node_->children[0]; }
const Formula& Formula::right() const { return node_->children[1]; }
const Symbol& Formula::var() const { return node_->name; }
const Symbol& Formula::sort() const { return node_->sort; }
const AgentId& Formula::agent() const { return node_->name; }
const Group& Formula::group() const { return node_->group; }
std::size_t Formula::hash() const { return node_->hash; }

Formula Formula::with_pred_kind(PredKind kind) const {
  if (!is_atom()) throw ArgumentError("with_pred_kind on a non-atomic formula");
  if (pred_kind() == kind) return *this;
  return pred(name(), args(), kind);
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (auto c = x.sort <=> y.sort; c != 0) return c;
  if (auto c = x.group <=> y.group; c != 0) return c;
  if (auto c = std::lexicographical_compare_three_way(x.args.begin(), x.args.end(),
                                                      y.args.begin(), y.args.end());
      c != 0)
    return c;
  return std::lexicographical_compare_three_way(x.children.begin(), x.children.end(),
                                                y.children.begin(), y.children.end());
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return (a <=> b) == 0;
}

Group make_group(std::vector<AgentId> agents) {
  std::sort(agents.begin(), agents.end());
  agents.erase(std::unique(agents.begin(), agents.end()), agents.end());
  if (agents.empty()) throw ArgumentError("agent group must be non-empty");
  return agents;
}

std::string group_to_string(const Group& g) {
  std::string out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) out += ",";
    out += g[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Surface view and printing

SurfaceView surface_view(const Formula& f) {
  SurfaceView v;
  if (!f.is(Formula::Kind::Not) || !f.body().is(Formula::Kind::And)) return v;
  const Formula& conj = f.body();
  if (conj.left().is(Formula::Kind::Not) && conj.right().is(Formula::Kind::Not)) {
    v.shape = SurfaceView::Shape::Or;
    v.left = &conj.left().body();
    v.right = &conj.right().body();
  } else if (conj.right().is(Formula::Kind::Not)) {
    v.shape = SurfaceView::Shape::Implies;
    v.left = &conj.left();
    v.right = &conj.right().body();
  }
  return v;
}

namespace {

// Binding strength: 0 implication / quantifier, 1 disjunction, 2 conjunction,
// 3 unary and atoms.
int level_of(const Formula& f) {
  switch (surface_view(f).shape) {
    case SurfaceView::Shape::Implies: return 0;
    case SurfaceView::Shape::Or: return 1;
    case SurfaceView::Shape::Core: break;
  }
  switch (f.kind()) {
    case Formula::Kind::Forall: return 0;
    case Formula::Kind::And: return 2;
    default: return 3;
  }
}

void print(const Formula& f, int min_level, std::string& out);

void print_child(const Formula& f, int min_level, std::string& out) {
  if (level_of(f) < min_level) {
    out += "(";
    print(f, 0, out);
    out += ")";
  } else {
    print(f, min_level, out);
  }
}

void print(const Formula& f, int, std::string& out) {
  const auto view = surface_view(f);
  if (view.shape == SurfaceView::Shape::Implies) {
    print_child(*view.left, 1, out);
    out += " -> ";
    print_child(*view.right, 0, out);
    return;
  }
  if (view.shape == SurfaceView::Shape::Or) {
    print_child(*view.left, 2, out);
    out += " || ";
    print_child(*view.right, 1, out);
    return;
  }
  switch (f.kind()) {
    case Formula::Kind::Pred:
      out += f.name();
      if (!f.args().empty()) {
        out += "(";
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ",";
          out += f.args()[i].to_string();
        }
        out += ")";
      }
      return;
    case Formula::Kind::False: out += "false"; return;
    case Formula::Kind::Not:
      out += "!";
      print_child(f.body(), 3, out);
      return;
    case Formula::Kind::And:
      print_child(f.left(), 3, out);
      out += " && ";
      print_child(f.right(), 2, out);
      return;
    case Formula::Kind::Forall:
      out += "forall " + f.var() + ":" + f.sort() + " . ";
      print_child(f.body(), 0, out);
      return;
    case Formula::Kind::Knows:
      out += "K[" + f.agent() + "] ";
      print_child(f.body(), 3, out);
      return;
    case Formula::Kind::Everyone:
    case Formula::Kind::Someone:
    case Formula::Kind::Common:
    case Formula::Kind::Distributed: {
      const char* op = f.is(Formula::Kind::Everyone)   ? "E"
                       : f.is(Formula::Kind::Someone)  ? "S"
                       : f.is(Formula::Kind::Common)   ? "C"
                                                       : "D";
      out += std::string(op) + "[" + group_to_string(f.group()) + "] ";
      print_child(f.body(), 3, out);
      return;
    }
  }
}

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  print(*this, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Structural operations

namespace {

Term substitute_term(const Term& t, const Symbol& var, const Symbol& value) {
  switch (t.kind()) {
    case Term::Kind::Variable: return t.name() == var ? Term::constant(value) : t;
    case Term::Kind::Constant: return t;
    case Term::Kind::Function: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(substitute_term(a, var, value));
      return Term::function(t.name(), std::move(args));
    }
  }
  return t;
}

// Rebuilds f with `fn` applied to each direct child formula.
template <typename Fn>
Formula map_children(const Formula& f, Fn&& fn) {
  switch (f.kind()) {
    case Formula::Kind::Pred:
    case Formula::Kind::False: return f;
    case Formula::Kind::Not: return Formula::negation(fn(f.body()));
    case Formula::Kind::And: return Formula::conjunction(fn(f.left()), fn(f.right()));
    case Formula::Kind::Forall: return Formula::forall(f.var(), f.sort(), fn(f.body()));
    case Formula::Kind::Knows: return Formula::knows(f.agent(), fn(f.body()));
    case Formula::Kind::Everyone: return Formula::everyone(f.group(), fn(f.body()));
    case Formula::Kind::Someone: return Formula::someone(f.group(), fn(f.body()));
    case Formula::Kind::Common: return Formula::common(f.group(), fn(f.body()));
    case Formula::Kind::Distributed: return Formula::distributed(f.group(), fn(f.body()));
  }
  return f;
}

template <typename Fn>
void for_each_node(const Formula& f, Fn&& fn) {
  fn(f);
  switch (f.kind()) {
    case Formula::Kind::Pred:
    case Formula::Kind::False: return;
    case Formula::Kind::And:
      for_each_node(f.left(), fn);
      for_each_node(f.right(), fn);
      return;
    default: for_each_node(f.body(), fn); return;
  }
}

void collect_term_vars(const Term& t, std::set<Symbol>& out) {
  if (t.kind() == Term::Kind::Variable) out.insert(t.name());
  for (const auto& a : t.args()) collect_term_vars(a, out);
}

void collect_free(const Formula& f, std::set<Symbol>& bound, std::set<Symbol>& out) {
  switch (f.kind()) {
    case Formula::Kind::Pred: {
      std::set<Symbol> vars;
      for (const auto& a : f.args()) collect_term_vars(a, vars);
      for (const auto& v : vars)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case Formula::Kind::False: return;
    case Formula::Kind::And:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
      return;
    case Formula::Kind::Forall: {
      const bool fresh = bound.insert(f.var()).second;
      collect_free(f.body(), bound, out);
      if (fresh) bound.erase(f.var());
      return;
    }
    default: collect_free(f.body(), bound, out); return;
  }
}

}  // namespace

Formula substitute(const Formula& phi, const Symbol& var, const Symbol& value) {
  switch (phi.kind()) {
    case Formula::Kind::Pred: {
      std::vector<Term> args;
      args.reserve(phi.args().size());
      for (const auto& a : phi.args()) args.push_back(substitute_term(a, var, value));
      return Formula::pred(phi.name(), std::move(args), phi.pred_kind());
    }
    case Formula::Kind::Forall:
      if (phi.var() == var) return phi;  // shadowed
      return Formula::forall(phi.var(), phi.sort(), substitute(phi.body(), var, value));
    default:
      return map_children(phi, [&](const Formula& c) { return substitute(c, var, value); });
  }
}

std::set<Symbol> free_variables(const Formula& phi) {
  std::set<Symbol> bound, out;
  collect_free(phi, bound, out);
  return out;
}

bool is_ground(const Formula& phi) {
  bool ok = true;
  for_each_node(phi, [&](const Formula& f) {
    if (f.is(Formula::Kind::Forall)) ok = false;
    if (f.is_atom())
      for (const auto& a : f.args())
        if (!a.is_constant()) ok = false;
  });
  return ok;
}

bool contains_kind(const Formula& phi, Formula::Kind kind) {
  bool found = false;
  for_each_node(phi, [&](const Formula& f) { found = found || f.is(kind); });
  return found;
}

std::size_t size(const Term& t) {
  std::size_t n = 1;
  for (const auto& a : t.args()) n += size(a);
  return n;
}

std::size_t size(const Formula& phi) {
  const auto view = surface_view(phi);
  if (view.shape != SurfaceView::Shape::Core) return 1 + size(*view.left) + size(*view.right);
  switch (phi.kind()) {
    case Formula::Kind::Pred: {
      std::size_t n = 1;
      for (const auto& a : phi.args()) n += size(a);
      return n;
    }
    case Formula::Kind::False: return 1;
    case Formula::Kind::And: return 1 + size(phi.left()) + size(phi.right());
    default: return 1 + size(phi.body());
  }
}

std::vector<Formula> subformulas(const Formula& phi) {
  std::set<Formula> seen;
  for_each_node(phi, [&](const Formula& f) { seen.insert(f); });
  return {seen.begin(), seen.end()};
}

std::set<AgentId> agents_in(const Formula& phi) {
  std::set<AgentId> out;
  for_each_node(phi, [&](const Formula& f) {
    if (f.is(Formula::Kind::Knows)) out.insert(f.agent());
    if (f.is_modal() && !f.is(Formula::Kind::Knows)) out.insert(f.group().begin(), f.group().end());
  });
  return out;
}

std::set<Formula> atoms_in(const Formula& phi) {
  std::set<Formula> out;
  for_each_node(phi, [&](const Formula& f) {
    if (f.is_atom()) out.insert(f);
  });
  return out;
}

Formula expand_group_modalities(const Formula& phi) {
  switch (phi.kind()) {
    case Formula::Kind::Pred:
    case Formula::Kind::False: return phi;
    case Formula::Kind::Everyone: {
      const Formula inner = expand_group_modalities(phi.body());
      std::vector<Formula> parts;
      for (const auto& i : phi.group()) parts.push_back(Formula::knows(i, inner));
      return Formula::conjoin(parts);
    }
    case Formula::Kind::Someone: {
      const Formula inner = expand_group_modalities(phi.body());
      Formula acc = Formula::knows(phi.group().back(), inner);
      for (std::size_t i = phi.group().size() - 1; i-- > 0;)
        acc = Formula::disjunction(Formula::knows(phi.group()[i], inner), acc);
      return acc;
    }
    default:
      return map_children(phi, [](const Formula& c) { return expand_group_modalities(c); });
  }
}

}  // namespace kbl
