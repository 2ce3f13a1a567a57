#include "kbl/translate.hpp"

#include <algorithm>

#include "kbl/deduction.hpp"
#include "kbl/errors.hpp"

namespace kbl {

namespace {

const std::string kConnectionPrefix = "co_";
const std::string kActionPrefix = "ac_";

template <typename Fn>
Formula rebuild(const Formula& f, Fn&& on_atom) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Pred: return on_atom(f);
    case K::False: return f;
    case K::Not: return Formula::negation(rebuild(f.body(), on_atom));
    case K::And: return Formula::conjunction(rebuild(f.left(), on_atom), rebuild(f.right(), on_atom));
    case K::Forall: return Formula::forall(f.var(), f.sort(), rebuild(f.body(), on_atom));
    case K::Knows: return Formula::knows(f.agent(), rebuild(f.body(), on_atom));
    case K::Everyone: return Formula::everyone(f.group(), rebuild(f.body(), on_atom));
    case K::Someone: return Formula::someone(f.group(), rebuild(f.body(), on_atom));
    case K::Common: return Formula::common(f.group(), rebuild(f.body(), on_atom));
    case K::Distributed: return Formula::distributed(f.group(), rebuild(f.body(), on_atom));
  }
  return f;
}

bool has_prefix(const Symbol& s, const std::string& p) { return s.rfind(p, 0) == 0; }

Formula relation_atom(const Symbol& name, const AgentId& i, const AgentId& j, PredKind kind) {
  return Formula::pred(name, {Term::constant(i), Term::constant(j)}, kind);
}

bool same_relations(const std::map<Symbol, AgentRelation>& a, const std::map<Symbol, AgentRelation>& b) {
  static const AgentRelation empty;
  auto get = [&](const std::map<Symbol, AgentRelation>& m, const Symbol& n) -> const AgentRelation& {
    auto it = m.find(n);
    return it == m.end() ? empty : it->second;
  };
  for (const auto& [n, r] : a)
    if (r != get(b, n)) return false;
  for (const auto& [n, r] : b)
    if (r != get(a, n)) return false;
  return true;
}

}  // namespace

Formula mark(const Formula& phi) {
  return rebuild(phi, [](const Formula& a) {
    switch (a.pred_kind()) {
      case PredKind::Connection: return Formula::pred(kConnectionPrefix + a.name(), a.args());
      case PredKind::Action: return Formula::pred(kActionPrefix + a.name(), a.args());
      case PredKind::Regular: break;
    }
    return a;
  });
}

Formula unmark(const Formula& phi) {
  return rebuild(phi, [](const Formula& a) {
    if (has_prefix(a.name(), kConnectionPrefix))
      return Formula::pred(a.name().substr(kConnectionPrefix.size()), a.args(), PredKind::Connection);
    if (has_prefix(a.name(), kActionPrefix))
      return Formula::pred(a.name().substr(kActionPrefix.size()), a.args(), PredKind::Action);
    return a;
  });
}

std::vector<Formula> characteristic_set(const Snm& snm, bool marked) {
  std::vector<Formula> out;
  auto add = [&](const Formula& f) { out.push_back(marked ? mark(f) : f); };
  for (const auto& f : snm.environment().formulas()) add(f);
  for (const auto& a : snm.agents())
    for (const auto& f : snm.kb(a).formulas()) add(Formula::knows(a, f));
  for (const auto& [name, pairs] : snm.connections())
    for (const auto& [i, j] : pairs) add(relation_atom(name, i, j, PredKind::Connection));
  for (const auto& [name, pairs] : snm.actions())
    for (const auto& [i, j] : pairs) add(relation_atom(name, i, j, PredKind::Action));
  std::vector<std::pair<std::string, Formula>> keyed;
  for (auto& f : out) keyed.emplace_back(f.to_string(), f);
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  out.clear();
  for (auto& [k, f] : keyed)
    if (out.empty() || !(out.back() == f)) out.push_back(f);
  return out;
}

Formula characteristic_formula(const Snm& snm, bool marked) {
  const auto set = characteristic_set(snm, marked);
  return Formula::conjoin(set);
}

KripkeModel kt(const Snm& snm, bool marked, std::size_t guard) {
  const auto set = characteristic_set(snm, marked);
  const Formula phi = Formula::conjoin(set);
  const Formula parts[] = {phi};
  if (!satisfiable(parts))
    throw InternalError("characteristic formula is KD4-inconsistent; the model violates knowledge consistency");
  CanonicalOptions opts;
  opts.guard = guard;
  opts.agents = snm.agents();
  KripkeModel m = canonical_model(phi, opts);
  for (StateId s = 0; s < m.num_states(); ++s) {
    const FormulaSet& theta = (*m.thetas)[s];
    if (std::all_of(set.begin(), set.end(), [&](const Formula& f) { return theta.count(f) > 0; })) {
      m.distinguished = s;
      break;
    }
  }
  if (!m.distinguished) throw InternalError("no canonical state contains the characteristic set");
  m.characteristic = set;
  return m;
}

Snm kripke_to_snm(const KripkeModel& m) {
  if (!m.characteristic)
    throw ArgumentError("the model carries no characteristic set; only marked translations can be inverted");
  const auto& set = *m.characteristic;

  std::set<AgentId> agents;
  for (const auto& f : set) {
    const auto named = agents_in(f);
    agents.insert(named.begin(), named.end());
    for (const auto& a : atoms_in(f))
      if (has_prefix(a.name(), kConnectionPrefix) || has_prefix(a.name(), kActionPrefix))
        for (const auto& t : a.args()) agents.insert(t.name());
  }

  SnmBuilder b;
  for (const auto& a : agents) b.agent(a);
  std::set<Symbol> elements;
  for (const auto& f : set) {
    const Formula plain = unmark(f);
    for (const auto& a : atoms_in(plain)) {
      b.predicate(a.name(), a.args().size(), a.pred_kind());
      for (const auto& t : a.args())
        if (!agents.count(t.name())) elements.insert(t.name());
    }
    if (plain.is_atom()) {
      switch (plain.pred_kind()) {
        case PredKind::Regular: b.know(kEnvironment, plain); break;
        case PredKind::Connection:
          b.connection(plain.name(), plain.args()[0].name(), plain.args()[1].name());
          break;
        case PredKind::Action: b.action(plain.name(), plain.args()[0].name(), plain.args()[1].name()); break;
      }
    } else if (plain.is(Formula::Kind::Knows)) {
      b.know(plain.agent(), plain.body());
    } else {
      throw ArgumentError("unexpected characteristic formula " + f.to_string());
    }
  }
  if (!elements.empty()) b.domain("Element", {elements.begin(), elements.end()});
  return b.build();
}

bool equal_modulo_policies(const Snm& a, const Snm& b) {
  if (a.agents() != b.agents()) return false;
  if (!(a.environment() == b.environment())) return false;
  for (const auto& ag : a.agents())
    if (!(a.kb(ag) == b.kb(ag))) return false;
  return same_relations(a.connections(), b.connections()) && same_relations(a.actions(), b.actions());
}

}  // namespace kbl
