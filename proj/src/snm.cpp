#include "kbl/snm.hpp"

#include <algorithm>

#include "kbl/errors.hpp"

namespace kbl {

bool is_reserved_name(const Symbol& name) {
  return name.rfind("co_", 0) == 0 || name.rfind("ac_", 0) == 0;
}

const KnowledgeBase& Snm::kb(const AgentId& agent) const {
  auto it = kbs_.find(agent);
  if (it == kbs_.end()) throw VocabularyError("unknown agent '" + agent + "'");
  return it->second;
}

namespace {

const AgentRelation& lookup(const std::map<Symbol, AgentRelation>& rels, const Vocabulary& vocab,
                            const Symbol& name, PredKind kind) {
  auto decl = vocab.predicate(name);
  if (!decl || decl->kind != kind)
    throw VocabularyError("'" + name + "' is not a declared " + to_string(kind) + " relation");
  static const AgentRelation empty;
  auto it = rels.find(name);
  return it == rels.end() ? empty : it->second;
}

// Diagnostic for a formula that may not be stored for `owner`, if any.
std::optional<std::string> shape_problem(const AgentId& owner, const Formula& f) {
  if (!is_ground(f)) return "non-ground formula " + f.to_string();
  if (contains_kind(f, Formula::Kind::Common) || contains_kind(f, Formula::Kind::Distributed))
    return "common or distributed knowledge in a knowledge base: " + f.to_string();
  if (owner == kEnvironment && (!f.is_atom() || f.pred_kind() != PredKind::Regular))
    return "environment facts must be regular ground atoms: " + f.to_string();
  return std::nullopt;
}

}  // namespace

bool Snm::connection_holds(const Symbol& name, const AgentId& i, const AgentId& j) const {
  return lookup(connections_, vocab_, name, PredKind::Connection).count({i, j}) > 0;
}

bool Snm::action_holds(const Symbol& name, const AgentId& i, const AgentId& j) const {
  return lookup(actions_, vocab_, name, PredKind::Action).count({i, j}) > 0;
}

Snm Snm::kb_insert(const AgentId& agent, const Formula& phi, const ProverOptions& opts) const {
  const KnowledgeBase& base = kb(agent);
  const Formula g = ground(phi, vocab_);
  if (auto problem = shape_problem(agent, g)) throw KindError(*problem);
  KnowledgeBase extended = base.with(g);
  if (agent != kEnvironment && derive(extended, Formula::negation(g), opts))
    throw ConsistencyError("adding " + g.to_string() + " to the knowledge base of " + agent +
                           " would derive its negation");
  Snm out = *this;
  out.kbs_[agent] = std::move(extended);
  return out;
}

Snm Snm::with_policy(const AgentId& agent, std::string policy) const {
  if (!is_agent(agent)) throw VocabularyError("unknown agent '" + agent + "'");
  Snm out = *this;
  out.policies_[agent] = std::move(policy);
  return out;
}

std::vector<std::string> Snm::validate(const ProverOptions& opts) const {
  std::vector<std::string> out = vocab_.diagnostics();
  if (agents_.empty()) out.push_back("the model has no agents");
  if (agents_.count(kEnvironment))
    out.push_back("'" + kEnvironment + "' is reserved for the environment and cannot be an agent");
  for (const auto& [name, decl] : vocab_.predicates) {
    if (is_reserved_name(name)) out.push_back("predicate name '" + name + "' uses a reserved prefix");
    if (decl.kind != PredKind::Regular && decl.arity != 2)
      out.push_back(std::string(to_string(decl.kind)) + " '" + name + "' must be binary");
  }
  auto audit = [&](const std::map<Symbol, AgentRelation>& rels, PredKind kind) {
    for (const auto& [name, pairs] : rels) {
      auto decl = vocab_.predicate(name);
      if (!decl || decl->kind != kind)
        out.push_back("'" + name + "' is not declared as a " + to_string(kind));
      for (const auto& [i, j] : pairs)
        if (!is_agent(i) || !is_agent(j))
          out.push_back(std::string(to_string(kind)) + " '" + name + "' relates undeclared agents (" +
                        i + "," + j + ")");
    }
  };
  audit(connections_, PredKind::Connection);
  audit(actions_, PredKind::Action);
  for (const auto& a : agents_)
    if (!kbs_.count(a)) out.push_back("agent '" + a + "' has no knowledge base");
  if (!kbs_.count(kEnvironment)) out.push_back("the environment has no knowledge base");
  for (const auto& [owner, base] : kbs_) {
    if (owner != kEnvironment && !is_agent(owner))
      out.push_back("knowledge base for undeclared agent '" + owner + "'");
    bool well_shaped = true;
    for (const auto& f : base.formulas())
      if (auto problem = shape_problem(owner, f)) {
        out.push_back("agent '" + owner + "': " + *problem);
        well_shaped = false;
      }
    if (!well_shaped || owner == kEnvironment) continue;
    try {
      if (!consistent(base, opts)) out.push_back("agent '" + owner + "': inconsistent knowledge base");
    } catch (const Error& e) {
      out.push_back("agent '" + owner + "': " + e.what());
    }
  }
  for (const auto& [a, text] : policies_)
    if (!is_agent(a)) out.push_back("policy for undeclared agent '" + a + "'");
  return out;
}

SnmBuilder& SnmBuilder::agent(const AgentId& a) {
  if (std::find(agents_.begin(), agents_.end(), a) == agents_.end()) agents_.push_back(a);
  return *this;
}

SnmBuilder& SnmBuilder::domain(const Symbol& sort, std::vector<Symbol> elements) {
  vocab_.domains[sort] = std::move(elements);
  return *this;
}

SnmBuilder& SnmBuilder::predicate(const Symbol& name, std::size_t arity, PredKind kind) {
  vocab_.predicates[name] = PredicateDecl{arity, kind};
  return *this;
}

SnmBuilder& SnmBuilder::constant(const Symbol& name, const Symbol& element) {
  vocab_.constants[name] = element;
  return *this;
}

SnmBuilder& SnmBuilder::connection(const Symbol& name, const AgentId& i, const AgentId& j) {
  connections_[name].insert({i, j});
  return *this;
}

SnmBuilder& SnmBuilder::action(const Symbol& name, const AgentId& i, const AgentId& j) {
  actions_[name].insert({i, j});
  return *this;
}

SnmBuilder& SnmBuilder::know(const AgentId& owner, const Formula& phi) {
  facts_.emplace_back(owner, phi);
  return *this;
}

SnmBuilder& SnmBuilder::policy(const AgentId& a, std::string text) {
  policies_[a] = std::move(text);
  return *this;
}

Snm SnmBuilder::build() const {
  Snm m;
  m.agents_.insert(agents_.begin(), agents_.end());
  m.vocab_ = vocab_;
  if (!m.vocab_.domains.count(kAgentSort)) m.vocab_.domains[kAgentSort] = agents_;
  m.connections_ = connections_;
  m.actions_ = actions_;
  // Declared relations are present even when empty.
  for (const auto& [name, decl] : m.vocab_.predicates) {
    if (decl.kind == PredKind::Connection) m.connections_[name];
    if (decl.kind == PredKind::Action) m.actions_[name];
  }
  for (const auto& a : agents_) m.kbs_[a];
  for (auto& [a, kb] : m.kbs_) kb = KnowledgeBase(a);
  m.kbs_[kEnvironment] = KnowledgeBase(kEnvironment);
  std::map<AgentId, FormulaSet> sets;
  for (const auto& [owner, phi] : facts_)
    sets[owner].insert(free_variables(phi).empty() ? ground(phi, m.vocab_) : phi);
  for (auto& [owner, fs] : sets) m.kbs_[owner] = KnowledgeBase(owner, std::move(fs));
  m.policies_ = policies_;
  return m;
}

}  // namespace kbl
