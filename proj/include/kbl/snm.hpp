// Social network models: agents, relations, per-agent knowledge bases and an
// environment knowledge base holding the true ground facts.

#ifndef KBL_SNM_HPP
#define KBL_SNM_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kbl/deduction.hpp"
#include "kbl/formula.hpp"
#include "kbl/knowledge_base.hpp"
#include "kbl/vocabulary.hpp"

namespace kbl {

// Sort that the builder fills with the agent names unless declared otherwise.
inline const Symbol kAgentSort = "Agent";

using AgentRelation = std::set<std::pair<AgentId, AgentId>>;

class SnmBuilder;

class Snm {
 public:
  Snm() = default;

  const std::set<AgentId>& agents() const { return agents_; }
  bool is_agent(const AgentId& a) const { return agents_.count(a) > 0; }
  const Vocabulary& vocab() const { return vocab_; }
  const std::map<Symbol, AgentRelation>& connections() const { return connections_; }
  const std::map<Symbol, AgentRelation>& actions() const { return actions_; }
  // Entries for every agent and for the environment.
  const std::map<AgentId, KnowledgeBase>& kbs() const { return kbs_; }
  const KnowledgeBase& kb(const AgentId& agent) const;
  const KnowledgeBase& environment() const { return kb(kEnvironment); }
  // Carried verbatim, never interpreted.
  const std::map<AgentId, std::string>& policies() const { return policies_; }

  bool connection_holds(const Symbol& name, const AgentId& i, const AgentId& j) const;
  bool action_holds(const Symbol& name, const AgentId& i, const AgentId& j) const;

  // Returns a copy whose knowledge base for `agent` also holds ground(phi).
  // Throws ConsistencyError if the extended base derives the negation,
  // KindError for a non-atomic environment fact or a C/D modality.
  Snm kb_insert(const AgentId& agent, const Formula& phi, const ProverOptions& opts = {}) const;

  Snm with_policy(const AgentId& agent, std::string policy) const;

  // Empty when the model is well formed; otherwise one line per problem.
  std::vector<std::string> validate(const ProverOptions& opts = {}) const;

  friend bool operator==(const Snm&, const Snm&) = default;

 private:
  friend class SnmBuilder;

  std::set<AgentId> agents_;
  Vocabulary vocab_;
  std::map<Symbol, AgentRelation> connections_;
  std::map<Symbol, AgentRelation> actions_;
  std::map<AgentId, KnowledgeBase> kbs_;
  std::map<AgentId, std::string> policies_;
};

// Assembles a model without enforcing its invariants, so that validate() can
// report on malformed input. Closed knowledge-base formulas are grounded by
// build(); open ones are kept as given.
class SnmBuilder {
 public:
  SnmBuilder& agent(const AgentId& a);
  Vocabulary& vocab() { return vocab_; }
  SnmBuilder& domain(const Symbol& sort, std::vector<Symbol> elements);
  SnmBuilder& predicate(const Symbol& name, std::size_t arity, PredKind kind = PredKind::Regular);
  SnmBuilder& constant(const Symbol& name, const Symbol& element);
  SnmBuilder& connection(const Symbol& name, const AgentId& i, const AgentId& j);
  SnmBuilder& action(const Symbol& name, const AgentId& i, const AgentId& j);
  SnmBuilder& know(const AgentId& owner, const Formula& phi);
  SnmBuilder& policy(const AgentId& a, std::string text);

  Snm build() const;

 private:
  std::vector<AgentId> agents_;
  Vocabulary vocab_;
  std::map<Symbol, AgentRelation> connections_;
  std::map<Symbol, AgentRelation> actions_;
  std::vector<std::pair<AgentId, Formula>> facts_;
  std::map<AgentId, std::string> policies_;
};

// Names with these prefixes are reserved for the marked translation.
bool is_reserved_name(const Symbol& name);

}  // namespace kbl

#endif  // KBL_SNM_HPP
