// Relational Kripke models and their satisfaction relation.

#ifndef KBL_KRIPKE_HPP
#define KBL_KRIPKE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kbl/formula.hpp"

namespace kbl {

using StateId = std::size_t;

class KripkeModel {
 public:
  using Relation = std::set<std::pair<StateId, StateId>>;

  StateId add_state(std::string name);
  void declare_agent(const AgentId& agent);
  void add_edge(const AgentId& agent, StateId from, StateId to);
  void set_true(StateId s, const Formula& atom);

  std::size_t num_states() const { return names_.size(); }
  const std::string& state_name(StateId s) const;
  std::optional<StateId> find_state(const std::string& name) const;
  const std::set<AgentId>& agents() const { return agents_; }
  const Relation& relation(const AgentId& agent) const;
  std::vector<StateId> successors(const AgentId& agent, StateId s) const;
  const FormulaSet& valuation(StateId s) const;
  bool holds(StateId s, const Formula& atom) const;

  // ||M||: number of states plus the number of pairs in all relations.
  std::size_t measure() const;

  // Provenance carried by canonical models: the formula set each state was
  // built from, the characteristic set of the source network and the state
  // that represents it. Empty for models read from plain files.
  std::optional<std::vector<FormulaSet>> thetas;
  std::optional<std::vector<Formula>> characteristic;
  std::optional<StateId> distinguished;

  friend bool operator==(const KripkeModel&, const KripkeModel&) = default;

 private:
  void check_state(StateId s) const;

  std::vector<std::string> names_;
  std::vector<FormulaSet> valuation_;
  std::set<AgentId> agents_;
  std::map<AgentId, Relation> relations_;
};

// (M, s) |= phi. phi must be ground (quantifiers already expanded).
bool kripke_sat(const KripkeModel& m, StateId s, const Formula& phi);

struct FrameProperties {
  std::map<AgentId, bool> serial;
  std::map<AgentId, bool> transitive;

  bool serial_and_transitive() const;
};

FrameProperties frame_properties(const KripkeModel& m);

struct CanonicalOptions {
  // Upper bound on |Sub(phi)|.
  std::size_t guard = 18;
  // Agents that get an accessibility relation; defaults to those in phi.
  std::optional<std::set<AgentId>> agents;
};

// Canonical KD4 model of a consistent, ground, C/D-free formula: one state per
// maximal consistent subset of Sub+(phi). States are produced in a fixed
// order: subformulas are decided smallest-first and the negative choice is
// tried before the positive one. Inconsistent input raises ConsistencyError.
KripkeModel canonical_model(const Formula& phi, const CanonicalOptions& opts = {});

// Sub+(phi) = Sub(phi) together with the negation of each member.
std::vector<Formula> sub_plus(const Formula& phi);

}  // namespace kbl

#endif  // KBL_KRIPKE_HPP
