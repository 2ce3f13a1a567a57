#include "kbl/kripke.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>

#include "kbl/deduction.hpp"
#include "kbl/errors.hpp"

namespace kbl {

StateId KripkeModel::add_state(std::string name) {
  if (find_state(name)) throw ArgumentError("duplicate state name '" + name + "'");
  names_.push_back(std::move(name));
  valuation_.emplace_back();
  return names_.size() - 1;
}

void KripkeModel::declare_agent(const AgentId& agent) {
  agents_.insert(agent);
  relations_[agent];
}

void KripkeModel::add_edge(const AgentId& agent, StateId from, StateId to) {
  check_state(from);
  check_state(to);
  declare_agent(agent);
  relations_[agent].insert({from, to});
}

void KripkeModel::set_true(StateId s, const Formula& atom) {
  check_state(s);
  if (!atom.is_atom()) throw ArgumentError("valuation entries must be atoms: " + atom.to_string());
  valuation_[s].insert(atom);
}

const std::string& KripkeModel::state_name(StateId s) const {
  check_state(s);
  return names_[s];
}

std::optional<StateId> KripkeModel::find_state(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<StateId>(it - names_.begin());
}

const KripkeModel::Relation& KripkeModel::relation(const AgentId& agent) const {
  static const Relation empty;
  auto it = relations_.find(agent);
  return it == relations_.end() ? empty : it->second;
}

std::vector<StateId> KripkeModel::successors(const AgentId& agent, StateId s) const {
  std::vector<StateId> out;
  const auto& r = relation(agent);
  for (auto it = r.lower_bound({s, 0}); it != r.end() && it->first == s; ++it) out.push_back(it->second);
  return out;
}

const FormulaSet& KripkeModel::valuation(StateId s) const {
  check_state(s);
  return valuation_[s];
}

bool KripkeModel::holds(StateId s, const Formula& atom) const {
  return valuation(s).count(atom) > 0;
}

std::size_t KripkeModel::measure() const {
  std::size_t n = names_.size();
  for (const auto& [agent, r] : relations_) n += r.size();
  return n;
}

void KripkeModel::check_state(StateId s) const {
  if (s >= names_.size())
    throw ArgumentError("state index " + std::to_string(s) + " out of range");
}

namespace {

bool sat(const KripkeModel& m, StateId s, const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Pred: return m.holds(s, f);
    case K::False: return false;
    case K::Not: return !sat(m, s, f.body());
    case K::And: return sat(m, s, f.left()) && sat(m, s, f.right());
    case K::Knows:
      for (StateId t : m.successors(f.agent(), s))
        if (!sat(m, t, f.body())) return false;
      return true;
    case K::Everyone:
      for (const auto& a : f.group())
        for (StateId t : m.successors(a, s))
          if (!sat(m, t, f.body())) return false;
      return true;
    case K::Someone:
      for (const auto& a : f.group()) {
        bool all = true;
        for (StateId t : m.successors(a, s))
          if (!sat(m, t, f.body())) {
            all = false;
            break;
          }
        if (all) return true;
      }
      return false;
    case K::Common: {
      // Every state reachable in one or more steps along the group's union.
      std::vector<bool> seen(m.num_states(), false);
      std::vector<StateId> stack;
      auto push_succ = [&](StateId x) {
        for (const auto& a : f.group())
          for (StateId t : m.successors(a, x))
            if (!seen[t]) {
              seen[t] = true;
              stack.push_back(t);
            }
      };
      push_succ(s);
      while (!stack.empty()) {
        const StateId x = stack.back();
        stack.pop_back();
        if (!sat(m, x, f.body())) return false;
        push_succ(x);
      }
      return true;
    }
    case K::Distributed: {
      std::vector<StateId> common = m.successors(f.group().front(), s);
      for (std::size_t i = 1; i < f.group().size(); ++i) {
        const auto next = m.successors(f.group()[i], s);
        std::vector<StateId> both;
        std::set_intersection(common.begin(), common.end(), next.begin(), next.end(),
                              std::back_inserter(both));
        common = std::move(both);
      }
      for (StateId t : common)
        if (!sat(m, t, f.body())) return false;
      return true;
    }
    case K::Forall:
      throw ArgumentError("Kripke satisfaction needs a ground formula: " + f.to_string());
  }
  throw InternalError("unreachable formula kind");
}

}  // namespace

bool kripke_sat(const KripkeModel& m, StateId s, const Formula& phi) {
  if (s >= m.num_states()) throw ArgumentError("state index " + std::to_string(s) + " out of range");
  return sat(m, s, phi);
}

bool FrameProperties::serial_and_transitive() const {
  for (const auto& [a, v] : serial)
    if (!v) return false;
  for (const auto& [a, v] : transitive)
    if (!v) return false;
  return true;
}

FrameProperties frame_properties(const KripkeModel& m) {
  FrameProperties p;
  const std::size_t n = m.num_states();
  const std::size_t words = (n + 63) / 64;
  for (const auto& agent : m.agents()) {
    // Row x holds the successors of x as a bitset; transitivity asks that
    // every successor's row is contained in x's row.
    std::vector<std::vector<std::uint64_t>> row(n, std::vector<std::uint64_t>(words, 0));
    for (const auto& [x, y] : m.relation(agent)) row[x][y / 64] |= std::uint64_t{1} << (y % 64);
    bool serial = true;
    bool transitive = true;
    for (StateId x = 0; x < n && serial; ++x)
      serial = std::any_of(row[x].begin(), row[x].end(), [](std::uint64_t w) { return w != 0; });
    for (const auto& [x, y] : m.relation(agent)) {
      for (std::size_t w = 0; w < words && transitive; ++w)
        if (row[y][w] & ~row[x][w]) transitive = false;
      if (!transitive) break;
    }
    p.serial[agent] = serial;
    p.transitive[agent] = transitive;
  }
  return p;
}

std::vector<Formula> sub_plus(const Formula& phi) {
  FormulaSet out;
  for (const auto& f : subformulas(phi)) {
    out.insert(f);
    out.insert(Formula::negation(f));
  }
  return {out.begin(), out.end()};
}

namespace {

bool is_choice(const Formula& f) {
  return f.is_atom() || f.is(Formula::Kind::Knows) || f.is(Formula::Kind::False);
}

bool smaller(const Formula& a, const Formula& b) {
  const auto sa = size(a), sb = size(b);
  if (sa != sb) return sa < sb;
  return a < b;
}

// Truth of a Boolean combination of choice points under an assignment.
bool evaluate(const Formula& f, const std::map<Formula, bool>& choice) {
  if (is_choice(f)) return choice.at(f);
  switch (f.kind()) {
    case Formula::Kind::Not: return !evaluate(f.body(), choice);
    case Formula::Kind::And: return evaluate(f.left(), choice) && evaluate(f.right(), choice);
    default: throw InternalError("unexpected canonical subformula " + f.to_string());
  }
}

}  // namespace

KripkeModel canonical_model(const Formula& input, const CanonicalOptions& opts) {
  if (!is_ground(input)) throw ArgumentError("canonical model needs a ground formula");
  if (contains_kind(input, Formula::Kind::Common) || contains_kind(input, Formula::Kind::Distributed))
    throw UnsupportedModality("canonical model is defined for K, E and S only");
  const Formula phi = expand_group_modalities(input);
  const auto sub = subformulas(phi);
  if (sub.size() > opts.guard)
    throw ResourceExhausted("|Sub(phi)| = " + std::to_string(sub.size()) + " exceeds the guard of " +
                            std::to_string(opts.guard));
  if (!satisfiable(std::vector<Formula>{phi}))
    throw ConsistencyError("canonical model of an inconsistent formula: " + phi.to_string());

  std::vector<Formula> choices;
  for (const auto& f : sub)
    if (is_choice(f)) choices.push_back(f);
  std::sort(choices.begin(), choices.end(), smaller);

  std::vector<std::map<Formula, bool>> assignments;
  std::map<Formula, bool> current;
  std::vector<Formula> literals;
  std::function<void(std::size_t)> dfs = [&](std::size_t i) {
    if (i == choices.size()) {
      assignments.push_back(current);
      return;
    }
    for (bool value : {false, true}) {
      literals.push_back(value ? choices[i] : Formula::negation(choices[i]));
      if (satisfiable(literals)) {
        current[choices[i]] = value;
        dfs(i + 1);
        current.erase(choices[i]);
      }
      literals.pop_back();
    }
  };
  dfs(0);

  KripkeModel m;
  std::vector<FormulaSet> thetas;
  for (std::size_t k = 0; k < assignments.size(); ++k) {
    const StateId s = m.add_state("s" + std::to_string(k));
    FormulaSet theta;
    for (const auto& f : sub) {
      const bool v = evaluate(f, assignments[k]);
      theta.insert(v ? f : Formula::negation(f));
      if (v && f.is_atom()) m.set_true(s, f);
    }
    thetas.push_back(std::move(theta));
  }

  std::set<AgentId> agents = opts.agents ? *opts.agents : agents_in(phi);
  for (const auto& agent : agents) {
    m.declare_agent(agent);
    // Theta/K_i for each state.
    std::vector<std::vector<Formula>> known(assignments.size());
    for (std::size_t k = 0; k < assignments.size(); ++k)
      for (const auto& [f, v] : assignments[k])
        if (v && f.is(Formula::Kind::Knows) && f.agent() == agent) known[k].push_back(f);
    for (std::size_t x = 0; x < assignments.size(); ++x)
      for (std::size_t y = 0; y < assignments.size(); ++y) {
        bool ok = true;
        for (const auto& kf : known[x])
          if (!assignments[y].at(kf) || !evaluate(kf.body(), assignments[y])) {
            ok = false;
            break;
          }
        if (ok) m.add_edge(agent, x, y);
      }
  }
  m.thetas = std::move(thetas);
  return m;
}

}  // namespace kbl
