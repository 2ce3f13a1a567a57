#include "kbl/deduction.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "kbl/errors.hpp"

namespace kbl {

std::size_t default_step_budget() {
  if (const char* env = std::getenv("KBL_STEP_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 2'000'000;
}

namespace {

enum class Op { Atom, Not, And, Box, False };

struct Node {
  Op op = Op::False;
  int a = -1;
  int b = -1;
  std::string key;  // atom text or modality key
  std::size_t weight = 1;
  std::string text;
};

struct World {
  std::vector<int> core;
  std::vector<int> label;
  std::map<std::string, std::vector<int>> succ;
};

class Tableau {
 public:
  Tableau(const ProverOptions& opts, std::optional<Group> group) : opts_(opts) {
    if (group) {
      group_ = std::move(group);
      group_key_ = group_->size() == 1 ? group_->front() : "D[" + group_to_string(*group_) + "]";
      virtual_keys_.insert(group_key_);
      if (group_->size() == 1) virtual_keys_.clear();
    }
  }

  const std::string& group_key() const { return group_key_; }

  int convert(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Pred: {
        for (const auto& a : f.args())
          if (!a.is_constant())
            throw ArgumentError("formula must be ground: " + f.to_string());
        const int id = intern(Op::Atom, -1, -1, f.to_string());
        atom_formula_.emplace(id, f);
        return id;
      }
      case Formula::Kind::False: return falsum();
      case Formula::Kind::Not: return neg(convert(f.body()));
      case Formula::Kind::And: return conj(convert(f.left()), convert(f.right()));
      case Formula::Kind::Knows: return box(f.agent(), convert(f.body()));
      case Formula::Kind::Everyone:
      case Formula::Kind::Someone: return convert(expand_group_modalities(f));
      case Formula::Kind::Distributed:
        if (f.group().size() == 1) return box(f.group().front(), convert(f.body()));
        if (group_ && *group_ == f.group()) return box(group_key_, convert(f.body()));
        throw UnsupportedModality("distributed knowledge D[" + group_to_string(f.group()) +
                                  "] is outside the KD4 language of the derivation");
      case Formula::Kind::Common:
        throw UnsupportedModality("common knowledge C[" + group_to_string(f.group()) +
                                  "] is outside the KD4 language of the derivation");
      case Formula::Kind::Forall:
        throw ArgumentError("formula must be ground (quantifiers expanded): " + f.to_string());
    }
    throw InternalError("unreachable formula kind");
  }

  int box(const std::string& key, int body) {
    const int id = intern(Op::Box, body, -1, key);
    if (virtual_keys_.count(key)) used_virtual_ = true;
    return id;
  }

  int neg(int x) {
    if (nodes_[x].op == Op::Not) return nodes_[x].a;
    return intern(Op::Not, x, -1, "");
  }

  // True when the conjunction of `roots` is satisfiable.
  bool run(const std::vector<int>& roots) {
    std::vector<int> core(roots);
    normalize(core);
    return expand(core).has_value();
  }

  std::size_t steps() const { return steps_; }
  std::vector<std::string> take_trace() { return std::move(trace_); }

  // Builds the model read off the open tableau rooted at world 0.
  std::optional<KripkeModel> countermodel() const {
    if (used_virtual_ || worlds_.empty()) return std::nullopt;
    KripkeModel m;
    std::map<int, StateId> state_of;
    std::vector<int> order{0};
    state_of[0] = m.add_state("w0");
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (const auto& [key, targets] : worlds_[order[i]].succ)
        for (int t : targets)
          if (!state_of.count(t)) {
            state_of[t] = m.add_state("w" + std::to_string(t));
            order.push_back(t);
          }
    }
    std::set<AgentId> agents;
    for (const auto& n : nodes_)
      if (n.op == Op::Box) agents.insert(n.key);
    for (const auto& a : agents) m.declare_agent(a);
    std::map<AgentId, std::set<std::pair<StateId, StateId>>> rel;
    for (int w : order) {
      for (int x : worlds_[w].label)
        if (nodes_[x].op == Op::Atom) m.set_true(state_of.at(w), atom_formula_.at(x));
      for (const auto& [key, targets] : worlds_[w].succ)
        for (int t : targets) rel[key].insert({state_of.at(w), state_of.at(t)});
    }
    const std::size_t n = m.num_states();
    std::map<AgentId, std::vector<std::vector<bool>>> reach;
    bool need_sink = false;
    for (const auto& agent : agents) {
      auto& r = reach[agent];
      r.assign(n + 1, std::vector<bool>(n + 1, false));
      for (const auto& [s, t] : rel[agent]) r[s][t] = true;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
          if (r[i][k])
            for (std::size_t j = 0; j < n; ++j)
              if (r[k][j]) r[i][j] = true;
      // Dead ends go to a sink; everything reaching a dead end reaches it too.
      std::vector<bool> dead(n, false);
      for (std::size_t i = 0; i < n; ++i) {
        dead[i] = std::find(r[i].begin(), r[i].end(), true) == r[i].end();
        need_sink = need_sink || dead[i];
      }
      for (std::size_t i = 0; i < n; ++i) {
        bool to_sink = dead[i];
        for (std::size_t j = 0; j < n && !to_sink; ++j) to_sink = r[i][j] && dead[j];
        r[i][n] = to_sink;
      }
      r[n][n] = true;
    }
    const std::size_t states = need_sink ? n + 1 : n;
    if (need_sink) m.add_state("sink");
    for (const auto& agent : agents)
      for (std::size_t i = 0; i < states; ++i)
        for (std::size_t j = 0; j < states; ++j)
          if (reach[agent][i][j]) m.add_edge(agent, i, j);
    return m;
  }

 private:
  int intern(Op op, int a, int b, const std::string& key) {
    auto k = std::make_tuple(static_cast<int>(op), a, b, key);
    if (auto it = index_.find(k); it != index_.end()) return it->second;
    Node n;
    n.op = op;
    n.a = a;
    n.b = b;
    n.key = key;
    switch (op) {
      case Op::Atom: n.text = key; break;
      case Op::False: n.text = "false"; break;
      case Op::Not:
        n.weight = 1 + nodes_[a].weight;
        n.text = "!" + nodes_[a].text;
        break;
      case Op::And:
        n.weight = 1 + nodes_[a].weight + nodes_[b].weight;
        n.text = "(" + nodes_[a].text + " && " + nodes_[b].text + ")";
        break;
      case Op::Box:
        n.weight = 1 + nodes_[a].weight;
        n.text = "K[" + key + "] " + nodes_[a].text;
        break;
    }
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(n));
    index_.emplace(k, id);
    return id;
  }

  int falsum() { return intern(Op::False, -1, -1, ""); }
  int conj(int a, int b) { return intern(Op::And, a, b, ""); }

  bool before(int x, int y) const {
    const auto& a = nodes_[x];
    const auto& b = nodes_[y];
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.text < b.text;
  }

  void normalize(std::vector<int>& v) const {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  std::string describe(const std::vector<int>& v) const {
    std::vector<int> sorted(v);
    std::sort(sorted.begin(), sorted.end(), [&](int x, int y) { return before(x, y); });
    std::string out = "{";
    for (std::size_t i = 0; i < sorted.size(); ++i) out += (i ? ", " : "") + nodes_[sorted[i]].text;
    return out + "}";
  }

  void log(std::string line) {
    if (opts_.trace) trace_.push_back(std::move(line));
  }

  void rollback(std::size_t n) {
    worlds_.resize(n);
    for (auto it = sat_cache_.begin(); it != sat_cache_.end();) {
      if (it->second >= static_cast<int>(n))
        it = sat_cache_.erase(it);
      else
        ++it;
    }
  }

  std::optional<int> expand(const std::vector<int>& core) {
    if (unsat_cache_.count(core)) return std::nullopt;
    if (auto it = sat_cache_.find(core); it != sat_cache_.end()) return it->second;
    if (auto it = in_progress_.find(core); it != in_progress_.end()) {
      log("  loop: " + describe(core) + " repeats w" + std::to_string(it->second));
      return it->second;
    }
    if (++steps_ > opts_.step_budget)
      throw ResourceExhausted("prover step budget of " + std::to_string(opts_.step_budget) +
                              " world expansions exhausted");
    const int id = static_cast<int>(worlds_.size());
    worlds_.push_back(World{core, {}, {}});
    in_progress_.emplace(core, id);
    log("w" + std::to_string(id) + " " + describe(core));
    std::vector<int> pending(core.rbegin(), core.rend());
    const bool ok = saturate(std::move(pending), {}, {}, {}, id);
    in_progress_.erase(core);
    if (ok) {
      sat_cache_.emplace(core, id);
      log("w" + std::to_string(id) + " open");
      return id;
    }
    rollback(static_cast<std::size_t>(id));
    unsat_cache_.insert(core);
    log("w" + std::to_string(id) + " closed");
    return std::nullopt;
  }

  bool saturate(std::vector<int> pending, std::set<int> lits, std::set<int> done,
                std::vector<int> betas, int world) {
    while (!pending.empty()) {
      const int x = pending.back();
      pending.pop_back();
      if (!done.insert(x).second) continue;
      const Node n = nodes_[x];
      switch (n.op) {
        case Op::False: return false;
        case Op::Atom:
        case Op::Box:
          if (lits.count(neg(x))) {
            log("  clash on " + n.text);
            return false;
          }
          lits.insert(x);
          break;
        case Op::And:
          pending.push_back(n.b);
          pending.push_back(n.a);
          break;
        case Op::Not: {
          const Node inner = nodes_[n.a];
          switch (inner.op) {
            case Op::False: break;
            case Op::Atom:
            case Op::Box:
              if (lits.count(n.a)) {
                log("  clash on " + inner.text);
                return false;
              }
              lits.insert(x);
              break;
            case Op::And: betas.push_back(x); break;
            case Op::Not: pending.push_back(inner.a); break;
          }
          break;
        }
      }
    }
    // Pick the smallest disjunction not already satisfied.
    int chosen = -1;
    std::size_t chosen_pos = 0;
    for (std::size_t i = 0; i < betas.size(); ++i) {
      const Node& conj_node = nodes_[nodes_[betas[i]].a];
      const int na = neg(conj_node.a);
      const int nb = neg(conj_node.b);
      if (done.count(na) || done.count(nb)) continue;
      if (chosen < 0 || before(betas[i], chosen)) {
        chosen = betas[i];
        chosen_pos = i;
      }
    }
    if (chosen < 0) return modal(world, lits);
    betas.erase(betas.begin() + static_cast<std::ptrdiff_t>(chosen_pos));
    const int a = nodes_[nodes_[chosen].a].a;
    const int b = nodes_[nodes_[chosen].a].b;
    if (saturate({neg(a)}, lits, done, betas, world)) return true;
    return saturate({neg(b), a}, std::move(lits), std::move(done), std::move(betas), world);
  }

  bool modal(int world, const std::set<int>& lits) {
    std::map<std::string, std::vector<int>> base;      // psi and K psi per key
    std::map<std::string, std::vector<int>> diamonds;  // psi of !K psi
    for (int x : lits) {
      const Node& n = nodes_[x];
      if (n.op == Op::Box) {
        base[n.key].push_back(n.a);
        base[n.key].push_back(x);
      } else if (n.op == Op::Not && nodes_[n.a].op == Op::Box) {
        diamonds[nodes_[n.a].key].push_back(nodes_[n.a].a);
      }
    }
    std::set<std::string> keys;
    for (const auto& [k, v] : base) keys.insert(k);
    for (const auto& [k, v] : diamonds) keys.insert(k);

    const std::size_t checkpoint = worlds_.size();
    std::map<std::string, std::vector<int>> succ;
    for (const auto& key : keys) {
      std::vector<int> shared = base[key];
      // The D_G relation lies inside every member's relation.
      if (group_ && group_->size() > 1 && key == group_key_)
        for (const auto& i : *group_)
          if (auto it = base.find(i); it != base.end()) shared.insert(shared.end(), it->second.begin(), it->second.end());
      std::vector<int>& ds = diamonds[key];
      std::sort(ds.begin(), ds.end(), [&](int x, int y) { return before(x, y); });
      std::vector<std::vector<int>> cores;
      if (ds.empty()) cores.push_back(shared);
      for (int d : ds) {
        cores.push_back(shared);
        cores.back().push_back(neg(d));
      }
      for (auto& core : cores) {
        normalize(core);
        const auto target = expand(core);
        if (!target) {
          rollback(checkpoint);
          return false;
        }
        log("  w" + std::to_string(world) + " -" + key + "-> w" + std::to_string(*target));
        succ[key].push_back(*target);
      }
    }
    worlds_[static_cast<std::size_t>(world)].label.assign(lits.begin(), lits.end());
    worlds_[static_cast<std::size_t>(world)].succ = std::move(succ);
    return true;
  }

  ProverOptions opts_;
  std::optional<Group> group_;
  std::string group_key_;
  std::set<std::string> virtual_keys_;
  bool used_virtual_ = false;

  std::vector<Node> nodes_;
  std::map<std::tuple<int, int, int, std::string>, int> index_;
  std::map<int, Formula> atom_formula_;

  std::vector<World> worlds_;
  std::map<std::vector<int>, int> in_progress_;
  std::map<std::vector<int>, int> sat_cache_;
  std::set<std::vector<int>> unsat_cache_;
  std::size_t steps_ = 0;
  std::vector<std::string> trace_;
};

ProofResult finish(Tableau& t, const std::vector<int>& roots) {
  ProofResult r;
  const bool sat = t.run(roots);
  r.derivable = !sat;
  if (sat) r.countermodel = t.countermodel();
  r.steps = t.steps();
  r.trace = t.take_trace();
  return r;
}

void reject_group_modalities(const Formula& f) {
  if (contains_kind(f, Formula::Kind::Common))
    throw UnsupportedModality("knowledge bases cannot hold common knowledge: " + f.to_string());
  if (contains_kind(f, Formula::Kind::Distributed))
    throw UnsupportedModality("knowledge bases cannot hold distributed knowledge: " + f.to_string());
}

}  // namespace

ProofResult prove(std::span<const Formula> premises, const Formula& goal, const ProverOptions& opts) {
  Tableau t(opts, std::nullopt);
  std::vector<int> roots;
  for (const auto& p : premises) roots.push_back(t.convert(p));
  roots.push_back(t.neg(t.convert(goal)));
  return finish(t, roots);
}

bool satisfiable(std::span<const Formula> formulas, const ProverOptions& opts) {
  Tableau t(opts, std::nullopt);
  std::vector<int> roots;
  for (const auto& p : formulas) roots.push_back(t.convert(p));
  return t.run(roots);
}

std::vector<Formula> closure(const KnowledgeBase& kb) {
  std::vector<Formula> out(kb.formulas().begin(), kb.formulas().end());
  for (const auto& f : kb.formulas()) out.push_back(Formula::knows(kb.owner(), f));
  return out;
}

ProofResult explain(const KnowledgeBase& kb, const Formula& phi, const ProverOptions& opts) {
  for (const auto& f : kb.formulas()) reject_group_modalities(f);
  return prove(closure(kb), phi, opts);
}

bool derive(const KnowledgeBase& kb, const Formula& phi, const ProverOptions& opts) {
  return explain(kb, phi, opts).derivable;
}

bool consistent(const KnowledgeBase& kb, const ProverOptions& opts) {
  return !derive(kb, Formula::falsum(), opts);
}

ProofResult explain_group(std::span<const KnowledgeBase> kbs, const Formula& phi,
                          const ProverOptions& opts) {
  if (kbs.empty()) throw ArgumentError("distributed knowledge needs a non-empty group");
  std::vector<AgentId> owners;
  for (const auto& kb : kbs) {
    owners.push_back(kb.owner());
    for (const auto& f : kb.formulas()) reject_group_modalities(f);
  }
  Tableau t(opts, make_group(owners));
  std::vector<int> roots;
  for (const auto& kb : kbs) {
    for (const auto& f : closure(kb)) roots.push_back(t.convert(f));
    for (const auto& f : kb.formulas()) roots.push_back(t.box(t.group_key(), t.convert(f)));
  }
  roots.push_back(t.neg(t.convert(phi)));
  return finish(t, roots);
}

bool derive_group(std::span<const KnowledgeBase> kbs, const Formula& phi, const ProverOptions& opts) {
  return explain_group(kbs, phi, opts).derivable;
}

}  // namespace kbl
