#include "kbl/checker.hpp"

#include <chrono>
#include <future>
#include <map>

#include "kbl/errors.hpp"

namespace kbl {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::False: return "false";
    case Verdict::True: return "true";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

Verdict verdict_of(bool b) { return b ? Verdict::True : Verdict::False; }

namespace {

Verdict negate(Verdict v) {
  if (v == Verdict::Unknown) return v;
  return v == Verdict::True ? Verdict::False : Verdict::True;
}

Verdict both(Verdict a, Verdict b) {
  if (a == Verdict::False || b == Verdict::False) return Verdict::False;
  if (a == Verdict::Unknown || b == Verdict::Unknown) return Verdict::Unknown;
  return Verdict::True;
}

const KnowledgeBase& agent_kb(const Snm& snm, const AgentId& a) {
  if (!snm.is_agent(a)) throw VocabularyError("unknown agent '" + a + "'");
  return snm.kb(a);
}

void collect_outer(const Formula& f, std::vector<Formula>& out) {
  switch (f.kind()) {
    case Formula::Kind::Knows: out.push_back(f); return;
    case Formula::Kind::Not:
    case Formula::Kind::Forall: collect_outer(f.body(), out); return;
    case Formula::Kind::And:
      collect_outer(f.left(), out);
      collect_outer(f.right(), out);
      return;
    default: return;
  }
}

class Evaluator {
 public:
  Evaluator(const Snm& snm, const CheckConfig& cfg) : snm_(snm), cfg_(cfg) {}

  void precompute(const FormulaSet& members) {
    std::vector<Formula> list(members.begin(), members.end());
    std::vector<bool> results(list.size());
    if (cfg_.parallel && list.size() > 1) {
      std::vector<std::future<bool>> jobs;
      for (const auto& k : list)
        jobs.push_back(std::async(std::launch::async, [this, k] { return knows(k); }));
      for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i].get();
    } else {
      for (std::size_t i = 0; i < list.size(); ++i) results[i] = knows(list[i]);
    }
    for (std::size_t i = 0; i < list.size(); ++i) known_.emplace(list[i], results[i]);
  }

  Verdict eval(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::Pred: return verdict_of(atom(f));
      case K::False: return Verdict::False;
      case K::Not: return negate(eval(f.body()));
      case K::And: {
        const Verdict l = eval(f.left());
        if (l == Verdict::False) return l;
        return both(l, eval(f.right()));
      }
      case K::Knows: {
        if (auto it = known_.find(f); it != known_.end()) return verdict_of(it->second);
        return verdict_of(knows(f));
      }
      case K::Everyone:
      case K::Someone: return eval(expand_group_modalities(f));
      case K::Distributed: {
        std::vector<KnowledgeBase> kbs;
        for (const auto& a : f.group()) kbs.push_back(agent_kb(snm_, a));
        return verdict_of(derive_group(kbs, f.body(), cfg_.prover));
      }
      case K::Common: return check_common(snm_, f.group(), f.body(), cfg_);
      case K::Forall: break;
    }
    throw InternalError("quantifier survived grounding");
  }

 private:
  bool knows(const Formula& k) const { return derive(agent_kb(snm_, k.agent()), k.body(), cfg_.prover); }

  bool atom(const Formula& f) const {
    switch (f.pred_kind()) {
      case PredKind::Regular: return snm_.environment().contains(f);
      case PredKind::Connection:
        return snm_.connection_holds(f.name(), f.args()[0].name(), f.args()[1].name());
      case PredKind::Action: return snm_.action_holds(f.name(), f.args()[0].name(), f.args()[1].name());
    }
    return false;
  }

  const Snm& snm_;
  const CheckConfig& cfg_;
  std::map<Formula, bool> known_;
};

Formula prepare(const Snm& snm, const Formula& phi) {
  return expand_group_modalities(ground(phi, snm.vocab()));
}

}  // namespace

FormulaSet outer_k(const Formula& phi) {
  std::vector<Formula> occ;
  collect_outer(phi, occ);
  return FormulaSet(occ.begin(), occ.end());
}

CheckResult check(const Snm& snm, const Formula& phi, const CheckConfig& cfg) {
  if (cfg.common_bound < 1) throw ArgumentError("common-knowledge bound must be at least 1");
  const Formula g = prepare(snm, phi);
  Evaluator ev(snm, cfg);
  const FormulaSet members = outer_k(g);
  ev.precompute(members);
  CheckResult r;
  for (const auto& m : members) r.outer.push_back({m, ev.eval(m)});
  r.verdict = ev.eval(g);
  return r;
}

bool satisfies(const Snm& snm, const Formula& phi, const CheckConfig& cfg) {
  const Verdict v = check(snm, phi, cfg).verdict;
  if (v == Verdict::Unknown)
    throw ResourceExhausted("common knowledge undecided within " + std::to_string(cfg.common_bound) +
                            " iterations");
  return v == Verdict::True;
}

Verdict check_common(const Snm& snm, const Group& group, const Formula& phi, const CheckConfig& cfg) {
  if (group.empty()) throw ArgumentError("common knowledge needs a non-empty group");
  std::vector<const KnowledgeBase*> kbs;
  for (const auto& a : group) kbs.push_back(&agent_kb(snm, a));
  const Formula body = expand_group_modalities(phi);
  // E^k phi holds iff every member derives E^(k-1) phi.
  Formula level = body;
  for (std::size_t k = 1; k <= cfg.common_bound; ++k) {
    for (const auto* kb : kbs)
      if (!derive(*kb, level, cfg.prover)) return Verdict::False;
    level = expand_group_modalities(Formula::everyone(group, level));
  }
  // Greatest S_j within KB_j such that every closure(S_i) derives K_j g for
  // every g in S_j. If each closure(S_j) derives phi, induction on k gives
  // closure(S_i) |- E^k phi for all k.
  std::vector<FormulaSet> support;
  for (const auto* kb : kbs) support.push_back(kb->formulas());
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t j = 0; j < kbs.size(); ++j)
      for (auto it = support[j].begin(); it != support[j].end();) {
        bool known = true;
        for (std::size_t i = 0; i < kbs.size() && known; ++i)
          known = derive(KnowledgeBase(group[i], support[i]), Formula::knows(group[j], *it), cfg.prover);
        if (known) {
          ++it;
        } else {
          it = support[j].erase(it);
          changed = true;
        }
      }
  }
  for (std::size_t j = 0; j < kbs.size(); ++j)
    if (!derive(KnowledgeBase(group[j], support[j]), body, cfg.prover)) return Verdict::Unknown;
  return Verdict::True;
}

std::size_t kb_formula_size(const KnowledgeBase& kb) {
  if (kb.empty()) return 0;
  const std::vector<Formula> parts(kb.formulas().begin(), kb.formulas().end());
  return size(Formula::conjoin(parts));
}

CostReport cost_report(const Snm& snm, const Formula& phi, const CheckConfig& cfg, bool run_check) {
  CostReport r;
  const Formula g = prepare(snm, phi);
  r.formula_size = size(g);

  std::vector<Formula> occurrences;
  collect_outer(g, occurrences);
  std::size_t inside = 0;
  for (const auto& o : occurrences) inside += size(o);
  r.m_phi = r.formula_size - inside;

  for (const auto& a : snm.agents()) r.characteristic_size += kb_formula_size(snm.kb(a));
  for (const auto& f : snm.environment().formulas()) r.characteristic_size += size(f);
  auto relation_sizes = [&](const std::map<Symbol, AgentRelation>& rels, PredKind kind) {
    for (const auto& [name, pairs] : rels)
      for (const auto& [i, j] : pairs)
        r.characteristic_size += size(Formula::pred(name, {Term::constant(i), Term::constant(j)}, kind));
  };
  relation_sizes(snm.connections(), PredKind::Connection);
  relation_sizes(snm.actions(), PredKind::Action);

  BigInt member_sizes = 0;
  for (const auto& k : outer_k(g)) {
    OuterCost c{k, k.agent(), kb_formula_size(agent_kb(snm, k.agent())), size(k)};
    r.snm_modal += (BigInt(1) << c.kb_size) + c.size;
    member_sizes += c.size;
    r.outer.push_back(std::move(c));
  }
  r.kripke_modal = (BigInt(1) << r.characteristic_size) + member_sizes;
  r.snm_bound = r.snm_modal + r.m_phi;
  r.kripke_bound = r.kripke_modal + r.m_phi;
  if (!r.outer.empty()) r.snm_cheaper = r.snm_modal < r.kripke_modal;

  if (run_check) {
    const auto start = std::chrono::steady_clock::now();
    r.verdict = check(snm, phi, cfg).verdict;
    r.check_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

}  // namespace kbl
