#include "kbl/generate.hpp"

#include <algorithm>
#include <chrono>

#include "kbl/errors.hpp"
#include "kbl/translate.hpp"

namespace kbl {

namespace {

const Symbol kObjSort = "Obj";
const Symbol kConnection = "link";
const Symbol kAction = "req";

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::string indexed(const char* stem, std::size_t i) { return stem + std::to_string(i); }

Formula boolean(Rng& rng, Formula a, Formula b) {
  switch (pick(rng, 3)) {
    case 0: return Formula::conjunction(std::move(a), std::move(b));
    case 1: return Formula::disjunction(std::move(a), std::move(b));
    default: return Formula::implies(std::move(a), std::move(b));
  }
}

// Boolean combination of pool members, no new modalities.
Formula combination(Rng& rng, const std::vector<Formula>& pool, std::size_t depth) {
  if (depth == 0 || chance(rng, 0.35)) return pool[pick(rng, pool.size())];
  if (chance(rng, 0.3)) return Formula::negation(combination(rng, pool, depth - 1));
  return boolean(rng, combination(rng, pool, depth - 1), combination(rng, pool, depth - 1));
}

}  // namespace

std::vector<Formula> generated_atoms(const GeneratorParams& p) {
  std::vector<Formula> out;
  for (std::size_t k = 0; k < p.unary_predicates; ++k)
    for (std::size_t m = 0; m < p.elements; ++m)
      out.push_back(Formula::pred(indexed("p", k), {Term::constant(indexed("o", m))}));
  return out;
}

Formula random_formula(Rng& rng, const std::vector<Formula>& atoms, const std::vector<AgentId>& agents,
                       std::size_t depth, std::size_t modal_depth) {
  if (depth == 0 || chance(rng, 0.25)) return atoms[pick(rng, atoms.size())];
  const bool modal = modal_depth > 0 && !agents.empty();
  const std::size_t op = pick(rng, modal ? 5 : 4);
  switch (op) {
    case 0: return Formula::negation(random_formula(rng, atoms, agents, depth - 1, modal_depth));
    case 4:
      return Formula::knows(agents[pick(rng, agents.size())],
                            random_formula(rng, atoms, agents, depth - 1, modal_depth - 1));
    default:
      return boolean(rng, random_formula(rng, atoms, agents, depth - 1, modal_depth),
                     random_formula(rng, atoms, agents, depth - 1, modal_depth));
  }
}

Snm random_snm(Rng& rng, const GeneratorParams& p) {
  if (p.agents == 0 || p.unary_predicates == 0 || p.elements == 0)
    throw ArgumentError("generator needs at least one agent, predicate and element");
  SnmBuilder b;
  std::vector<AgentId> agents;
  for (std::size_t i = 0; i < p.agents; ++i) {
    agents.push_back(indexed("a", i));
    b.agent(agents.back());
  }
  std::vector<Symbol> elements;
  for (std::size_t m = 0; m < p.elements; ++m) elements.push_back(indexed("o", m));
  b.domain(kObjSort, elements);
  for (std::size_t k = 0; k < p.unary_predicates; ++k) b.predicate(indexed("p", k), 1);
  b.predicate(kConnection, 2, PredKind::Connection);
  b.predicate(kAction, 2, PredKind::Action);

  const auto atoms = generated_atoms(p);
  std::set<AgentId> footprint;
  for (std::size_t n = 0; n < p.relation_pairs; ++n) {
    const AgentId& i = agents[pick(rng, agents.size())];
    const AgentId& j = agents[pick(rng, agents.size())];
    if (chance(rng, 0.5))
      b.connection(kConnection, i, j);
    else
      b.action(kAction, i, j);
    footprint.insert(i);
    footprint.insert(j);
  }
  for (std::size_t n = 0; n < p.env_facts; ++n) b.know(kEnvironment, atoms[pick(rng, atoms.size())]);
  Snm snm = b.build();

  // Knowledge may also mention one connection atom.
  std::vector<Formula> pool = atoms;
  pool.push_back(Formula::pred(kConnection, {Term::constant(agents[pick(rng, agents.size())]),
                                             Term::constant(agents[pick(rng, agents.size())])}));
  for (const auto& a : agents) {
    const std::size_t n = pick(rng, p.kb_max + 1);
    for (std::size_t k = 0; k < n; ++k) {
      const Formula f = random_formula(rng, pool, agents, p.formula_depth, p.modal_depth);
      try {
        snm = snm.kb_insert(a, f);
      } catch (const ConsistencyError&) {
        continue;
      }
    }
    if (snm.kb(a).empty() && !footprint.count(a)) snm = snm.kb_insert(a, atoms[pick(rng, atoms.size())]);
  }
  return snm;
}

Formula random_fragment_query(Rng& rng, const std::vector<Formula>& pool, const std::vector<AgentId>& agents,
                              std::size_t depth) {
  if (pool.empty()) throw ArgumentError("empty formula pool");
  if (depth == 0 || chance(rng, 0.3)) return pool[pick(rng, pool.size())];
  if (!agents.empty() && chance(rng, 0.35))
    return Formula::knows(agents[pick(rng, agents.size())], combination(rng, pool, depth - 1));
  if (chance(rng, 0.25)) return Formula::negation(random_fragment_query(rng, pool, agents, depth - 1));
  return boolean(rng, random_fragment_query(rng, pool, agents, depth - 1),
                 random_fragment_query(rng, pool, agents, depth - 1));
}

namespace {

BenchRow bench_row(std::size_t index, std::string label, const Snm& snm, const Formula& phi,
                   const BenchSuite& suite) {
  BenchRow row;
  row.index = index;
  row.label = std::move(label);
  row.formula = phi.to_string();
  row.cost = cost_report(snm, phi, suite.check);
  if (subformulas(characteristic_formula(snm)).size() > suite.guard) {
    row.guard_exceeded = true;
    return row;
  }
  const auto start = std::chrono::steady_clock::now();
  const KripkeModel m = kt(snm, false, suite.guard);
  row.kripke_verdict = kripke_sat(m, *m.distinguished, ground(phi, snm.vocab()));
  row.kripke_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchSuite& suite, const std::vector<std::pair<Snm, Formula>>& fixed) {
  std::vector<BenchRow> rows;
  for (const auto& [snm, phi] : fixed) rows.push_back(bench_row(rows.size(), "given", snm, phi, suite));
  Rng rng(suite.seed);
  std::vector<AgentId> agents;
  for (std::size_t i = 0; i < suite.params.agents; ++i) agents.push_back(indexed("a", i));
  const auto atoms = generated_atoms(suite.params);
  for (std::size_t n = 0; n < suite.rows; ++n) {
    const Snm snm = random_snm(rng, suite.params);
    const Formula phi =
        random_formula(rng, atoms, agents, suite.params.formula_depth, suite.params.modal_depth);
    rows.push_back(bench_row(rows.size(), "seed " + std::to_string(suite.seed) + " #" + std::to_string(n),
                             snm, phi, suite));
  }
  return rows;
}

}  // namespace kbl
