// Seeded random models and formulas for property tests and the bench.

#ifndef KBL_GENERATE_HPP
#define KBL_GENERATE_HPP

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kbl/checker.hpp"
#include "kbl/snm.hpp"

namespace kbl {

using Rng = std::mt19937_64;

struct GeneratorParams {
  std::size_t agents = 2;
  std::size_t unary_predicates = 2;  // p0, p1, ... over the sort Obj
  std::size_t elements = 1;          // o0, o1, ...
  std::size_t env_facts = 1;
  std::size_t relation_pairs = 1;    // spread over one connection and one action
  std::size_t kb_max = 2;            // formulas per agent, at most
  std::size_t formula_depth = 2;
  std::size_t modal_depth = 1;
};

// All ground atoms p_k(o_m) of the generated vocabulary.
std::vector<Formula> generated_atoms(const GeneratorParams& p);

// Ground formula over `atoms` built from !, &&, ||, ->, and K_i for agents
// in `agents`. Depth counts connectives and modalities.
Formula random_formula(Rng& rng, const std::vector<Formula>& atoms, const std::vector<AgentId>& agents,
                       std::size_t depth, std::size_t modal_depth);

// A valid model: every knowledge-base formula was admitted by kb_insert.
// Every agent ends up with at least one fact or relation pair.
Snm random_snm(Rng& rng, const GeneratorParams& p);

// Query in the language the canonical translation preserves: Boolean
// combinations of members of `pool` and of K_i applied to such combinations.
Formula random_fragment_query(Rng& rng, const std::vector<Formula>& pool,
                              const std::vector<AgentId>& agents, std::size_t depth);

struct BenchSuite {
  GeneratorParams params{3, 3, 2, 2, 3, 3, 2, 2};
  std::uint64_t seed = 42;
  std::size_t rows = 50;
  // Largest |Sub(phi_SN)| for which the canonical model is built and timed.
  std::size_t guard = 18;
  CheckConfig check;
};

struct BenchRow {
  std::size_t index = 0;
  std::string label;
  std::string formula;
  CostReport cost;
  // Present when the canonical model was within the guard.
  std::optional<double> kripke_seconds;
  std::optional<bool> kripke_verdict;
  bool guard_exceeded = false;
};

// Bench rows for the given (model, formula) pairs, then `suite.rows`
// generated ones.
std::vector<BenchRow> run_bench(const BenchSuite& suite,
                                const std::vector<std::pair<Snm, Formula>>& fixed = {});

}  // namespace kbl

#endif  // KBL_GENERATE_HPP
