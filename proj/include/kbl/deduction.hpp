// KD4 derivability for agent knowledge bases.
//
// KB |- phi is decided as validity of (/\ closure(KB)) -> phi over serial,
// transitive multi-agent frames, where closure(KB) adds K_owner psi for each
// premise psi (self-awareness). Validity is refuted by a labelled tableau:
// propositional rules first, then one successor world per negated box, plus a
// seriality successor when an agent has boxes but no negated box. Successor
// worlds inherit both psi and K_i psi for every K_i psi of their parent.
// A world whose core formula set repeats an ancestor's is closed off by a
// back edge to that ancestor.

#ifndef KBL_DEDUCTION_HPP
#define KBL_DEDUCTION_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kbl/formula.hpp"
#include "kbl/knowledge_base.hpp"
#include "kbl/kripke.hpp"

namespace kbl {

// Reads KBL_STEP_BUDGET from the environment; 2'000'000 otherwise.
std::size_t default_step_budget();

struct ProverOptions {
  // Maximum number of world expansions before ResourceExhausted is thrown.
  std::size_t step_budget = default_step_budget();
  bool trace = false;
};

struct ProofResult {
  bool derivable = false;
  // Serial, transitive model whose state 0 satisfies every premise and
  // refutes the goal. Present when the goal is not derivable and the proof
  // used only individual-agent modalities.
  std::optional<KripkeModel> countermodel;
  std::size_t steps = 0;
  std::vector<std::string> trace;
};

// premises |- goal, with no self-awareness seeding.
ProofResult prove(std::span<const Formula> premises, const Formula& goal,
                  const ProverOptions& opts = {});

// Satisfiable at some world of some serial, transitive model.
bool satisfiable(std::span<const Formula> formulas, const ProverOptions& opts = {});

// Premises plus K_owner psi for every premise psi.
std::vector<Formula> closure(const KnowledgeBase& kb);

ProofResult explain(const KnowledgeBase& kb, const Formula& phi, const ProverOptions& opts = {});
bool derive(const KnowledgeBase& kb, const Formula& phi, const ProverOptions& opts = {});
bool consistent(const KnowledgeBase& kb, const ProverOptions& opts = {});

// Derivability from the union of the group's knowledge bases. Each base is
// closed under its owner's self-awareness before the union; the union is
// additionally closed under D_G, so that phi may mention D_G for this very
// group (a singleton D_{i} is read as K_i everywhere). K_i psi for a member i
// implies D_G psi.
ProofResult explain_group(std::span<const KnowledgeBase> kbs, const Formula& phi,
                          const ProverOptions& opts = {});
bool derive_group(std::span<const KnowledgeBase> kbs, const Formula& phi,
                  const ProverOptions& opts = {});

}  // namespace kbl

#endif  // KBL_DEDUCTION_HPP
