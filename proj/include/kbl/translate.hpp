// Translation of social network models into canonical Kripke models and,
// for the marked variant, back again.

#ifndef KBL_TRANSLATE_HPP
#define KBL_TRANSLATE_HPP

#include <vector>

#include "kbl/kripke.hpp"
#include "kbl/snm.hpp"

namespace kbl {

// Environment facts, K_i psi for every psi in KB_i, and one atom per
// connection and action pair, sorted by printed form. When `marked`,
// connection atoms are renamed co_<name> and action atoms ac_<name>, also
// inside knowledge-base formulas.
std::vector<Formula> characteristic_set(const Snm& snm, bool marked = false);

// Conjunction of characteristic_set in its order (truth() when empty).
Formula characteristic_formula(const Snm& snm, bool marked = false);

// Renames connection/action atoms to their reserved prefixed forms, and back.
Formula mark(const Formula& phi);
Formula unmark(const Formula& phi);

// Canonical model of the characteristic formula over all agents of the model.
// The result records the characteristic set and the first state (in the
// canonical enumeration order) whose formula set contains all of it.
KripkeModel kt(const Snm& snm, bool marked = false, std::size_t guard = CanonicalOptions{}.guard);

// Rebuilds a model from the characteristic set stored by kt(snm, true).
// Agents are those named by a modality or as an argument of a co_/ac_ atom.
// The vocabulary is reconstructed only as far as the atoms reveal it.
Snm kripke_to_snm(const KripkeModel& m);

// Same agents, knowledge bases (environment included) and relation pairs;
// vocabularies and policies are ignored and absent relations count as empty.
bool equal_modulo_policies(const Snm& a, const Snm& b);

}  // namespace kbl

#endif  // KBL_TRANSLATE_HPP
