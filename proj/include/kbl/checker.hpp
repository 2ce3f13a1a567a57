// Satisfaction of KBL formulas in social network models, and the cost model
// comparing local knowledge-base checks with a global canonical Kripke model.

#ifndef KBL_CHECKER_HPP
#define KBL_CHECKER_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "kbl/deduction.hpp"
#include "kbl/formula.hpp"
#include "kbl/snm.hpp"

namespace kbl {

// Unknown only arises from common knowledge whose unrolling bound ran out.
enum class Verdict { False, True, Unknown };

const char* to_string(Verdict v);
Verdict verdict_of(bool b);

struct CheckConfig {
  // Number of E_G iterations tried for C_G before giving up.
  std::size_t common_bound = 3;
  ProverOptions prover;
  // Evaluate the outerK members concurrently.
  bool parallel = true;
};

struct OuterResult {
  Formula formula;
  Verdict verdict = Verdict::False;
};

struct CheckResult {
  Verdict verdict = Verdict::False;
  // One entry per member of outer_k of the grounded query.
  std::vector<OuterResult> outer;
};

// Grounds phi once, then evaluates it: regular atoms by membership in the
// environment base, connection/action atoms by relation membership, K_i by
// derivability from KB_i, D_G by derivability from the union, E/S as
// conjunction/disjunction of K_i and C_G via check_common.
CheckResult check(const Snm& snm, const Formula& phi, const CheckConfig& cfg = {});

// check() collapsed to a boolean; throws ResourceExhausted on Unknown.
bool satisfies(const Snm& snm, const Formula& phi, const CheckConfig& cfg = {});

// C_G phi on ground phi. False at the first k <= common_bound where E^k_G phi
// fails. True when there are subsets S_j of KB_j such that each closure(S_j)
// derives phi and each closure(S_i) derives K_j g for every g in S_j; then
// E^k_G phi holds for every k by induction. Unknown otherwise.
Verdict check_common(const Snm& snm, const Group& group, const Formula& phi,
                     const CheckConfig& cfg = {});

// Subformulas with K_i at the root that are not in the scope of any modality.
FormulaSet outer_k(const Formula& phi);

using BigInt = boost::multiprecision::cpp_int;

struct OuterCost {
  Formula formula;            // K_i phi_i
  AgentId agent;
  std::size_t kb_size = 0;    // |phi_KB_i|
  std::size_t size = 0;       // |K_i phi_i|
};

// Bounds computed on the grounded query with E/S expanded. Both sides count
// a member K_i phi_i as 2^(knowledge) + |K_i phi_i|; nodes outside the outerK
// members add m_phi to each side.
struct CostReport {
  std::size_t formula_size = 0;
  std::vector<OuterCost> outer;
  // Sum of |phi_KB_i| over agents, sizes of environment facts and sizes of
  // relation atoms.
  std::size_t characteristic_size = 0;
  std::size_t m_phi = 0;
  BigInt snm_modal;     // sum over members of 2^|phi_KB_i| + |K_i phi_i|
  BigInt kripke_modal;  // 2^characteristic_size + sum of |K_i phi_i|
  BigInt snm_bound;     // snm_modal + m_phi
  BigInt kripke_bound;  // kripke_modal + m_phi
  // Strict inequality of the modal parts; empty when outerK is empty.
  std::optional<bool> snm_cheaper;
  Verdict verdict = Verdict::False;
  double check_seconds = 0;
};

// |phi_KB|: size of the right-nested conjunction of the base, 0 when empty.
std::size_t kb_formula_size(const KnowledgeBase& kb);

// Computes the bounds; runs check() and records its wall time unless
// `run_check` is false.
CostReport cost_report(const Snm& snm, const Formula& phi, const CheckConfig& cfg = {},
                       bool run_check = true);

}  // namespace kbl

#endif  // KBL_CHECKER_HPP
