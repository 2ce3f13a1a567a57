// Terms and formulas of the knowledge-based logic.
//
// Formulas are immutable trees with shared structure; copying a Formula is
// a reference-count bump. The stored constructors are the core ones
// (predicate, negation, conjunction, universal quantifier, K_i, E_G, S_G,
// C_G, D_G, falsum); implication and disjunction exist only as builders and
// as a print/size view over the negation/conjunction patterns they produce.

#ifndef KBL_FORMULA_HPP
#define KBL_FORMULA_HPP

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace kbl {

namespace detail {
struct NodeBuilder;
}

using Symbol = std::string;
using AgentId = std::string;
// Sorted, duplicate-free, non-empty.
using Group = std::vector<AgentId>;

// Reserved name of the environment agent. It is never a member of Ag.
inline const AgentId kEnvironment = "e";

class Term {
 public:
  enum class Kind { Constant, Variable, Function };

  static Term constant(Symbol name);
  static Term variable(Symbol name);
  static Term function(Symbol name, std::vector<Term> args);

  Kind kind() const { return kind_; }
  const Symbol& name() const { return name_; }
  const std::vector<Term>& args() const { return args_; }

  bool is_constant() const { return kind_ == Kind::Constant; }
  // No Variable anywhere below.
  bool is_ground() const;

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Term& a, const Term& b);
  friend bool operator==(const Term& a, const Term& b) { return (a <=> b) == 0; }

 private:
  Term(Kind kind, Symbol name, std::vector<Term> args)
      : kind_(kind), name_(std::move(name)), args_(std::move(args)) {}

  Kind kind_ = Kind::Constant;
  Symbol name_;
  std::vector<Term> args_;
};

enum class PredKind { Regular, Connection, Action };

const char* to_string(PredKind kind);

class Formula {
 public:
  enum class Kind {
    Pred,
    Not,
    And,
    Forall,
    Knows,
    Everyone,
    Someone,
    Common,
    Distributed,
    False,
  };

  // Builds p(args). The kind is an annotation resolved from a vocabulary;
  // it does not take part in equality, ordering or hashing.
  static Formula pred(Symbol name, std::vector<Term> args,
                      PredKind kind = PredKind::Regular);
  static Formula falsum();
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula forall(Symbol var, Symbol sort, Formula body);
  static Formula knows(AgentId agent, Formula f);
  static Formula everyone(Group group, Formula f);
  static Formula someone(Group group, Formula f);
  static Formula common(Group group, Formula f);
  static Formula distributed(Group group, Formula f);

  // Surface connectives, desugared on construction.
  static Formula implies(Formula a, Formula b);     // !(a && !b)
  static Formula disjunction(Formula a, Formula b); // !(!a && !b)
  static Formula truth();                           // !false
  // Right-nested conjunction; truth() for an empty list.
  static Formula conjoin(std::span<const Formula> parts);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  bool is_atom() const { return is(Kind::Pred); }
  bool is_modal() const;  // K, E, S, C or D at the root

  // Pred
  const Symbol& name() const;
  PredKind pred_kind() const;
  const std::vector<Term>& args() const;
  // Not, Forall and all modalities
  const Formula& body() const;
  // And
  const Formula& left() const;
  const Formula& right() const;
  // Forall
  const Symbol& var() const;
  const Symbol& sort() const;
  // Knows
  const AgentId& agent() const;
  // Everyone / Someone / Common / Distributed
  const Group& group() const;

  std::size_t hash() const;
  std::string to_string() const;

  // Same formula with a different predicate kind annotation (Pred only).
  Formula with_pred_kind(PredKind kind) const;

  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  friend struct detail::NodeBuilder;
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula from_node(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

using FormulaSet = std::set<Formula>;

// How a negation/conjunction pattern reads in surface syntax.
struct SurfaceView {
  enum class Shape { Core, Implies, Or } shape = Shape::Core;
  const Formula* left = nullptr;
  const Formula* right = nullptr;
};
SurfaceView surface_view(const Formula& f);

// Replaces every free occurrence of variable `var` with the constant `value`.
Formula substitute(const Formula& phi, const Symbol& var, const Symbol& value);

std::set<Symbol> free_variables(const Formula& phi);

// No quantifiers, no variables, no function applications: every predicate
// argument is a constant.
bool is_ground(const Formula& phi);

bool contains_kind(const Formula& phi, Formula::Kind kind);

// Formula length: one per predicate, connective, quantifier and modality,
// plus one per term node in predicate arguments. Implication and disjunction
// patterns count as a single connective, as they are written.
std::size_t size(const Formula& phi);
std::size_t size(const Term& t);

// Distinct subformulas (formula nodes only, terms excluded), sorted.
std::vector<Formula> subformulas(const Formula& phi);

// Every agent named by a modality anywhere in phi.
std::set<AgentId> agents_in(const Formula& phi);

// Every atom occurring anywhere in phi.
std::set<Formula> atoms_in(const Formula& phi);

// Rewrites E_G and S_G into conjunctions/disjunctions of K_i; groups are
// expanded in sorted agent order.
Formula expand_group_modalities(const Formula& phi);

Group make_group(std::vector<AgentId> agents);
std::string group_to_string(const Group& g);

}  // namespace kbl

#endif  // KBL_FORMULA_HPP
