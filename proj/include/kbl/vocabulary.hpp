#ifndef KBL_VOCABULARY_HPP
#define KBL_VOCABULARY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kbl/formula.hpp"

namespace kbl {

struct PredicateDecl {
  std::size_t arity = 0;
  PredKind kind = PredKind::Regular;

  friend bool operator==(const PredicateDecl&, const PredicateDecl&) = default;
};

// A function interpreted by a finite table that must be total over the
// product of its argument sorts.
struct FunctionDecl {
  std::vector<Symbol> arg_sorts;
  Symbol result_sort;
  std::map<std::vector<Symbol>, Symbol> table;

  std::size_t arity() const { return arg_sorts.size(); }
  friend bool operator==(const FunctionDecl&, const FunctionDecl&) = default;
};

// Symbols of the relational structure plus the finite domains they range
// over. Domain elements double as ground names in formulas.
class Vocabulary {
 public:
  std::map<Symbol, PredicateDecl> predicates;
  std::map<Symbol, FunctionDecl> functions;
  std::map<Symbol, Symbol> constants;              // name -> element
  std::map<Symbol, std::vector<Symbol>> domains;   // sort -> elements

  bool is_element(const Symbol& name) const;
  const std::vector<Symbol>& domain(const Symbol& sort) const;  // ConfigError if unknown
  std::optional<PredicateDecl> predicate(const Symbol& name) const;

  // Problems with the declarations themselves: empty domains, partial
  // function tables, constants bound outside every domain.
  std::vector<std::string> diagnostics() const;

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;
};

// Reduces a ground term to a domain element.
Symbol evaluate(const Term& t, const Vocabulary& vocab);

// Expands every universal quantifier into the conjunction of its instances
// over the bound variable's domain (innermost first), then evaluates every
// predicate argument to a domain element and stamps predicate kinds from the
// vocabulary. Expects a closed formula.
Formula ground(const Formula& phi, const Vocabulary& vocab);

}  // namespace kbl

#endif  // KBL_VOCABULARY_HPP
