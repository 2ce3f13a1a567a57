#include "kbl/vocabulary.hpp"

#include <algorithm>
#include <functional>

#include "kbl/errors.hpp"

namespace kbl {

bool Vocabulary::is_element(const Symbol& name) const {
  for (const auto& [sort, elems] : domains)
    if (std::find(elems.begin(), elems.end(), name) != elems.end()) return true;
  return false;
}

const std::vector<Symbol>& Vocabulary::domain(const Symbol& sort) const {
  auto it = domains.find(sort);
  if (it == domains.end()) throw ConfigError("unknown sort '" + sort + "'");
  return it->second;
}

std::optional<PredicateDecl> Vocabulary::predicate(const Symbol& name) const {
  auto it = predicates.find(name);
  if (it == predicates.end()) return std::nullopt;
  return it->second;
}

namespace {

void product(const std::vector<const std::vector<Symbol>*>& sorts, std::size_t i,
             std::vector<Symbol>& cur, const std::function<void(const std::vector<Symbol>&)>& fn) {
  if (i == sorts.size()) {
    fn(cur);
    return;
  }
  for (const auto& e : *sorts[i]) {
    cur.push_back(e);
    product(sorts, i + 1, cur, fn);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::string> Vocabulary::diagnostics() const {
  std::vector<std::string> out;
  for (const auto& [sort, elems] : domains)
    if (elems.empty()) out.push_back("domain '" + sort + "' is empty");
  for (const auto& [name, elem] : constants) {
    if (!is_element(elem))
      out.push_back("constant '" + name + "' is bound to '" + elem + "', which is in no domain");
    if (is_element(name)) out.push_back("constant '" + name + "' shadows a domain element");
  }
  for (const auto& [name, fn] : functions) {
    std::vector<const std::vector<Symbol>*> sorts;
    bool known = true;
    for (const auto& s : fn.arg_sorts) {
      auto it = domains.find(s);
      if (it == domains.end()) {
        out.push_back("function '" + name + "' uses unknown sort '" + s + "'");
        known = false;
        break;
      }
      sorts.push_back(&it->second);
    }
    if (!known) continue;
    if (!domains.count(fn.result_sort))
      out.push_back("function '" + name + "' has unknown result sort '" + fn.result_sort + "'");
    std::vector<Symbol> cur;
    product(sorts, 0, cur, [&](const std::vector<Symbol>& tuple) {
      if (!fn.table.count(tuple)) {
        std::string args;
        for (std::size_t i = 0; i < tuple.size(); ++i) args += (i ? "," : "") + tuple[i];
        out.push_back("function '" + name + "' is not total: no value for (" + args + ")");
      }
    });
  }
  return out;
}

Symbol evaluate(const Term& t, const Vocabulary& vocab) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      throw EvaluationError("free variable '" + t.name() + "' cannot be evaluated");
    case Term::Kind::Constant: {
      if (auto it = vocab.constants.find(t.name()); it != vocab.constants.end()) return it->second;
      if (vocab.is_element(t.name())) return t.name();
      throw VocabularyError("undeclared symbol '" + t.name() + "'");
    }
    case Term::Kind::Function: {
      auto it = vocab.functions.find(t.name());
      if (it == vocab.functions.end())
        throw VocabularyError("undeclared function '" + t.name() + "'");
      if (it->second.arity() != t.args().size())
        throw VocabularyError("function '" + t.name() + "' expects " +
                              std::to_string(it->second.arity()) + " arguments");
      std::vector<Symbol> args;
      for (const auto& a : t.args()) args.push_back(evaluate(a, vocab));
      auto row = it->second.table.find(args);
      if (row == it->second.table.end()) {
        std::string s;
        for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + args[i];
        throw EvaluationError("function '" + t.name() + "' has no value for (" + s + ")");
      }
      return row->second;
    }
  }
  throw InternalError("unreachable term kind");
}

namespace {

Formula expand_quantifiers(const Formula& phi, const Vocabulary& vocab) {
  switch (phi.kind()) {
    case Formula::Kind::Pred:
    case Formula::Kind::False: return phi;
    case Formula::Kind::Forall: {
      const Formula body = expand_quantifiers(phi.body(), vocab);
      std::vector<Formula> parts;
      for (const auto& v : vocab.domain(phi.sort())) parts.push_back(substitute(body, phi.var(), v));
      return Formula::conjoin(parts);
    }
    case Formula::Kind::Not: return Formula::negation(expand_quantifiers(phi.body(), vocab));
    case Formula::Kind::And:
      return Formula::conjunction(expand_quantifiers(phi.left(), vocab),
                                  expand_quantifiers(phi.right(), vocab));
    case Formula::Kind::Knows: return Formula::knows(phi.agent(), expand_quantifiers(phi.body(), vocab));
    case Formula::Kind::Everyone: return Formula::everyone(phi.group(), expand_quantifiers(phi.body(), vocab));
    case Formula::Kind::Someone: return Formula::someone(phi.group(), expand_quantifiers(phi.body(), vocab));
    case Formula::Kind::Common: return Formula::common(phi.group(), expand_quantifiers(phi.body(), vocab));
    case Formula::Kind::Distributed:
      return Formula::distributed(phi.group(), expand_quantifiers(phi.body(), vocab));
  }
  return phi;
}

Formula evaluate_atoms(const Formula& phi, const Vocabulary& vocab) {
  switch (phi.kind()) {
    case Formula::Kind::Pred: {
      auto decl = vocab.predicate(phi.name());
      if (!decl) throw VocabularyError("undeclared predicate '" + phi.name() + "'");
      if (decl->arity != phi.args().size())
        throw VocabularyError("predicate '" + phi.name() + "' expects " +
                              std::to_string(decl->arity) + " arguments, got " +
                              std::to_string(phi.args().size()));
      std::vector<Term> args;
      args.reserve(phi.args().size());
      for (const auto& a : phi.args()) args.push_back(Term::constant(evaluate(a, vocab)));
      return Formula::pred(phi.name(), std::move(args), decl->kind);
    }
    case Formula::Kind::False: return phi;
    case Formula::Kind::Not: return Formula::negation(evaluate_atoms(phi.body(), vocab));
    case Formula::Kind::And:
      return Formula::conjunction(evaluate_atoms(phi.left(), vocab), evaluate_atoms(phi.right(), vocab));
    case Formula::Kind::Knows: return Formula::knows(phi.agent(), evaluate_atoms(phi.body(), vocab));
    case Formula::Kind::Everyone: return Formula::everyone(phi.group(), evaluate_atoms(phi.body(), vocab));
    case Formula::Kind::Someone: return Formula::someone(phi.group(), evaluate_atoms(phi.body(), vocab));
    case Formula::Kind::Common: return Formula::common(phi.group(), evaluate_atoms(phi.body(), vocab));
    case Formula::Kind::Distributed:
      return Formula::distributed(phi.group(), evaluate_atoms(phi.body(), vocab));
    case Formula::Kind::Forall: break;
  }
  throw InternalError("quantifier survived expansion");
}

}  // namespace

Formula ground(const Formula& phi, const Vocabulary& vocab) {
  if (auto fv = free_variables(phi); !fv.empty())
    throw ArgumentError("cannot ground a formula with free variable '" + *fv.begin() + "'");
  return evaluate_atoms(expand_quantifiers(phi, vocab), vocab);
}

}  // namespace kbl
