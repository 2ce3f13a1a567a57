#ifndef KBL_KNOWLEDGE_BASE_HPP
#define KBL_KNOWLEDGE_BASE_HPP

#include "kbl/formula.hpp"

namespace kbl {

// The explicit knowledge of one agent. Values are immutable.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  explicit KnowledgeBase(AgentId owner, FormulaSet formulas = {})
      : owner_(std::move(owner)), formulas_(std::move(formulas)) {}

  const AgentId& owner() const { return owner_; }
  const FormulaSet& formulas() const { return formulas_; }
  bool empty() const { return formulas_.empty(); }
  std::size_t size() const { return formulas_.size(); }
  bool contains(const Formula& f) const { return formulas_.count(f) > 0; }

  KnowledgeBase with(const Formula& f) const {
    KnowledgeBase copy = *this;
    copy.formulas_.insert(f);
    return copy;
  }

  friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;

 private:
  AgentId owner_;
  FormulaSet formulas_;
};

}  // namespace kbl

#endif  // KBL_KNOWLEDGE_BASE_HPP
