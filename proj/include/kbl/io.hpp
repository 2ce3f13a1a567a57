// Concrete syntax for formulas, social network models and Kripke models.
//
// Formulas
//   f  ::= g '->' f | g                     (right associative, weakest)
//   g  ::= h '||' g | h
//   h  ::= u '&&' h | u
//   u  ::= '!' u | 'K[' a ']' u | M '[' a (',' a)* ']' u     M in E S C D
//        | 'forall' x ':' Sort '.' f | 'false' | 'true' | '(' f ')' | atom
//   atom ::= name | name '(' t (',' t)* ')'
//   t  ::= name | name '(' t (',' t)* ')'
// Names are runs of letters, digits and '_'. A name bound by an enclosing
// forall is a variable; any other argument name is a constant.
//
// Model files are line oriented. '#' starts a comment. A section header
// starts in column 1; its entries are indented lines.
//
//   agents: Alice Bob
//   domains:
//     Time = 1 2
//   predicates:
//     post/3
//     friend/2 connection
//     request/2 action
//   constants:
//     now = 1
//   functions:
//     next : Time -> Time
//       1 -> 2
//       2 -> 1
//   connections:
//     friend: Alice Bob, Bob Alice
//   actions:
//     request: Bob Alice
//   kb e:
//     post(Bob,pub,1)
//   kb Alice:
//     forall t:Time . post(Bob,pub,t) -> loc(Bob,pub,t)
//   policies:
//     Alice: free text
//
// Kripke files use the same layout:
//
//   agents: a b
//   states: s0 s1
//   rel a:
//     s0 -> s1
//   val s0:
//     p(a)
//   theta s0:          (optional, one formula per line)
//   characteristic:    (optional, one formula per line)
//   distinguished: s0  (optional)

#ifndef KBL_IO_HPP
#define KBL_IO_HPP

#include <string>
#include <string_view>

#include "kbl/deduction.hpp"
#include "kbl/formula.hpp"
#include "kbl/kripke.hpp"
#include "kbl/snm.hpp"

namespace kbl {

// Positions in errors are reported relative to (line, column).
Formula parse_formula(std::string_view text, int line = 1, int column = 1);

struct ModelParseOptions {
  // Reject models for which Snm::validate reports problems.
  bool validate = true;
  ProverOptions prover;
};

Snm parse_snm(std::string_view text, const ModelParseOptions& opts = {});
std::string print_snm(const Snm& snm);

KripkeModel parse_kripke(std::string_view text);
std::string print_kripke(const KripkeModel& m);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace kbl

#endif  // KBL_IO_HPP
