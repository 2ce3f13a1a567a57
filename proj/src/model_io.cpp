#include <fstream>
#include <sstream>

#include "kbl/errors.hpp"
#include "kbl/io.hpp"

namespace kbl {

namespace {

struct Line {
  int number;
  int indent;  // column of the first non-blank character, 1-based
  std::string text;  // trimmed, comment removed
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    if (auto h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
    const std::string t = trim(raw);
    if (!t.empty()) {
      const auto first = raw.find_first_not_of(" \t");
      out.push_back({number, static_cast<int>(first) + 1, t});
    }
    start = end + 1;
  }
  return out;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

[[noreturn]] void fail(const Line& l, const std::string& msg) { throw ParseError(msg, l.number, l.indent); }

// "head: rest" with head a single token or "kb NAME" style pair.
struct Header {
  std::vector<std::string> head;
  std::string rest;
};

Header split_header(const Line& l) {
  const auto colon = l.text.find(':');
  if (colon == std::string::npos) fail(l, "expected a section header ending in ':'");
  return {words(l.text.substr(0, colon)), trim(l.text.substr(colon + 1))};
}

std::vector<std::pair<std::string, std::string>> parse_pairs(const Line& l, const std::string& list,
                                                             const char* sep) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t start = 0;
  while (start < list.size()) {
    auto comma = list.find(',', start);
    if (comma == std::string::npos) comma = list.size();
    std::string item = trim(std::string_view(list).substr(start, comma - start));
    if (sep) {
      const auto arrow = item.find(sep);
      if (arrow == std::string::npos) fail(l, "expected 'from " + std::string(sep) + " to' in '" + item + "'");
      item = item.substr(0, arrow) + " " + item.substr(arrow + std::string(sep).size());
    }
    const auto w = words(item);
    if (w.size() != 2) fail(l, "expected a pair, found '" + item + "'");
    out.emplace_back(w[0], w[1]);
    start = comma + 1;
  }
  return out;
}

PredKind parse_kind(const Line& l, const std::string& w) {
  if (w == "connection") return PredKind::Connection;
  if (w == "action") return PredKind::Action;
  if (w == "regular") return PredKind::Regular;
  fail(l, "unknown predicate kind '" + w + "'");
}

}  // namespace

Snm parse_snm(std::string_view text, const ModelParseOptions& opts) {
  SnmBuilder b;
  std::string section;
  AgentId kb_owner;
  Symbol current_function;
  std::vector<std::pair<Line, std::pair<AgentId, Formula>>> facts;

  for (const auto& l : split_lines(text)) {
    if (l.indent == 1) {
      const Header h = split_header(l);
      if (h.head.size() == 1 && h.head[0] == "agents") {
        for (const auto& a : words(h.rest)) b.agent(a);
        section.clear();
      } else if (h.head.size() == 2 && h.head[0] == "kb") {
        section = "kb";
        kb_owner = h.head[1];
        if (!h.rest.empty()) fail(l, "formulas of a knowledge base go on indented lines");
      } else if (h.head.size() == 1 &&
                 (h.head[0] == "domains" || h.head[0] == "predicates" || h.head[0] == "constants" ||
                  h.head[0] == "functions" || h.head[0] == "connections" || h.head[0] == "actions" ||
                  h.head[0] == "policies")) {
        section = h.head[0];
        if (!h.rest.empty()) fail(l, "entries of '" + section + "' go on indented lines");
      } else {
        fail(l, "unknown section '" + l.text + "'");
      }
      continue;
    }
    if (section.empty()) fail(l, "indented line outside a section");
    if (section == "domains" || section == "constants") {
      const auto eq = l.text.find('=');
      if (eq == std::string::npos) fail(l, "expected 'name = ...'");
      const auto lhs = words(l.text.substr(0, eq));
      const auto rhs = words(l.text.substr(eq + 1));
      if (lhs.size() != 1) fail(l, "expected a single name before '='");
      if (section == "domains") {
        b.domain(lhs[0], rhs);
      } else {
        if (rhs.size() != 1) fail(l, "a constant denotes exactly one element");
        b.constant(lhs[0], rhs[0]);
      }
    } else if (section == "predicates") {
      const auto w = words(l.text);
      const auto slash = w[0].find('/');
      if (slash == std::string::npos || w.size() > 2) fail(l, "expected 'name/arity [connection|action]'");
      const std::string name = w[0].substr(0, slash);
      if (is_reserved_name(name)) fail(l, "predicate name '" + name + "' uses a reserved prefix (co_, ac_)");
      std::size_t arity = 0;
      try {
        arity = std::stoul(w[0].substr(slash + 1));
      } catch (const std::exception&) {
        fail(l, "bad arity in '" + w[0] + "'");
      }
      b.predicate(name, arity, w.size() == 2 ? parse_kind(l, w[1]) : PredKind::Regular);
    } else if (section == "functions") {
      if (const auto colon = l.text.find(':'); colon != std::string::npos) {
        const auto name = words(l.text.substr(0, colon));
        const std::string sig = l.text.substr(colon + 1);
        const auto arrow = sig.find("->");
        if (name.size() != 1 || arrow == std::string::npos) fail(l, "expected 'f : S1 x S2 -> R'");
        FunctionDecl decl;
        for (const auto& w : words(sig.substr(0, arrow)))
          if (w != "x") decl.arg_sorts.push_back(w);
        const auto result = words(sig.substr(arrow + 2));
        if (result.size() != 1 || decl.arg_sorts.empty()) fail(l, "expected 'f : S1 x S2 -> R'");
        decl.result_sort = result[0];
        current_function = name[0];
        b.vocab().functions[current_function] = decl;
      } else {
        if (current_function.empty()) fail(l, "table row before any function signature");
        const auto arrow = l.text.find("->");
        if (arrow == std::string::npos) fail(l, "expected 'a b -> c'");
        auto& decl = b.vocab().functions[current_function];
        const auto args = words(l.text.substr(0, arrow));
        const auto result = words(l.text.substr(arrow + 2));
        if (args.size() != decl.arity() || result.size() != 1)
          fail(l, "table row does not match the signature of '" + current_function + "'");
        decl.table[args] = result[0];
      }
    } else if (section == "connections" || section == "actions") {
      const auto colon = l.text.find(':');
      if (colon == std::string::npos) fail(l, "expected 'name: i j, k l'");
      const auto name = words(l.text.substr(0, colon));
      if (name.size() != 1) fail(l, "expected a single relation name");
      b.predicate(name[0], 2, section == "connections" ? PredKind::Connection : PredKind::Action);
      for (const auto& [i, j] : parse_pairs(l, trim(l.text.substr(colon + 1)), nullptr)) {
        if (section == "connections")
          b.connection(name[0], i, j);
        else
          b.action(name[0], i, j);
      }
    } else if (section == "kb") {
      facts.push_back({l, {kb_owner, parse_formula(l.text, l.number, l.indent)}});
    } else if (section == "policies") {
      const auto colon = l.text.find(':');
      if (colon == std::string::npos) fail(l, "expected 'agent: text'");
      const auto name = words(l.text.substr(0, colon));
      if (name.size() != 1) fail(l, "expected a single agent name");
      b.policy(name[0], trim(l.text.substr(colon + 1)));
    }
  }

  // Ground each fact here so that errors carry the line they came from.
  Vocabulary vocab = b.build().vocab();
  for (const auto& [line, fact] : facts) {
    const auto& [owner, phi] = fact;
    for (const auto& a : atoms_in(phi))
      if (is_reserved_name(a.name())) fail(line, "predicate name '" + a.name() + "' uses a reserved prefix");
    if (free_variables(phi).empty()) {
      try {
        ground(phi, vocab);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        fail(line, e.what());
      }
    }
    b.know(owner, phi);
  }
  Snm snm = b.build();
  if (opts.validate) {
    const auto problems = snm.validate(opts.prover);
    if (!problems.empty()) {
      std::string msg = "invalid model:";
      for (const auto& p : problems) msg += "\n  " + p;
      throw ConfigError(msg);
    }
  }
  return snm;
}

std::string print_snm(const Snm& snm) {
  std::ostringstream out;
  out << "agents:";
  for (const auto& a : snm.agents()) out << ' ' << a;
  out << '\n';
  const auto& v = snm.vocab();

  std::vector<std::pair<Symbol, const std::vector<Symbol>*>> domains;
  for (const auto& [sort, elems] : v.domains) {
    if (sort == kAgentSort && std::set<Symbol>(elems.begin(), elems.end()) == snm.agents()) continue;
    domains.emplace_back(sort, &elems);
  }
  if (!domains.empty()) {
    out << "domains:\n";
    for (const auto& [sort, elems] : domains) {
      out << "  " << sort << " =";
      for (const auto& e : *elems) out << ' ' << e;
      out << '\n';
    }
  }
  bool any_regular = false;
  for (const auto& [name, decl] : v.predicates) any_regular |= decl.kind == PredKind::Regular;
  if (any_regular) {
    out << "predicates:\n";
    for (const auto& [name, decl] : v.predicates)
      if (decl.kind == PredKind::Regular) out << "  " << name << '/' << decl.arity << '\n';
  }
  if (!v.constants.empty()) {
    out << "constants:\n";
    for (const auto& [name, elem] : v.constants) out << "  " << name << " = " << elem << '\n';
  }
  if (!v.functions.empty()) {
    out << "functions:\n";
    for (const auto& [name, fn] : v.functions) {
      out << "  " << name << " :";
      for (std::size_t i = 0; i < fn.arg_sorts.size(); ++i) out << (i ? " x " : " ") << fn.arg_sorts[i];
      out << " -> " << fn.result_sort << '\n';
      for (const auto& [args, result] : fn.table) {
        out << "   ";
        for (const auto& a : args) out << ' ' << a;
        out << " -> " << result << '\n';
      }
    }
  }
  auto relations = [&](const char* header, const std::map<Symbol, AgentRelation>& rels) {
    if (rels.empty()) return;
    out << header << ":\n";
    for (const auto& [name, pairs] : rels) {
      out << "  " << name << ':';
      bool first = true;
      for (const auto& [i, j] : pairs) {
        out << (first ? " " : ", ") << i << ' ' << j;
        first = false;
      }
      out << '\n';
    }
  };
  relations("connections", snm.connections());
  relations("actions", snm.actions());
  for (const auto& [owner, kb] : snm.kbs()) {
    if (kb.empty()) continue;
    out << "kb " << owner << ":\n";
    for (const auto& f : kb.formulas()) out << "  " << f.to_string() << '\n';
  }
  if (!snm.policies().empty()) {
    out << "policies:\n";
    for (const auto& [a, text] : snm.policies()) out << "  " << a << ": " << text << '\n';
  }
  return out.str();
}

KripkeModel parse_kripke(std::string_view text) {
  KripkeModel m;
  std::string section;
  std::string target;
  std::vector<std::pair<Line, std::string>> pending_states;
  std::map<std::string, FormulaSet> thetas;
  std::vector<Formula> characteristic;
  bool has_characteristic = false;
  std::optional<std::pair<Line, std::string>> distinguished;

  auto state = [&](const Line& l, const std::string& name) {
    auto s = m.find_state(name);
    if (!s) fail(l, "undeclared state '" + name + "'");
    return *s;
  };

  for (const auto& l : split_lines(text)) {
    if (l.indent == 1) {
      const Header h = split_header(l);
      section.clear();
      if (h.head.size() == 1 && h.head[0] == "agents") {
        for (const auto& a : words(h.rest)) m.declare_agent(a);
      } else if (h.head.size() == 1 && h.head[0] == "states") {
        for (const auto& s : words(h.rest)) {
          if (m.find_state(s)) fail(l, "duplicate state '" + s + "'");
          m.add_state(s);
        }
      } else if (h.head.size() == 1 && h.head[0] == "distinguished") {
        distinguished = {l, h.rest};
      } else if (h.head.size() == 1 && h.head[0] == "characteristic") {
        section = "characteristic";
        has_characteristic = true;
      } else if (h.head.size() == 2 && (h.head[0] == "rel" || h.head[0] == "val" || h.head[0] == "theta")) {
        section = h.head[0];
        target = h.head[1];
        if (section == "rel") {
          m.declare_agent(target);
        } else {
          state(l, target);
          if (section == "theta") thetas[target];
        }
        if (!h.rest.empty()) fail(l, "entries go on indented lines");
      } else {
        fail(l, "unknown section '" + l.text + "'");
      }
      continue;
    }
    if (section.empty()) fail(l, "indented line outside a section");
    if (section == "rel") {
      for (const auto& [from, to] : parse_pairs(l, l.text, "->")) m.add_edge(target, state(l, from), state(l, to));
    } else {
      const Formula f = parse_formula(l.text, l.number, l.indent);
      if (section == "val") {
        if (!f.is_atom() || !is_ground(f)) fail(l, "valuations list ground atoms only");
        m.set_true(state(l, target), f);
      } else if (section == "theta") {
        thetas[target].insert(f);
      } else {
        characteristic.push_back(f);
      }
    }
  }
  if (!thetas.empty()) {
    std::vector<FormulaSet> all(m.num_states());
    for (auto& [name, set] : thetas) all[*m.find_state(name)] = std::move(set);
    m.thetas = std::move(all);
  }
  if (has_characteristic) m.characteristic = std::move(characteristic);
  if (distinguished) m.distinguished = state(distinguished->first, distinguished->second);
  return m;
}

std::string print_kripke(const KripkeModel& m) {
  std::ostringstream out;
  out << "agents:";
  for (const auto& a : m.agents()) out << ' ' << a;
  out << "\nstates:";
  for (StateId s = 0; s < m.num_states(); ++s) out << ' ' << m.state_name(s);
  out << '\n';
  for (const auto& a : m.agents()) {
    const auto& r = m.relation(a);
    if (r.empty()) continue;
    out << "rel " << a << ":\n";
    for (const auto& [x, y] : r) out << "  " << m.state_name(x) << " -> " << m.state_name(y) << '\n';
  }
  for (StateId s = 0; s < m.num_states(); ++s) {
    if (m.valuation(s).empty()) continue;
    out << "val " << m.state_name(s) << ":\n";
    for (const auto& f : m.valuation(s)) out << "  " << f.to_string() << '\n';
  }
  if (m.thetas)
    for (StateId s = 0; s < m.num_states(); ++s) {
      out << "theta " << m.state_name(s) << ":\n";
      for (const auto& f : (*m.thetas)[s]) out << "  " << f.to_string() << '\n';
    }
  if (m.characteristic) {
    out << "characteristic:\n";
    for (const auto& f : *m.characteristic) out << "  " << f.to_string() << '\n';
  }
  if (m.distinguished) out << "distinguished: " << m.state_name(*m.distinguished) << '\n';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write '" + path + "'");
  out << content;
}

}  // namespace kbl
