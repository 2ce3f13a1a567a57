#include "oracles.hpp"

#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace oracle {

using kbl::Term;

namespace {

Term sub_term(const Term& t, const std::string& var, const std::string& value) {
  switch (t.kind()) {
    case Term::Kind::Variable: return t.name() == var ? Term::constant(value) : t;
    case Term::Kind::Constant: return t;
    case Term::Kind::Function: {
      std::vector<Term> args;
      for (const auto& a : t.args()) args.push_back(sub_term(a, var, value));
      return Term::function(t.name(), args);
    }
  }
  return t;
}

}  // namespace

Formula substitute(const Formula& phi, const std::string& var, const std::string& value) {
  using K = Formula::Kind;
  auto rec = [&](const Formula& f) { return oracle::substitute(f, var, value); };
  switch (phi.kind()) {
    case K::Pred: {
      std::vector<Term> args;
      for (const auto& a : phi.args()) args.push_back(sub_term(a, var, value));
      return Formula::pred(phi.name(), args, phi.pred_kind());
    }
    case K::False: return phi;
    case K::Not: return Formula::negation(rec(phi.body()));
    case K::And: return Formula::conjunction(rec(phi.left()), rec(phi.right()));
    case K::Forall: return phi.var() == var ? phi : Formula::forall(phi.var(), phi.sort(), rec(phi.body()));
    case K::Knows: return Formula::knows(phi.agent(), rec(phi.body()));
    case K::Everyone: return Formula::everyone(phi.group(), rec(phi.body()));
    case K::Someone: return Formula::someone(phi.group(), rec(phi.body()));
    case K::Common: return Formula::common(phi.group(), rec(phi.body()));
    case K::Distributed: return Formula::distributed(phi.group(), rec(phi.body()));
  }
  return phi;
}

std::size_t token_size(const std::string& s) {
  std::size_t count = 0;
  std::size_t i = 0;
  auto is_name = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',') {
      ++i;
    } else if (c == '!') {
      ++count;
      ++i;
    } else if ((c == '&' || c == '|') && i + 1 < s.size() && s[i + 1] == c) {
      ++count;
      i += 2;
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      ++count;
      i += 2;
    } else if (is_name(c)) {
      std::size_t j = i;
      while (j < s.size() && is_name(s[j])) ++j;
      const std::string word = s.substr(i, j - i);
      ++count;
      if (j < s.size() && s[j] == '[') {
        j = s.find(']', j) + 1;
      } else if (word == "forall") {
        j = s.find('.', j) + 1;
      }
      i = j;
    } else {
      throw std::runtime_error(std::string("token_size: unexpected character ") + c);
    }
  }
  return count;
}

namespace {

void opaque_atoms(const Formula& f, std::set<Formula>& out) {
  switch (f.kind()) {
    case Formula::Kind::Not: opaque_atoms(f.body(), out); return;
    case Formula::Kind::And:
      opaque_atoms(f.left(), out);
      opaque_atoms(f.right(), out);
      return;
    case Formula::Kind::False: return;
    default: out.insert(f);
  }
}

bool truth(const Formula& f, const std::map<Formula, bool>& v) {
  switch (f.kind()) {
    case Formula::Kind::Not: return !truth(f.body(), v);
    case Formula::Kind::And: return truth(f.left(), v) && truth(f.right(), v);
    case Formula::Kind::False: return false;
    default: return v.at(f);
  }
}

}  // namespace

bool truth_table_entails(const std::vector<Formula>& premises, const Formula& goal) {
  std::set<Formula> atoms;
  for (const auto& p : premises) opaque_atoms(p, atoms);
  opaque_atoms(goal, atoms);
  const std::vector<Formula> list(atoms.begin(), atoms.end());
  if (list.size() > 20) throw std::runtime_error("truth table too large");
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << list.size()); ++bits) {
    std::map<Formula, bool> v;
    for (std::size_t i = 0; i < list.size(); ++i) v[list[i]] = (bits >> i) & 1;
    bool all = true;
    for (const auto& p : premises) all = all && truth(p, v);
    if (all && !truth(goal, v)) return false;
  }
  return true;
}

std::vector<Formula> self_aware(const kbl::KnowledgeBase& kb) {
  std::vector<Formula> out;
  for (const auto& f : kb.formulas()) {
    out.push_back(f);
    out.push_back(Formula::knows(kb.owner(), f));
  }
  return out;
}

const std::vector<unsigned>& serial_transitive_relations(std::size_t n) {
  static std::map<std::size_t, std::vector<unsigned>> cache;
  auto& out = cache[n];
  if (!out.empty() || n == 0) return out;
  auto edge = [n](unsigned m, std::size_t i, std::size_t j) { return (m >> (i * n + j)) & 1u; };
  for (unsigned m = 0; m < (1u << (n * n)); ++m) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      bool any = false;
      for (std::size_t j = 0; j < n; ++j) any = any || edge(m, i, j);
      ok = any;
    }
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        for (std::size_t l = 0; l < n && ok; ++l)
          if (edge(m, i, j) && edge(m, j, l) && !edge(m, i, l)) ok = false;
    if (ok) out.push_back(m);
  }
  return out;
}

namespace {

enum class Op { Atom, Not, And, Box, False };

struct Node {
  Op op;
  int a = -1;
  int b = -1;
  std::size_t index = 0;  // atom or agent index
};

class Dag {
 public:
  std::vector<Node> nodes;
  std::map<Formula, std::size_t> atoms;
  std::map<std::string, std::size_t> agents;

  int add(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::Pred: return push({Op::Atom, -1, -1, index_of(atoms, f)});
      case K::False: return push({Op::False});
      case K::Not: return push({Op::Not, add(f.body())});
      case K::And: {
        const int l = add(f.left());
        const int r = add(f.right());
        return push({Op::And, l, r});
      }
      case K::Knows: return box(f.agent(), add(f.body()));
      case K::Everyone: {
        const int body = add(f.body());
        int acc = -1;
        for (const auto& a : f.group()) acc = acc < 0 ? box(a, body) : push({Op::And, acc, box(a, body)});
        return acc;
      }
      case K::Someone: {
        const int body = add(f.body());
        int acc = -1;
        for (const auto& a : f.group()) {
          const int neg = push({Op::Not, box(a, body)});
          acc = acc < 0 ? neg : push({Op::And, acc, neg});
        }
        return push({Op::Not, acc});
      }
      default: throw std::runtime_error("small-model oracle: unsupported formula " + f.to_string());
    }
  }

 private:
  template <typename Key>
  static std::size_t index_of(std::map<Key, std::size_t>& m, const Key& k) {
    auto it = m.find(k);
    if (it != m.end()) return it->second;
    const std::size_t i = m.size();
    m.emplace(k, i);
    return i;
  }
  int box(const std::string& agent, int body) { return push({Op::Box, body, -1, index_of(agents, agent)}); }
  int push(Node n) {
    nodes.push_back(n);
    return static_cast<int>(nodes.size()) - 1;
  }
};

using Bits = std::vector<std::uint64_t>;

}  // namespace

bool small_countermodel_exists(const std::vector<Formula>& premises, const Formula& goal, std::size_t n,
                               SmallModelStats* stats) {
  Dag dag;
  std::vector<int> prem;
  for (const auto& p : premises) prem.push_back(dag.add(p));
  const int g = dag.add(goal);
  const std::size_t k = dag.atoms.size();
  if (n * k > 16) throw std::runtime_error("small-model oracle: too many atoms");
  const std::uint64_t V = std::uint64_t{1} << (n * k);
  const std::size_t W = static_cast<std::size_t>((V + 63) / 64);
  const std::uint64_t tail = V % 64 == 0 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (V % 64)) - 1);

  // atom_bits[w*k + p]: valuations in which atom p holds at world w.
  std::vector<Bits> atom_bits(n * k, Bits(W, 0));
  for (std::size_t b = 0; b < n * k; ++b)
    for (std::uint64_t v = 0; v < V; ++v)
      if ((v >> b) & 1) atom_bits[b][v / 64] |= std::uint64_t{1} << (v % 64);

  const auto& rels = serial_transitive_relations(n);
  const std::size_t agents = dag.agents.size();
  std::vector<std::size_t> choice(agents, 0);
  std::vector<std::vector<Bits>> val(dag.nodes.size(), std::vector<Bits>(n, Bits(W)));
  const Bits ones(W, ~std::uint64_t{0});

  while (true) {
    if (stats) ++stats->frames;
    for (std::size_t x = 0; x < dag.nodes.size(); ++x) {
      const Node& nd = dag.nodes[x];
      for (std::size_t w = 0; w < n; ++w) {
        Bits& out = val[x][w];
        switch (nd.op) {
          case Op::Atom: out = atom_bits[w * k + nd.index]; break;
          case Op::False: std::fill(out.begin(), out.end(), 0); break;
          case Op::Not:
            for (std::size_t i = 0; i < W; ++i) out[i] = ~val[nd.a][w][i];
            break;
          case Op::And:
            for (std::size_t i = 0; i < W; ++i) out[i] = val[nd.a][w][i] & val[nd.b][w][i];
            break;
          case Op::Box: {
            out = ones;
            const unsigned rel = rels[choice[nd.index]];
            for (std::size_t t = 0; t < n; ++t)
              if ((rel >> (w * n + t)) & 1u)
                for (std::size_t i = 0; i < W; ++i) out[i] &= val[nd.a][t][i];
            break;
          }
        }
      }
    }
    Bits root(W);
    for (std::size_t i = 0; i < W; ++i) root[i] = ~val[g][0][i];
    for (int p : prem)
      for (std::size_t i = 0; i < W; ++i) root[i] &= val[p][0][i];
    root[W - 1] &= tail;
    for (auto word : root)
      if (word) return true;

    std::size_t a = 0;
    while (a < agents && ++choice[a] == rels.size()) choice[a++] = 0;
    if (a == agents) return false;
  }
}

}  // namespace oracle
