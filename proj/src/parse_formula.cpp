#include <cctype>
#include <vector>

#include "kbl/errors.hpp"
#include "kbl/io.hpp"

namespace kbl {

namespace {

enum class Tok { Name, LParen, RParen, LBracket, RBracket, Comma, Bang, And, Or, Arrow, Colon, Dot, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view s, int line, int column) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto emit = [&](Tok k, std::string text, int col) { out.push_back({k, std::move(text), line, col}); };
  while (i < s.size()) {
    const char c = s[i];
    const int col = column;
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++column;
      continue;
    }
    if (name_char(c)) {
      std::size_t j = i;
      while (j < s.size() && name_char(s[j])) ++j;
      emit(Tok::Name, std::string(s.substr(i, j - i)), col);
      column += static_cast<int>(j - i);
      i = j;
      continue;
    }
    auto two = [&](char a, char b) { return c == a && i + 1 < s.size() && s[i + 1] == b; };
    if (two('&', '&')) {
      emit(Tok::And, "&&", col);
    } else if (two('|', '|')) {
      emit(Tok::Or, "||", col);
    } else if (two('-', '>')) {
      emit(Tok::Arrow, "->", col);
    } else {
      Tok k;
      switch (c) {
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '[': k = Tok::LBracket; break;
        case ']': k = Tok::RBracket; break;
        case ',': k = Tok::Comma; break;
        case '!': k = Tok::Bang; break;
        case ':': k = Tok::Colon; break;
        case '.': k = Tok::Dot; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      }
      emit(k, std::string(1, c), col);
      ++i;
      ++column;
      continue;
    }
    i += 2;
    column += 2;
  }
  out.push_back({Tok::End, "end of input", line, column});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse() {
    Formula f = implication();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  Token expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what + ", found '" + peek().text + "'");
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }

  Formula implication() {
    Formula left = disjunction();
    if (accept(Tok::Arrow)) return Formula::implies(left, implication());
    return left;
  }

  Formula disjunction() {
    Formula left = conjunction();
    if (accept(Tok::Or)) return Formula::disjunction(left, disjunction());
    return left;
  }

  Formula conjunction() {
    Formula left = unary();
    if (accept(Tok::And)) return Formula::conjunction(left, conjunction());
    return left;
  }

  Group group() {
    std::vector<AgentId> members;
    expect(Tok::LBracket, "'['");
    do {
      members.push_back(expect(Tok::Name, "agent name").text);
    } while (accept(Tok::Comma));
    expect(Tok::RBracket, "']'");
    return make_group(std::move(members));
  }

  Formula unary() {
    const Token& t = peek();
    if (accept(Tok::Bang)) return Formula::negation(unary());
    if (accept(Tok::LParen)) {
      Formula f = implication();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind != Tok::Name) fail("expected a formula, found '" + t.text + "'");
    const std::string word = t.text;
    if (peek(1).kind == Tok::LBracket && word.size() == 1 && std::string("KESCD").find(word[0]) != std::string::npos) {
      next();
      const Group g = group();
      Formula body = unary();
      switch (word[0]) {
        case 'K':
          if (g.size() != 1) fail("K takes exactly one agent");
          return Formula::knows(g.front(), body);
        case 'E': return Formula::everyone(g, body);
        case 'S': return Formula::someone(g, body);
        case 'C': return Formula::common(g, body);
        default: return Formula::distributed(g, body);
      }
    }
    if (word == "forall") {
      next();
      const std::string var = expect(Tok::Name, "variable name").text;
      expect(Tok::Colon, "':'");
      const std::string sort = expect(Tok::Name, "sort name").text;
      expect(Tok::Dot, "'.'");
      bound_.push_back(var);
      Formula body = implication();
      bound_.pop_back();
      return Formula::forall(var, sort, body);
    }
    if (word == "false") {
      next();
      return Formula::falsum();
    }
    if (word == "true") {
      next();
      return Formula::truth();
    }
    next();
    return Formula::pred(word, arguments());
  }

  std::vector<Term> arguments() {
    std::vector<Term> args;
    if (!accept(Tok::LParen)) return args;
    do {
      args.push_back(term());
    } while (accept(Tok::Comma));
    expect(Tok::RParen, "')'");
    return args;
  }

  Term term() {
    const std::string name = expect(Tok::Name, "term").text;
    if (peek().kind == Tok::LParen) return Term::function(name, arguments());
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (*it == name) return Term::variable(name);
    return Term::constant(name);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

}  // namespace

Formula parse_formula(std::string_view text, int line, int column) {
  return Parser(lex(text, line, column)).parse();
}

}  // namespace kbl
