#include "doctest.h"
#include "kbl/errors.hpp"
#include "kbl/generate.hpp"
#include "kbl/io.hpp"
#include "kbl/translate.hpp"
#include "support/fixtures.hpp"

using namespace kbl;
using fixtures::F;

namespace {

void expect_parse_error(const std::string& text, int line, int column) {
  try {
    parse_formula(text);
    FAIL("accepted: " << text);
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == column);
  }
}

void expect_model_error(const std::string& text, int line) {
  try {
    parse_snm(text);
    FAIL("accepted model");
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
  }
}

}  // namespace

TEST_CASE("formula syntax") {
  CHECK(F("p -> q -> r") == F("p -> (q -> r)"));
  CHECK(F("p || q && r") == F("p || (q && r)"));
  CHECK(F("!K[a] p && q") == F("(!(K[a] p)) && q"));
  CHECK(F("forall x:S . p(x) -> q(x)") == F("forall x:S . (p(x) -> q(x))"));
  CHECK(F("true") == Formula::truth());
  CHECK(F("E[b,a] p") == F("E[a,b] p"));
  CHECK(F("q(f(c), d)").to_string() == "q(f(c),d)");
  CHECK(F("  K[a]   ( p )  ") == F("K[a] p"));
}

TEST_CASE("formula errors carry positions") {
  expect_parse_error("p(a) &&", 1, 8);
  expect_parse_error("K[a p", 1, 5);
  expect_parse_error("p(a) q", 1, 6);
  expect_parse_error("forall x . p(x)", 1, 10);
  expect_parse_error("p(a,)", 1, 5);
  CHECK_THROWS_AS(parse_formula("p &&", 7, 3), ParseError);
  try {
    parse_formula("p &&", 7, 3);
  } catch (const ParseError& e) {
    CHECK(e.line() == 7);
    CHECK(e.column() == 7);
  }
}

TEST_CASE("model errors carry line numbers") {
  expect_model_error("agents: a\npredicates:\n  p/1\nkb a:\n  p(a) &&\n", 5);
  expect_model_error("agents: a\nbogus:\n", 2);
  expect_model_error("agents: a\nkb a:\n  p\n", 3);
}

TEST_CASE("reserved prefixes are rejected") {
  expect_model_error("agents: a\npredicates:\n  co_p/1\n", 3);
  expect_model_error("agents: a\npredicates:\n  ac_p/1\n", 3);
}

TEST_CASE("invalid models are refused unless validation is off") {
  const std::string text = "agents: a\npredicates:\n  p/1\nkb a:\n  p(a)\n  !p(a)\n";
  CHECK_THROWS_AS(parse_snm(text), ConfigError);
  ModelParseOptions lax;
  lax.validate = false;
  const Snm snm = parse_snm(text, lax);
  CHECK(snm.kb("a").size() == 2);
  CHECK_FALSE(snm.validate().empty());
}

TEST_CASE("running example file") {
  const Snm& snm = fixtures::fig2();
  CHECK(snm.agents() == std::set<AgentId>{"Alice", "Bob", "Charlie"});
  CHECK(snm.kb("Alice").size() == 2);
  CHECK(snm.kb("Alice").contains(F("post(Bob,pub,1) -> loc(Bob,pub,1)")));
  CHECK(snm.environment().empty());
  CHECK(parse_snm(print_snm(snm)) == snm);
}

TEST_CASE("printing generated models is a fixpoint") {
  Rng rng(61);
  for (int n = 0; n < 100; ++n) {
    const Snm snm = random_snm(rng, GeneratorParams{3, 2, 2, 2, 3, 3, 2, 2}).with_policy("a0", "public");
    const std::string text = print_snm(snm);
    INFO(text);
    const Snm back = parse_snm(text);
    CHECK(back == snm);
    CHECK(print_snm(back) == text);
  }
}

TEST_CASE("kripke files") {
  const KripkeModel& m = fixtures::fig1();
  CHECK(m.num_states() == 3);
  CHECK(parse_kripke(print_kripke(m)) == m);

  Rng rng(62);
  for (int n = 0; n < 10; ++n) {
    const Snm snm = random_snm(rng, GeneratorParams{2, 2, 1, 1, 1, 1, 1, 1});
    if (subformulas(characteristic_formula(snm, true)).size() > 18) continue;
    const KripkeModel canon = kt(snm, true);
    const KripkeModel back = parse_kripke(print_kripke(canon));
    CHECK(back == canon);
    CHECK(equal_modulo_policies(kripke_to_snm(back), snm));
  }

  CHECK_THROWS_AS(parse_kripke("agents: a\nstates: s0\nrel a:\n  s0 -> s9\n"), ParseError);
  CHECK_THROWS_AS(parse_kripke("agents: a\nstates: s0 s0\n"), Error);
}

TEST_CASE("files") {
  CHECK_THROWS_AS(read_file("/nonexistent/model.snm"), Error);
}
