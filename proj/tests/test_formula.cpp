#include <random>

#include "doctest.h"
#include "kbl/errors.hpp"
#include "kbl/formula.hpp"
#include "kbl/vocabulary.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace kbl;
using fixtures::F;

namespace {

// Formulas over p/1 and q/2 with variables x, y, constants c, d, a function
// f/1 and quantifiers over sort S.
Formula random_open(std::mt19937_64& rng, int depth) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  auto term = [&]() {
    static const char* names[] = {"x", "y", "c", "d"};
    const char* n = names[pick(4)];
    Term t = (n[0] == 'x' || n[0] == 'y') ? Term::variable(n) : Term::constant(n);
    return pick(4) == 0 ? Term::function("f", {t}) : t;
  };
  if (depth == 0 || pick(4) == 0)
    return pick(2) ? Formula::pred("p", {term()}) : Formula::pred("q", {term(), term()});
  switch (pick(7)) {
    case 0: return Formula::negation(random_open(rng, depth - 1));
    case 1: return Formula::implies(random_open(rng, depth - 1), random_open(rng, depth - 1));
    case 2: return Formula::disjunction(random_open(rng, depth - 1), random_open(rng, depth - 1));
    case 3: return Formula::knows(pick(2) ? "a" : "b", random_open(rng, depth - 1));
    case 4: return Formula::forall(pick(2) ? "x" : "y", "S", random_open(rng, depth - 1));
    case 5: return Formula::everyone({"a", "b"}, random_open(rng, depth - 1));
    default: return Formula::conjunction(random_open(rng, depth - 1), random_open(rng, depth - 1));
  }
}

Vocabulary small_vocab() {
  Vocabulary v;
  v.domains["Time"] = {"1", "2"};
  v.domains["One"] = {"1"};
  v.domains["Place"] = {"pub", "library"};
  v.domains["Agent"] = {"Bob"};
  v.predicates["post"] = {3};
  v.predicates["loc"] = {3};
  v.predicates["p"] = {1};
  v.constants["c"] = "1";
  return v;
}

}  // namespace

TEST_CASE("substitute leaves bound variables alone") {
  const Formula phi = F("forall t:Time . p(t)");
  CHECK(substitute(phi, "t", "1") == phi);
}

TEST_CASE("substitute replaces a free occurrence") {
  CHECK(substitute(Formula::pred("p", {Term::variable("x")}), "x", "pub") == F("p(pub)"));
}

TEST_CASE("substitute descends into modalities") {
  const Formula phi = Formula::conjunction(Formula::pred("p", {Term::variable("x")}),
                                           Formula::knows("a", Formula::pred("q", {Term::variable("x")})));
  const Formula expected = F("p(1) && K[a] q(1)");
  CHECK(substitute(phi, "x", "1") == expected);
  CHECK(oracle::substitute(phi, "x", "1") == expected);
}

TEST_CASE("substitute agrees with the tree-rewrite oracle") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 400; ++i) {
    const Formula phi = random_open(rng, 4);
    for (const char* v : {"x", "y"}) {
      INFO(phi.to_string());
      CHECK(substitute(phi, v, "e") == oracle::substitute(phi, v, "e"));
    }
  }
}

TEST_CASE("ground expands the running example over two time points") {
  const Formula phi = F("forall t:Time . post(Bob,pub,t) -> loc(Bob,pub,t)");
  const Formula expected = F("(post(Bob,pub,1) -> loc(Bob,pub,1)) && (post(Bob,pub,2) -> loc(Bob,pub,2))");
  CHECK(ground(phi, small_vocab()) == expected);
}

TEST_CASE("ground resolves constants and singleton domains") {
  CHECK(ground(F("p(c)"), small_vocab()) == F("p(1)"));
  CHECK(ground(F("forall x:One . p(x)"), small_vocab()) == F("p(1)"));
}

TEST_CASE("ground is idempotent and removes quantifiers and variables") {
  const Vocabulary v = small_vocab();
  const Formula phi = F("forall t:Time . forall l:Place . K[Bob] (post(Bob,l,t) || !loc(Bob,l,c))");
  const Formula g = ground(phi, v);
  CHECK(ground(g, v) == g);
  CHECK(is_ground(g));
  CHECK_FALSE(contains_kind(g, Formula::Kind::Forall));
  CHECK(size(g) > size(phi));
}

TEST_CASE("ground rejects free variables and unknown sorts") {
  CHECK_THROWS_AS(ground(Formula::pred("p", {Term::variable("x")}), small_vocab()), Error);
  CHECK_THROWS_AS(ground(F("forall x:Nowhere . p(x)"), small_vocab()), Error);
}

TEST_CASE("size of atoms and of the worked example") {
  CHECK(size(F("p(a)")) == 2);
  CHECK(size(F("p")) == 1);
  CHECK(size(F("K[Charlie] loc(Bob,pub,1)")) == 5);
  CHECK(size(F("!(p(a) && q(b))")) == 6);
}

TEST_CASE("size agrees with a token count of the printed form") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const Formula phi = random_open(rng, 5);
    INFO(phi.to_string());
    CHECK(size(phi) == oracle::token_size(phi.to_string()));
  }
}

TEST_CASE("printing and parsing are inverse") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 300; ++i) {
    // Unbound names parse as constants, so close the formula first.
    const Formula phi = Formula::forall("x", "S", Formula::forall("y", "S", random_open(rng, 5)));
    INFO(phi.to_string());
    CHECK(parse_formula(phi.to_string()) == phi);
  }
}

TEST_CASE("E and S expand into conjunctions and disjunctions of K") {
  CHECK(expand_group_modalities(F("E[a,b] p")) == F("K[a] p && K[b] p"));
  CHECK(expand_group_modalities(F("S[a,b] p")) == F("K[a] p || K[b] p"));
}
