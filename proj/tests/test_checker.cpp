#include "doctest.h"
#include "kbl/checker.hpp"
#include "kbl/errors.hpp"
#include "kbl/generate.hpp"
#include "support/fixtures.hpp"

using namespace kbl;
using fixtures::F;

namespace {

Verdict verdict(const Snm& snm, const char* phi) { return check(snm, F(phi)).verdict; }

Snm with_kbs(std::initializer_list<std::pair<const char*, const char*>> facts) {
  SnmBuilder b;
  b.agent("a").agent("b");
  b.domain("Obj", {"c"});
  b.predicate("p", 1).predicate("q", 1);
  Snm snm = b.build();
  for (const auto& [agent, f] : facts) snm = snm.kb_insert(agent, F(f));
  return snm;
}

}  // namespace

TEST_CASE("running example verdicts") {
  const Snm& snm = fixtures::fig2();
  CHECK(verdict(snm, "K[Alice] post(Bob,pub,1)") == Verdict::True);
  CHECK(verdict(snm, "K[Alice] loc(Bob,pub,1)") == Verdict::True);
  CHECK(verdict(snm, "K[Charlie] loc(Bob,pub,1)") == Verdict::False);
  CHECK(verdict(snm, "friendRequest(Charlie,Alice)") == Verdict::True);
  CHECK(verdict(snm, "friend(Alice,Bob) && !blocked(Charlie,Bob)") == Verdict::True);
  CHECK(verdict(snm, "K[Charlie] post(Bob,library,2) && !K[Bob] post(Bob,library,2)") == Verdict::True);
  CHECK(verdict(snm, "forall t:Time . K[Alice] post(Bob,pub,t)") == Verdict::False);
  CHECK(verdict(snm, "D[Alice,Charlie] (post(Bob,pub,1) && post(Bob,library,2))") == Verdict::True);
  CHECK(verdict(snm, "S[Bob,Charlie] post(Bob,library,2)") == Verdict::True);
  CHECK(verdict(snm, "E[Bob,Charlie] post(Bob,library,2)") == Verdict::False);
}

TEST_CASE("unknown agents are errors") {
  CHECK_THROWS_AS(check(fixtures::fig2(), F("K[Dave] post(Bob,pub,1)")), VocabularyError);
}

TEST_CASE("common knowledge") {
  const CheckConfig cfg;
  const Snm single = with_kbs({{"a", "p(c)"}});
  CHECK(check_common(single, {"a"}, F("p(c)"), cfg) == Verdict::True);
  CHECK(check_common(single, {"a", "b"}, F("p(c)"), cfg) == Verdict::False);

  // Both know p, and a knows that b knows, but b does not know that a knows.
  const Snm lopsided = with_kbs({{"a", "p(c)"}, {"a", "K[b] p(c)"}, {"b", "p(c)"}});
  CHECK(check(lopsided, F("E[a,b] p(c)")).verdict == Verdict::True);
  CHECK(check(lopsided, F("E[a,b] E[a,b] p(c)")).verdict == Verdict::False);
  CHECK(check_common(lopsided, {"a", "b"}, F("p(c)"), cfg) == Verdict::False);

  const Snm mutual = with_kbs({{"a", "p(c)"}, {"b", "p(c)"}, {"a", "K[b] p(c)"}, {"b", "K[a] p(c)"}});
  CheckConfig one;
  one.common_bound = 1;
  CHECK(check_common(mutual, {"a", "b"}, F("p(c)"), one) == Verdict::Unknown);
  CHECK_THROWS_AS(satisfies(mutual, F("C[a,b] p(c)"), one), ResourceExhausted);

  CHECK(check_common(with_kbs({}), {"a", "b"}, F("p(c) || !p(c)"), cfg) == Verdict::True);
  CHECK(verdict(fixtures::fig2(), "C[Alice] post(Bob,pub,1)") == Verdict::True);
}

TEST_CASE("bounded common knowledge implies the unrolled levels") {
  const Snm snm = with_kbs({{"a", "p(c)"}, {"a", "q(c)"}});
  const Formula phi = F("p(c) && q(c)");
  REQUIRE(check_common(snm, {"a"}, phi) == Verdict::True);
  CHECK(check(snm, F("E[a] (p(c) && q(c) && E[a] (p(c) && q(c)) && E[a] E[a] (p(c) && q(c)))")).verdict ==
        Verdict::True);
}

TEST_CASE("outerK") {
  const FormulaSet got = outer_k(F("K[a] (p(s) && K[b] q(s)) && p(u) && !K[b] r(s) && K[c] u(v)"));
  const FormulaSet want{F("K[a] (p(s) && K[b] q(s))"), F("K[b] r(s)"), F("K[c] u(v)")};
  CHECK(got == want);
  CHECK(outer_k(F("p(a)")).empty());
  CHECK(outer_k(F("K[a] K[b] p(c)")) == FormulaSet{F("K[a] K[b] p(c)")});
}

TEST_CASE("check reports each outerK member") {
  const CheckResult r = check(fixtures::fig2(), F("K[Alice] loc(Bob,pub,1) && !K[Charlie] loc(Bob,pub,1)"));
  CHECK(r.verdict == Verdict::True);
  REQUIRE(r.outer.size() == 2);
  for (const auto& o : r.outer)
    CHECK(o.verdict == (o.formula.agent() == "Alice" ? Verdict::True : Verdict::False));
}

TEST_CASE("worked cost numbers") {
  const CostReport r = cost_report(fixtures::fig2(), F("K[Charlie] loc(Bob,pub,1)"));
  REQUIRE(r.outer.size() == 1);
  CHECK(r.outer[0].kb_size == 4);
  CHECK(r.outer[0].size == 5);
  CHECK(kb_formula_size(fixtures::fig2().kb("Alice")) == 14);
  CHECK(r.characteristic_size == 4 + 14 + 12);
  CHECK(r.m_phi == 0);
  CHECK(r.snm_bound == 21);
  CHECK(r.kripke_bound == BigInt(1073741829));
  CHECK(r.snm_cheaper == true);
  CHECK(r.verdict == Verdict::False);
}

TEST_CASE("cost without modalities is just the formula") {
  const CostReport r = cost_report(fixtures::fig2(), F("friend(Alice,Bob) && !blocked(Charlie,Bob)"), {}, false);
  CHECK(r.outer.empty());
  CHECK(r.m_phi == r.formula_size);
  CHECK(r.snm_bound == r.m_phi);
  CHECK_FALSE(r.snm_cheaper.has_value());
}

TEST_CASE("cost bounds: degenerate model is not strict") {
  SnmBuilder b;
  b.agent("a").predicate("p", 0);
  const Snm snm = b.build().kb_insert("a", F("p"));
  const CostReport r = cost_report(snm, F("K[a] p"), {}, false);
  CHECK(r.snm_modal == r.kripke_modal);
  CHECK(r.snm_cheaper == false);
}

TEST_CASE("negation, quantifiers and group operators behave extensionally") {
  Rng rng(41);
  const GeneratorParams p{3, 2, 2, 1, 2, 3, 2, 1};
  const auto atoms = generated_atoms(p);
  const std::vector<AgentId> agents{"a0", "a1", "a2"};
  for (int n = 0; n < 80; ++n) {
    const Snm snm = random_snm(rng, p);
    const Formula phi = random_formula(rng, atoms, agents, 3, 2);
    INFO(phi.to_string());
    const Verdict v = check(snm, phi).verdict;
    CHECK(check(snm, Formula::negation(phi)).verdict == (v == Verdict::True ? Verdict::False : Verdict::True));

    const Formula body = random_formula(rng, atoms, agents, 2, 1);
    bool some = false;
    bool every = true;
    for (const auto& a : agents) {
      const bool k = check(snm, Formula::knows(a, body)).verdict == Verdict::True;
      some = some || k;
      every = every && k;
    }
    CHECK(check(snm, Formula::someone(agents, body)).verdict == verdict_of(some));
    CHECK(check(snm, Formula::everyone(agents, body)).verdict == verdict_of(every));

    // forall x:Obj over the two elements against explicit enumeration.
    const Formula open = Formula::knows("a0", Formula::disjunction(Formula::pred("p0", {Term::variable("x")}),
                                                                   Formula::pred("p1", {Term::variable("x")})));
    bool all = true;
    for (const char* o : {"o0", "o1"}) all = all && check(snm, substitute(open, "x", o)).verdict == Verdict::True;
    CHECK(check(snm, Formula::forall("x", "Obj", open)).verdict == verdict_of(all));
  }
}

TEST_CASE("sequential and concurrent evaluation agree") {
  Rng rng(42);
  const GeneratorParams p{3, 2, 2, 1, 2, 3, 2, 1};
  const auto atoms = generated_atoms(p);
  CheckConfig serial;
  serial.parallel = false;
  for (int n = 0; n < 20; ++n) {
    const Snm snm = random_snm(rng, p);
    const Formula phi = random_formula(rng, atoms, {"a0", "a1", "a2"}, 4, 1);
    CHECK(check(snm, phi).verdict == check(snm, phi, serial).verdict);
  }
}
