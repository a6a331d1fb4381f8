#include <doctest.h>

#include <algorithm>
#include <random>

#include "domino/interpretation.hpp"
#include "domino/normal_form.hpp"
#include "domino/parser.hpp"
#include "domino/printer.hpp"
#include "domino/reasoner.hpp"
#include "domino/reduction.hpp"
#include "support.hpp"

using namespace domino;

namespace {

Concept C(const std::string& text) { return parse_concept(text, {true}); }
KnowledgeBase K(const std::string& text) { return parse_kb(text, {true}); }

std::vector<std::string> lines(const KnowledgeBase& kb) {
  std::vector<std::string> out;
  for (const auto& a : kb.axioms()) out.push_back(to_string(a));
  return out;
}

bool has_axiom(const KnowledgeBase& kb, const std::string& text) {
  auto ls = lines(kb);
  return std::find(ls.begin(), ls.end(), text) != ls.end();
}

bool contains(const std::vector<Concept>& cs, const Concept& c) { return std::find(cs.begin(), cs.end(), c) != cs.end(); }

bool same_axioms(const KnowledgeBase& a, const KnowledgeBase& b) {
  auto x = lines(a), y = lines(b);
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

// Random SHIQbs input: a TBox with counting, plus a random inclusion and
// transitivity axiom. Inputs that fail validation are skipped by callers.
KnowledgeBase random_shiqbs(std::mt19937& rng) {
  support::Vocabulary v;
  v.concepts = {"A", "B", "C"};
  v.roles = {"r", "s", "t"};
  v.counting = true;
  KnowledgeBase kb = support::random_tbox(rng, v, 2, 2);
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  if (pick(2)) kb.add_role_inclusion(AtomicRole(v.roles[pick(3)]), AtomicRole(v.roles[pick(3)]));
  if (pick(2)) kb.add_transitivity(AtomicRole(v.roles[pick(3)], pick(2) == 1));
  return kb;
}

}  // namespace

TEST_CASE("atomization replaces non-atomic counting roles") {
  auto out = atomize_counting_roles(K("Valid(atmost(1, and(r, s), A))"));
  CHECK(has_axiom(out, "Valid(atmost(1,__r0,A))"));
  CHECK(has_axiom(out, "Valid(all(and(and(r,s),not(__r0)),Bottom))"));
  CHECK(has_axiom(out, "Valid(all(and(not(and(r,s)),__r0),Bottom))"));
  CHECK(out.tbox().size() == 3);

  auto ge = atomize_counting_roles(K("Valid(atleast(2, or(r, s), A))"));
  CHECK(has_axiom(ge, "Valid(atleast(2,__r0,A))"));
  CHECK(ge.tbox().size() == 3);

  auto atomic = K("Valid(atmost(1, r, A))\nValid(atleast(2, inv(s), B))");
  CHECK(same_axioms(atomize_counting_roles(atomic), atomic));
}

TEST_CASE("at-least over a disjunctive role stays satisfiable after reduction") {
  // Two elements 0 -> 1 and 0 -> 2 by r and s with A on 1 and 2.
  auto kb = K("Valid(atleast(2, or(r, s), A))");
  FiniteInterpretation i;
  i.size = 3;
  i.concepts["A"] = {0, 1, 2};
  i.roles["r"] = {{0, 1}, {1, 2}, {2, 0}};
  i.roles["s"] = {{0, 2}, {1, 0}, {2, 1}};
  CHECK(check_model(i, kb));
  CHECK(reason(kb, Query::satisfiability()).answer);
}

TEST_CASE("cl closure") {
  auto cl = cl_closure(K("Valid(all(r, C))\nTransitive(s)\nSubRoleOf(s, r)"));
  CHECK(contains(cl, C("all(r,C)")));
  CHECK(contains(cl, C("all(s,C)")));
  CHECK(contains(cl, C("C")));

  CHECK(cl_closure(KnowledgeBase{}).empty());

  auto g = cl_closure(K("SubClassOf(A, B)"));
  CHECK(contains(g, C("or(not(A),B)")));
  CHECK(contains(g, C("not(A)")));
  CHECK(contains(g, C("A")));
  CHECK(contains(g, C("B")));
  CHECK(g.size() == 4);

  auto am = cl_closure(K("Valid(atmost(1, r, A))"));
  CHECK(contains(am, C("not(A)")));
}

TEST_CASE("Es removes transitivity and adds the box, Self and chain axioms") {
  auto out = transform_es(K("Transitive(s)\nSubRoleOf(s, r)\nValid(all(r, C))"));
  CHECK_FALSE(has_transitivity(out));
  CHECK(has_axiom(out, "Valid(or(not(all(s,C)),all(s,all(s,C))))"));
  // The box axiom is not added for r, which is not transitive.
  CHECK_FALSE(has_axiom(out, "Valid(or(not(all(r,C)),all(r,all(r,C))))"));
  CHECK(has_axiom(out, "Valid(or(not(some(and(s,inv(s)),Top)),__self_s))"));
  CHECK(has_axiom(out, "Valid(or(not(some(and(inv(s),s),Top)),__self_s_inv))"));
  CHECK(has_axiom(out, "Rule(__self_s(?x) -> s(?x,?x))"));
  CHECK(has_axiom(out, "Rule(s(?x,?y), s(?y,?z) -> s(?x,?z))"));
  CHECK(has_axiom(out, "SubRoleOf(s, r)"));

  auto plain = K("Valid(all(r, C))\nSubRoleOf(s, r)");
  CHECK(same_axioms(transform_es(plain), plain));
}

TEST_CASE("a universal over a non-transitive role does not propagate along chains") {
  // Consistent: c is reached in two r-steps from a, and nothing forces C there.
  auto kb = K(
      "Valid(or(not(A), all(r, C)))\n"
      "Transitive(t)\n"
      "Valid(all(t, B))\n"
      "ConceptAssertion(A, a)\n"
      "RoleAssertion(r, a, b)\n"
      "RoleAssertion(r, b, c)\n"
      "NegativeConceptAssertion(C, c)");
  CHECK(reason(kb, Query::satisfiability()).answer);
}

TEST_CASE("Es chain rule yields transitive consequences") {
  auto kb = K("Transitive(s)\nRoleAssertion(s, a, b)\nRoleAssertion(s, b, c)");
  CHECK(reason(kb, Query::role_fact("s", "a", "c")).answer);
  CHECK_FALSE(reason(kb, Query::role_fact("s", "c", "a")).answer);

  auto inv = K("Transitive(inv(s))\nRoleAssertion(s, a, b)\nRoleAssertion(s, b, c)");
  CHECK(reason(inv, Query::role_fact("s", "a", "c")).answer);
}

TEST_CASE("Es with a universal along a transitive chain") {
  auto kb = K(
      "Transitive(r)\n"
      "SubClassOf(A, all(r, B))\n"
      "ConceptAssertion(A, a)\n"
      "RoleAssertion(r, a, b)\n"
      "RoleAssertion(r, b, c)");
  CHECK(reason(kb, Query::concept_fact(C("B"), "c")).answer);
  CHECK_FALSE(reason(kb, Query::concept_fact(C("B"), "a")).answer);
  auto blocked = K(
      "Transitive(r)\n"
      "SubClassOf(A, all(r, B))\n"
      "ConceptAssertion(A, a)\n"
      "RoleAssertion(r, a, b)\n"
      "RoleAssertion(r, b, c)\n"
      "NegativeConceptAssertion(B, c)");
  CHECK_FALSE(reason(blocked, Query::satisfiability()).answer);
}

TEST_CASE("Ege splits at-least restrictions into fresh disjoint sub-roles") {
  auto out = transform_ege(K("Valid(atleast(2, r, A))"));
  CHECK_FALSE(has_at_least(out));
  CHECK(has_axiom(out, "Valid(and(some(__r0,A),some(__r1,A)))"));
  CHECK(has_axiom(out, "Valid(all(and(__r0,__r1),Bottom))"));
  CHECK(has_axiom(out, "SubRoleOf(__r0, r)"));
  CHECK(has_axiom(out, "SubRoleOf(__r1, r)"));

  auto one = transform_ege(K("Valid(atleast(1, r, A))"));
  CHECK(has_axiom(one, "Valid(some(__r0,A))"));
  CHECK(has_axiom(one, "SubRoleOf(__r0, r)"));
  CHECK(one.tbox().size() == 1);

  auto none = K("Valid(some(r, A))\nValid(atmost(1, r, B))");
  CHECK(same_axioms(transform_ege(none), none));
}

TEST_CASE("Eh internalizes role inclusions") {
  auto out = transform_eh(K("SubRoleOf(r, s)"));
  CHECK(out.role_inclusions().empty());
  CHECK(has_axiom(out, "Valid(all(and(r,not(s)),Bottom))"));

  auto conj = transform_eh(K("SubRoleOf(and(r, t), s)"));
  REQUIRE(conj.tbox().size() == 1);
  CHECK(is_restricted(conj.tbox()[0].role()));

  auto plain = K("Valid(some(r, A))");
  CHECK(same_axioms(transform_eh(plain), plain));
}

TEST_CASE("Ele rewrites at-most restrictions") {
  auto out = transform_ele(K("Valid(atmost(1, r, A))"));
  CHECK(has_axiom(out, "Valid(all(and(r,not(__r0)),not(A)))"));
  CHECK(has_axiom(out, "Valid(all(__r0,A))"));
  CHECK(has_axiom(out, "Valid(atmost(1,__r0,Top))"));
  CHECK_FALSE(has_at_most_other_than_functionality(out));

  auto fn = K("Valid(atmost(1, r, Top))");
  CHECK(same_axioms(transform_ele(fn), fn));

  auto zero = transform_ele(K("Valid(atmost(0, r, A))"));
  CHECK(lines(zero) == std::vector<std::string>{"Valid(all(r,not(A)))"});
}

TEST_CASE("at-most zero rewrite is equisatisfiable on small models") {
  // ≤0 r.A and ∀r.¬A have the same models; compare them on all two-element
  // interpretations over one concept and one role.
  auto a = K("Valid(atmost(0, r, A))");
  auto b = transform_ele(a);
  for (unsigned mask = 0; mask < 64; ++mask) {
    FiniteInterpretation i;
    i.size = 2;
    if (mask & 1) i.concepts["A"].insert(0);
    if (mask & 2) i.concepts["A"].insert(1);
    for (unsigned k = 0; k < 4; ++k) {
      if (mask & (4u << k)) i.roles["r"].insert({k / 2, k % 2});
    }
    CHECK(check_model(i, a) == check_model(i, b));
  }
}

TEST_CASE("Ef replaces functionality by the three families") {
  auto out = transform_ef(K("Valid(atmost(1, r, Top))\nValid(some(r, A))"));
  CHECK_FALSE(has_counting(out));
  CHECK(has_axiom(out, "Valid(or(all(r,not(some(r,A))),all(r,some(r,A))))"));
  CHECK(has_axiom(out, "Valid(or(all(r,not(A)),all(r,A)))"));
  CHECK(has_axiom(out, "Valid(or(all(and(r,r),Bottom),all(and(r,not(r)),Bottom)))"));
  CHECK(has_axiom(out, "Valid(or(all(and(r,inv(r)),Bottom),all(and(r,not(inv(r))),Bottom)))"));
  CHECK(has_axiom(out, "Rule(r(?x,?y), r(?x,?z) -> ?y ~ ?z)"));
  CHECK(out.tbox().size() == 5);

  auto plain = K("Valid(some(r, A))");
  CHECK(same_axioms(transform_ef(plain), plain));
}

TEST_CASE("functionality merges successors of a named individual") {
  auto kb = K("Valid(atmost(1, r, Top))\nRoleAssertion(r, a, b)\nRoleAssertion(r, a, c)");
  CHECK(reason(kb, Query::same_as("b", "c")).answer);
  CHECK_FALSE(reason(kb, Query::same_as("a", "b")).answer);
  auto distinct = K(
      "Valid(atmost(1, r, Top))\nRoleAssertion(r, a, b)\nRoleAssertion(r, a, c)\nDifferentIndividuals(b, c)");
  CHECK_FALSE(reason(distinct, Query::satisfiability()).answer);
}

TEST_CASE("axioms added by Ef hold in every model of the input") {
  std::mt19937 rng(41);
  support::Vocabulary v;
  v.concepts = {"A", "B"};
  v.roles = {"r", "s"};
  int certified = 0;
  for (int round = 0; round < 400; ++round) {
    KnowledgeBase kb = support::random_tbox(rng, v, 1, 2);
    kb.add_gci(C("atmost(1, r, Top)"));
    if (round % 3 == 0) kb.add_gci(C("atmost(1, inv(s), Top)"));
    auto out = transform_ef(kb);
    FiniteInterpretation i = support::random_interpretation(rng, v, 1 + round % 3);
    // Make r functional and inv(s) functional by keeping one pair per source.
    for (const std::string role : {"r", "s"}) {
      std::set<ElementPair> kept;
      std::set<Element> seen;
      for (const auto& [x, y] : i.roles[role]) {
        Element key = role == "r" ? x : y;
        if (seen.insert(key).second) kept.insert({x, y});
      }
      i.roles[role] = kept;
    }
    for (Element e = 0; e < i.size; ++e) i.individuals["a" + std::to_string(e)] = e;
    if (!check_model(i, kb)) continue;
    ++certified;
    std::string why;
    CHECK_MESSAGE(check_model(i, out, &why), to_string(kb) << " fails " << why);
  }
  CHECK(certified >= 20);
}

TEST_CASE("stage postconditions hold on random SHIQbs inputs") {
  std::mt19937 rng(5);
  int valid = 0;
  for (int round = 0; round < 300; ++round) {
    KnowledgeBase kb = random_shiqbs(rng);
    if (!validate_shiqbs(kb).empty()) continue;
    ++valid;
    auto es = transform_es(kb);
    CHECK_FALSE(has_transitivity(es));
    auto at = atomize_counting_roles(es);
    auto ege = transform_ege(at);
    CHECK_FALSE(has_at_least(ege));
    auto eh = transform_eh(ege);
    CHECK(eh.role_inclusions().empty());
    auto ele = transform_ele(eh);
    CHECK_FALSE(has_at_most_other_than_functionality(ele));
    auto ef = transform_ef(ele);
    CHECK_MESSAGE(!has_counting(ef), to_string(kb) << "=>\n" << to_string(ele));
    CHECK(ef.transitivity().empty());
    CHECK(ef.role_inclusions().empty());
    CHECK(same_axioms(ef, transform_full(kb)));
  }
  CHECK(valid >= 100);
}

TEST_CASE("reduction is deterministic and its trace replays") {
  std::mt19937 rng(9);
  int checked = 0;
  for (int round = 0; round < 200; ++round) {
    KnowledgeBase kb = random_shiqbs(rng);
    if (!validate_shiqbs(kb).empty()) continue;
    ReductionTrace t1, t2;
    auto a = transform_full(kb, &t1);
    auto b = transform_full(kb, &t2);
    CHECK(to_string(a) == to_string(b));
    CHECK(t1.str() == t2.str());
    KnowledgeBase cur = kb;
    for (const auto& st : t1.stages) cur = replay(cur, st);
    CHECK(same_axioms(cur, a));
    ++checked;
  }
  CHECK(checked >= 50);
}

TEST_CASE("trace lines are tab separated") {
  ReductionTrace t;
  transform_full(K("SubRoleOf(r, s)"), &t);
  CHECK(t.str() == "Eh\tremove\tSubRoleOf(r, s)\nEh\tadd\tValid(all(and(r,not(s)),Bottom))\n");
}

TEST_CASE("ALCIb input passes through unchanged") {
  auto kb = parse_kb_file(support::data_path("phd_tbox.kb"));
  ReductionTrace t;
  CHECK(same_axioms(transform_full(kb, &t), kb));
  CHECK(t.str().empty());
}
