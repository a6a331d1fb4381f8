#include <doctest.h>

#include <algorithm>
#include <random>

#include "domino/error.hpp"
#include "domino/interpretation.hpp"
#include "domino/normal_form.hpp"
#include "domino/parser.hpp"
#include "domino/printer.hpp"
#include "support.hpp"

using namespace domino;

namespace {

Concept N(const std::string& n) { return Concept::name(n); }
AtomicRole R(const std::string& n, bool inv = false) { return AtomicRole(n, inv); }
Concept C(const std::string& text) { return parse_concept(text, {true}); }

std::set<Concept> as_set(const std::vector<Concept>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("invert toggles the inverse flag") {
  CHECK(invert(R("r")) == R("r", true));
  CHECK(invert(R("r", true)) == R("r"));
  CHECK(invert(invert(R("s", true))) == R("s", true));
}

TEST_CASE("role entailment follows the inductive clauses") {
  CHECK(role_entails({R("r")}, RoleExpr(R("r"))));
  CHECK(role_entails({}, RoleExpr::negation(R("r"))));
  CHECK(role_entails({R("r")}, RoleExpr::conjunction(R("r"), RoleExpr::negation(R("s")))));
  CHECK_FALSE(role_entails({R("r")}, RoleExpr(R("r", true))));
}

TEST_CASE("role entailment agrees with a direct evaluator") {
  std::mt19937 rng(7);
  support::Vocabulary v;
  const std::vector<AtomicRole> atoms{R("r"), R("r", true), R("s"), R("s", true)};
  for (int i = 0; i < 300; ++i) {
    RoleExpr u = support::random_role(rng, v);
    if (i % 3 == 0) u = RoleExpr::negation(u);
    for (unsigned mask = 0; mask < 16; ++mask) {
      std::set<AtomicRole> rs;
      for (unsigned k = 0; k < 4; ++k) {
        if (mask >> k & 1u) rs.insert(atoms[k]);
      }
      CHECK(role_entails(rs, u) == support::brute_role_entails(rs, u));
    }
    CHECK(is_restricted(u) == !role_entails({}, u));
  }
}

TEST_CASE("restricted role expressions") {
  CHECK(is_restricted(RoleExpr(R("r"))));
  CHECK_FALSE(is_restricted(RoleExpr::negation(R("r"))));
  CHECK(is_restricted(RoleExpr::conjunction(R("r"), RoleExpr::negation(R("s")))));
  CHECK_FALSE(is_restricted(RoleExpr::disjunction(R("r"), RoleExpr::negation(R("s")))));
}

TEST_CASE("role classification") {
  SUBCASE("empty role box") {
    KnowledgeBase kb = parse_kb("Valid(some(r, A))");
    auto rc = classify_roles(kb);
    CHECK(rc.non_simple.empty());
    CHECK(rc.sub_role(R("r"), R("r")));
    CHECK(rc.sub_role(R("r", true), R("r", true)));
    CHECK_FALSE(rc.sub_role(R("r"), R("r", true)));
  }
  SUBCASE("transitive role") {
    auto rc = classify_roles(parse_kb("Transitive(r)"));
    CHECK(rc.non_simple == std::set<AtomicRole>{R("r"), R("r", true)});
  }
  SUBCASE("transitive sub-role") {
    auto rc = classify_roles(parse_kb("Transitive(r)\nSubRoleOf(r, s)"));
    CHECK(rc.non_simple == std::set<AtomicRole>{R("r"), R("r", true), R("s"), R("s", true)});
    CHECK(rc.sub_role(R("r"), R("s")));
    CHECK(rc.sub_role(R("r", true), R("s", true)));
    CHECK_FALSE(rc.sub_role(R("s"), R("r")));
  }
  SUBCASE("chains close transitively") {
    auto rc = classify_roles(parse_kb("SubRoleOf(a, b)\nSubRoleOf(b, inv(c))"));
    CHECK(rc.sub_role(R("a"), R("c", true)));
    CHECK(rc.sub_role(R("a", true), R("c")));
    CHECK(rc.non_simple.empty());
  }
}

TEST_CASE("validation reports fragment violations") {
  auto kinds = [](const std::vector<Violation>& v) {
    std::vector<Violation::Kind> k;
    for (const auto& x : v) k.push_back(x.kind);
    return k;
  };
  CHECK(kinds(validate_shiqbs(parse_kb("Transitive(r)\nValid(atmost(1, r, C))"))) ==
        std::vector<Violation::Kind>{Violation::Kind::NonSimpleInCounting});
  CHECK(kinds(validate_shiqbs(parse_kb("Valid(all(not(r), C))"))) ==
        std::vector<Violation::Kind>{Violation::Kind::UnrestrictedRole});
  CHECK(validate_shiqbs(parse_kb("SubClassOf(A, some(and(r, not(s)), B))\nValid(all(inv(r), A))")).empty());
  CHECK(kinds(validate_shiqbs(parse_kb("Transitive(r)\nValid(some(and(r, s), C))"))) ==
        std::vector<Violation::Kind>{Violation::Kind::NonSimpleInBooleanRole});
  CHECK(kinds(validate_shiqbs(parse_kb("SubRoleOf(not(r), s)"))) ==
        std::vector<Violation::Kind>{Violation::Kind::UnrestrictedRole});
  CHECK(kinds(validate_shiqbs(parse_kb("Valid(atleast(9, r, C))"), 8)) ==
        std::vector<Violation::Kind>{Violation::Kind::NumberTooLarge});
}

TEST_CASE("negation normal form") {
  CHECK(nnf(C("not(not(A))")) == N("A"));
  CHECK(nnf(C("not(and(A, B))")) == C("or(not(A), not(B))"));
  CHECK(nnf(C("not(some(r, C))")) == C("all(r, not(C))"));
  CHECK(nnf(C("not(all(r, not(C)))")) == C("some(r, C)"));
  CHECK(nnf(C("not(atleast(1, r, C))")) == C("atmost(0, r, C)"));
  CHECK(nnf(C("not(atleast(3, r, C))")) == C("atmost(2, r, C)"));
  CHECK(nnf(C("not(atmost(2, r, not(C)))")) == C("atleast(3, r, not(C))"));
  CHECK(nnf(C("not(Top)")) == Concept::bottom());
}

TEST_CASE("nnf is idempotent and preserves extensions") {
  std::mt19937 rng(11);
  support::Vocabulary v;
  v.counting = true;
  for (int i = 0; i < 200; ++i) {
    Concept c = support::random_concept(rng, v, 3);
    Concept n = nnf(c);
    CHECK(is_nnf(n));
    CHECK(nnf(n) == n);
    for (std::size_t size = 1; size <= 4; ++size) {
      FiniteInterpretation in = support::random_interpretation(rng, v, size);
      CHECK_MESSAGE(eval_concept(in, c) == eval_concept(in, n), to_string(c));
    }
  }
}

TEST_CASE("flattening") {
  SUBCASE("quantifier with a complex filler") {
    KnowledgeBase kb;
    kb.add_gci(C("some(r, and(A, B))"));
    KnowledgeBase f = flatten(kb);
    CHECK(f.tbox() == std::vector<Concept>{C("some(r, __f0)"), C("or(not(__f0), and(A, B))")});
  }
  SUBCASE("at-most uses the positive direction") {
    KnowledgeBase kb;
    kb.add_gci(C("atmost(1, r, not(A))"));
    KnowledgeBase f = flatten(kb);
    CHECK(f.tbox() == std::vector<Concept>{C("atmost(1, r, __f0)"), C("or(A, __f0)")});
  }
  SUBCASE("flat input is a fixpoint") {
    KnowledgeBase kb = parse_kb(support::read_file(support::data_path("phd_tbox.kb")));
    KnowledgeBase f = flatten(kb);
    CHECK(as_set(flatten(f).tbox()) == as_set(f.tbox()));
    CHECK(f.signature().concepts == kb.signature().concepts);
  }
  SUBCASE("fresh names avoid the signature") {
    KnowledgeBase kb = parse_kb("Valid(some(r, some(s, A)))\nValid(__f0)", {true});
    KnowledgeBase f = flatten(kb);
    CHECK(f.signature().concepts.count("__f1"));
    CHECK(is_flat(f));
  }
  SUBCASE("random knowledge bases flatten to flat form") {
    std::mt19937 rng(3);
    support::Vocabulary v;
    v.counting = true;
    for (int i = 0; i < 100; ++i) {
      KnowledgeBase f = flatten(support::random_tbox(rng, v, 4, 4));
      CHECK(is_flat(f));
      for (const auto& p : parts_of(f)) {
        const bool ok = p.is(Concept::Kind::Name) || (p.is_quantified() && p.filler().is_atomic());
        CHECK_MESSAGE(ok, to_string(p));
      }
    }
  }
}

TEST_CASE("parts") {
  CHECK(as_set(parts_of(C("and(A, not(B))"))) == std::set<Concept>{N("A"), N("B")});
  CHECK(as_set(parts_of(C("some(r, all(s, A))"))) ==
        std::set<Concept>{C("some(r, all(s, A))"), C("all(s, A)"), N("A")});
  KnowledgeBase kb = parse_kb(support::read_file(support::data_path("phd_tbox.kb")));
  CHECK(as_set(parts_of(flatten(kb))) == std::set<Concept>{C("some(has, Diploma)"), C("all(inv(has), Graduate)"),
                                                           N("Diploma"), N("Graduate"), N("PhDStudent")});
  CHECK(parts_of(C("or(Top, Bottom)")).empty());
}

TEST_CASE("parser builds the expected structures") {
  KnowledgeBase kb = parse_kb("SubClassOf(PhDStudent, some(has, Diploma))");
  REQUIRE(kb.tbox().size() == 1);
  CHECK(kb.tbox()[0] == subclass_of(N("PhDStudent"), C("some(has, Diploma)")).expr);

  kb = parse_kb("ConceptAssertion(Diploma, laureus)");
  REQUIRE(kb.rules().size() == 1);
  CHECK(kb.rules()[0].body.empty());
  CHECK(kb.rules()[0].head == std::vector<Atom>{ConceptAtom{"Diploma", Term::individual("laureus")}});

  kb = parse_kb("Rule(R(?x,?y), R(?y,?z) -> R(?x,?z))");
  REQUIRE(kb.rules().size() == 1);
  const auto x = Term::variable("x"), y = Term::variable("y"), z = Term::variable("z");
  CHECK(kb.rules()[0].body == std::vector<Atom>{RoleAtom{"R", x, y}, RoleAtom{"R", y, z}});
  CHECK(kb.rules()[0].head == std::vector<Atom>{RoleAtom{"R", x, z}});

  kb = parse_kb("NegativeRoleAssertion(inv(r), a, b)\nDifferentIndividuals(a, b)");
  CHECK(kb.rules()[0].head.empty());
  CHECK(kb.rules()[0].body == std::vector<Atom>{RoleAtom{"r", Term::individual("b"), Term::individual("a")}});
  CHECK(kb.signature().individuals == std::set<std::string>{"a", "b"});
}

TEST_CASE("parser errors carry positions") {
  try {
    parse_kb("Valid(A)\nValid(and(A B))");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 13);
  }
  CHECK_THROWS_AS(parse_kb("Valid(__f0)"), ParseError);
  CHECK_THROWS_AS(parse_kb("Valid(and(A))"), ParseError);
  CHECK_THROWS_AS(parse_kb("Valid(atleast(65, r, A))"), ParseError);
  CHECK_THROWS_AS(parse_kb("Valid(some(A, A))"), ParseError);
  CHECK_THROWS_AS(parse_kb("Frobnicate(A)"), ParseError);
  CHECK_THROWS_AS(parse_kb("Transitive(and(r, s))"), ParseError);
}

TEST_CASE("printed knowledge bases parse back") {
  std::mt19937 rng(5);
  support::Vocabulary v;
  v.counting = true;
  for (int i = 0; i < 50; ++i) {
    KnowledgeBase kb = support::random_tbox(rng, v, 3, 3);
    kb.add_role_inclusion(RoleExpr::conjunction(R("r"), R("s", true)), R("s"));
    kb.add_transitivity(R("r"));
    kb.add_rule(Rule{{ConceptAtom{"A", Term::variable("x")}, RoleAtom{"r", Term::variable("x"), Term::individual("a")}},
                     {EqualityAtom{Term::variable("x"), Term::individual("b")}}});
    KnowledgeBase back = parse_kb(to_string(kb));
    CHECK(back.axioms() == kb.axioms());
    CHECK(back.signature() == kb.signature());
  }
}

TEST_CASE("queries") {
  Query q = parse_query("Graduate(laureus)");
  CHECK(q.kind == Query::Kind::ConceptFact);
  CHECK(q.target.at(0) == N("Graduate"));
  CHECK(q.first == "laureus");
  q = parse_query("has(a, b)");
  CHECK(q.kind == Query::Kind::RoleFact);
  CHECK(q.role == "has");
  q = parse_query("a ~ b");
  CHECK(q.kind == Query::Kind::SameAs);
  q = parse_query("some(has, Diploma)(laureus)");
  CHECK(q.target.at(0) == C("some(has, Diploma)"));
  CHECK(to_string(q) == "some(has,Diploma)(laureus)");
  CHECK_THROWS_AS(parse_query("Graduate(laureus) extra"), ParseError);
}

TEST_CASE("knowledge bases drop structural duplicates and keep order") {
  KnowledgeBase kb = parse_kb("Valid(A)\nValid(B)\nValid(A)\nSubClassOf(C, D)");
  CHECK(kb.tbox().size() == 3);
  CHECK(kb.tbox()[1] == N("B"));
  CHECK(kb.signature().concepts == std::set<std::string>{"A", "B", "C", "D"});
}
