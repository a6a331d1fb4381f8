#include "curated.hpp"

namespace support {

std::vector<CuratedCase> curated_cases() {
  const std::string phd_tbox =
      "SubClassOf(PhDStudent, some(has, Diploma))\n"
      "SubClassOf(Diploma, all(inv(has), Graduate))\n"
      "SubClassOf(and(Diploma, Graduate), Bottom)\n";
  const std::string functional =
      "SubClassOf(Top, atmost(1, r, Top))\n"
      "RoleAssertion(r, a, b)\n"
      "RoleAssertion(r, a, c)\n";
  const std::string chain =
      "Transitive(s)\n"
      "RoleAssertion(s, a, b)\n"
      "RoleAssertion(s, b, c)\n";
  return {
      {"terminology alone", phd_tbox, "", true, "any model without PhD students"},
      {"both assertions", phd_tbox + "ConceptAssertion(Diploma, laureus)\nConceptAssertion(PhDStudent, laureus)\n", "",
       false, "laureus owns a diploma, so laureus is a graduate and a diploma"},
      {"graduate by inverse value restriction", phd_tbox + "ConceptAssertion(PhDStudent, laureus)\n",
       "Graduate(laureus)", true, "the diploma witness pushes Graduate back along inv(has)"},
      {"no diploma for laureus", phd_tbox + "ConceptAssertion(PhDStudent, laureus)\n", "Diploma(laureus)", false,
       "the witness diploma is anonymous"},

      {"transitive chain", chain, "s(a, c)", true, "s(a,b) and s(b,c) close to s(a,c)"},
      {"transitive chain is directed", chain, "s(c, a)", false, "nothing points back"},
      {"value restriction along a transitive role", chain + "SubClassOf(A, all(s, B))\nConceptAssertion(A, a)\n", "B(c)",
       true, "c is an s-successor of a"},

      {"at least two against at most one", "SubClassOf(A, atleast(2, r, Top))\nSubClassOf(Top, atmost(1, r, Top))\n"
                                           "ConceptAssertion(A, a)\n",
       "", false, "a needs two r-successors but may have one"},
      {"at least two alone", "SubClassOf(A, atleast(2, r, B))\nConceptAssertion(A, a)\n", "", true,
       "two anonymous B-successors"},
      {"nothing at all against some successor", "SubClassOf(A, atmost(0, r, Top))\nSubClassOf(A, some(r, Top))\n"
                                                "ConceptAssertion(A, a)\n",
       "", false, "a needs a successor and may have none"},
      {"qualified at most one merges", "SubClassOf(Top, atmost(1, r, B))\nRoleAssertion(r, a, b)\nRoleAssertion(r, a, c)\n"
                                       "ConceptAssertion(B, b)\nConceptAssertion(B, c)\n",
       "b ~ c", true, "two B-successors of a must coincide"},
      {"qualified at most one ignores other successors", "SubClassOf(Top, atmost(1, r, B))\nRoleAssertion(r, a, b)\n"
                                                         "RoleAssertion(r, a, c)\nConceptAssertion(B, b)\n",
       "b ~ c", false, "c need not be a B"},

      {"role hierarchy", "SubRoleOf(r, s)\nSubClassOf(some(s, Top), A)\nRoleAssertion(r, a, b)\n", "A(a)", true,
       "r(a,b) gives s(a,b)"},
      {"role hierarchy is one-way", "SubRoleOf(r, s)\nSubClassOf(some(r, Top), A)\nRoleAssertion(s, a, b)\n", "A(a)", false,
       "s(a,b) says nothing about r"},
      {"inverse sub-role", "SubRoleOf(r, inv(s))\nRoleAssertion(r, a, b)\n", "s(b, a)", true, "r(a,b) gives s(b,a)"},

      {"functionality merges successors", functional, "b ~ c", true, "a has one r-successor"},
      {"functionality carries facts", functional + "ConceptAssertion(B, b)\n", "B(c)", true, "b and c are the same"},
      {"functionality clashes with distinct facts",
       functional + "ConceptAssertion(B, b)\nConceptAssertion(C, c)\nSubClassOf(and(B, C), Bottom)\n", "", false,
       "b and c merge into a B and a C"},
      {"without functionality nothing merges", "RoleAssertion(r, a, b)\nRoleAssertion(r, a, c)\n", "b ~ c", false,
       "b and c may differ"},

      {"disjunction by cases", "SubClassOf(A, or(B, C))\nSubClassOf(B, D)\nSubClassOf(C, D)\nConceptAssertion(A, a)\n",
       "D(a)", true, "both cases give D"},
      {"disjunction picks no side", "SubClassOf(A, or(B, C))\nConceptAssertion(A, a)\n", "B(a)", false,
       "a may be a C"},
      {"union of roles", "Valid(all(or(r, s), B))\nRoleAssertion(s, a, b)\n", "B(b)", true, "s is inside r or s"},
      {"role difference", "Valid(all(and(s, not(r)), B))\nRoleAssertion(s, a, b)\nNegativeRoleAssertion(r, a, b)\n",
       "B(b)", true, "s(a,b) holds and r(a,b) does not"},
      {"role difference without the negative fact", "Valid(all(and(s, not(r)), B))\nRoleAssertion(s, a, b)\n", "B(b)",
       false, "r(a,b) may hold"},

      {"rule fires on named elements", "Rule(A(?x), r(?x, ?y) -> B(?y))\nConceptAssertion(A, a)\nRoleAssertion(r, a, b)\n",
       "B(b)", true, "the body matches a and b"},
      {"rule constraint", "Rule(A(?x), r(?x, ?y) -> B(?y))\nRule(B(?x) -> )\nConceptAssertion(A, a)\n"
                          "RoleAssertion(r, a, b)\n",
       "", false, "B(b) is derived and forbidden"},
      {"rules do not see anonymous witnesses", "SubClassOf(A, some(r, B))\nRule(r(?x, ?y), B(?y) -> C(?x))\n"
                                               "ConceptAssertion(A, a)\n",
       "C(a)", false, "the r-successor is not named"},
      {"negative assertion", "ConceptAssertion(A, a)\nNegativeConceptAssertion(A, a)\n", "", false, "A(a) both ways"},
      {"distinct individuals", "SameAs(a, b)\nDifferentIndividuals(a, b)\n", "", false, "a = b and a != b"},
      {"same-as carries facts", "SameAs(a, b)\nConceptAssertion(A, a)\n", "A(b)", true, "b is a"},
  };
}

}  // namespace support
