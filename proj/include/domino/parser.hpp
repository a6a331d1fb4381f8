#pragma once

#include <string>
#include <string_view>

#include "domino/error.hpp"
#include "domino/syntax.hpp"

namespace domino {

struct ParseOptions {
  // Generated names start with "__"; user input may not use them.
  bool allow_reserved_names = false;
  unsigned number_cap = kDefaultNumberCap;
};

// Functional-syntax knowledge base: one statement per SubClassOf, Valid,
// SubRoleOf, Transitive, ConceptAssertion, RoleAssertion, SameAs, Rule and
// the negative forms NegativeConceptAssertion, NegativeRoleAssertion and
// DifferentIndividuals. '#' starts a comment. Errors carry line and column.
KnowledgeBase parse_kb(std::string_view text, const ParseOptions& opt = {});
KnowledgeBase parse_kb_file(const std::string& path, const ParseOptions& opt = {});

Concept parse_concept(std::string_view text, const ParseOptions& opt = {});
RoleExpr parse_role(std::string_view text, const ParseOptions& opt = {});

// A ground query atom: C(a) for a concept expression C, r(a,b), or a ~ b.
Query parse_query(std::string_view text, const ParseOptions& opt = {});

}  // namespace domino
