#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "domino/syntax.hpp"

namespace domino {

using Element = std::size_t;
using ElementPair = std::pair<Element, Element>;

// Domain is {0, ..., size - 1}. Names missing from the maps have empty
// extensions.
struct FiniteInterpretation {
  std::size_t size = 0;
  std::map<std::string, std::set<Element>> concepts;
  std::map<std::string, std::set<ElementPair>> roles;
  std::map<std::string, Element> individuals;
};

std::set<Element> eval_concept(const FiniteInterpretation& i, const Concept& c);
std::set<ElementPair> eval_role(const FiniteInterpretation& i, const RoleExpr& u);

// Checks every TBox axiom, role inclusion and transitivity axiom, and every
// rule under all assignments of its variables to named elements. On failure,
// `why` (when given) receives the first violated axiom.
bool check_model(const FiniteInterpretation& i, const KnowledgeBase& kb, std::string* why = nullptr);

}  // namespace domino
