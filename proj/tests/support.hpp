#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "domino/dominoes.hpp"
#include "domino/interpretation.hpp"
#include "domino/syntax.hpp"

namespace support {

using namespace domino;

std::string data_path(const std::string& name);
std::string read_file(const std::string& path);

struct Vocabulary {
  std::vector<std::string> concepts{"A", "B", "C", "D", "E"};
  std::vector<std::string> roles{"r", "s"};
  bool counting = false;        // allow atleast/atmost
  bool boolean_roles = true;    // allow restricted non-atomic roles
  unsigned max_number = 2;
};

RoleExpr random_role(std::mt19937& rng, const Vocabulary& v);
Concept random_concept(std::mt19937& rng, const Vocabulary& v, int depth);
KnowledgeBase random_tbox(std::mt19937& rng, const Vocabulary& v, int axioms, int depth);
FiniteInterpretation random_interpretation(std::mt19937& rng, const Vocabulary& v, std::size_t size);

// Direct reading of the entailment clauses, for cross-checking.
bool brute_role_entails(const std::set<AtomicRole>& rs, const RoleExpr& u);

// Boolean skeleton of a flat axiom with the concepts in `a` true.
bool eval_skeleton(const Concept& c, const std::set<Concept>& a);

// Interprets the fresh names of FLAT(T) by the concepts they abbreviate, so
// that a model of T becomes a model of the flat TBox.
FiniteInterpretation extend_to_flat(const FiniteInterpretation& i, const KnowledgeBase& flat);

// Empty when every domino of `ds` meets all construction and removal
// conditions against the flat TBox and `ds` itself; else a description.
std::string closure_violation(const DominoSet& ds, const KnowledgeBase& flat);

}  // namespace support
