#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "domino/syntax.hpp"

namespace domino {

// What one stage changed: axioms present only in its output (added), only in
// its input (removed), and the names it introduced.
struct StageTrace {
  std::string stage;
  std::vector<std::string> fresh_names;
  std::vector<Axiom> added;
  std::vector<Axiom> removed;
};

struct ReductionTrace {
  std::vector<StageTrace> stages;

  // One line per added or removed axiom: stage TAB action TAB axiom.
  void write(std::ostream& out) const;
  std::string str() const;
};

StageTrace diff_stage(const std::string& stage, const KnowledgeBase& before, const KnowledgeBase& after);
// Applies the recorded removals and additions to `kb`.
KnowledgeBase replay(const KnowledgeBase& kb, const StageTrace& t);

// The closure used by transitivity elimination, in insertion order.
std::vector<Concept> cl_closure(const KnowledgeBase& kb);

// Replaces every counting restriction over a non-atomic role U by one over a
// fresh role R_U and pins R_U to U with ∀(U⊓¬R_U).⊥ and ∀(¬U⊓R_U).⊥.
KnowledgeBase atomize_counting_roles(const KnowledgeBase& kb);

KnowledgeBase transform_es(const KnowledgeBase& kb);   // transitivity
KnowledgeBase transform_ege(const KnowledgeBase& kb);  // at-least restrictions
KnowledgeBase transform_eh(const KnowledgeBase& kb);   // role inclusions
KnowledgeBase transform_ele(const KnowledgeBase& kb);  // at-most restrictions
KnowledgeBase transform_ef(const KnowledgeBase& kb);   // functionality

// Es, counting-role atomization, Ege, Eh, Ele, Ef in that order.
KnowledgeBase transform_full(const KnowledgeBase& kb, ReductionTrace* trace = nullptr);

// Stage postconditions, used by tests and debug checks.
bool has_transitivity(const KnowledgeBase& kb);
bool has_at_least(const KnowledgeBase& kb);
bool has_at_most_other_than_functionality(const KnowledgeBase& kb);
bool has_counting(const KnowledgeBase& kb);
bool is_functionality_axiom(const Concept& c);

}  // namespace domino
