#pragma once

#include <set>
#include <utility>
#include <vector>

#include "domino/error.hpp"
#include "domino/syntax.hpp"

namespace domino {

// rs ⊢ u: evaluate u with the atomic roles in rs true and all others false.
bool role_entails(const std::set<AtomicRole>& rs, const RoleExpr& u);
// A role expression is restricted when the empty role set does not entail it.
bool is_restricted(const RoleExpr& u);

struct RoleClassification {
  std::set<AtomicRole> non_simple;
  // Pairs (r, s) with r ⊑* s, including reflexive pairs for every atomic role
  // of the signature.
  std::set<std::pair<AtomicRole, AtomicRole>> subsumed;

  bool is_simple(const AtomicRole& r) const { return !non_simple.count(r); }
  bool sub_role(const AtomicRole& r, const AtomicRole& s) const { return subsumed.count({r, s}) > 0; }
};

RoleClassification classify_roles(const KnowledgeBase& kb);

// Lists every construct outside the supported fragment. Never throws.
std::vector<Violation> validate_shiqbs(const KnowledgeBase& kb, unsigned number_cap = kDefaultNumberCap);

Concept nnf(const Concept& c);
bool is_nnf(const Concept& c);

// Structural flattening: NNF every TBox axiom, then replace each quantified
// subconcept whose filler is not atomic by a fresh name. RBox and rules are
// copied unchanged.
KnowledgeBase flatten(const KnowledgeBase& kb);
bool is_flat(const KnowledgeBase& kb);

// parts in first-occurrence order. Top and Bottom are constants and are never
// parts.
std::vector<Concept> parts_of(const Concept& c);
std::vector<Concept> parts_of(const KnowledgeBase& kb);

}  // namespace domino
