#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "domino/interpretation.hpp"
#include "domino/syntax.hpp"

namespace domino {

// The concepts and atomic roles a domino ranges over. Concepts are
// parts(FLAT(T)) in first-occurrence order. Atomic roles are indexed with the
// role names first (alphabetical) followed by their inverses in the same order.
struct DominoUniverse {
  std::vector<Concept> concepts;
  std::vector<std::string> role_names;

  std::size_t role_count() const { return 2 * role_names.size(); }
  AtomicRole role(std::size_t i) const;
  std::optional<std::size_t> concept_index(const Concept& c) const;
  std::optional<std::size_t> role_index(const AtomicRole& r) const;
  // Bit mask of the inverse role set.
  std::uint64_t invert_roles(std::uint64_t mask) const;
  bool operator==(const DominoUniverse&) const = default;
};

// Universe of a flat TBox: its parts and the role names its axioms mention.
DominoUniverse make_universe(const KnowledgeBase& flat_kb);

// rs ⊢ u where rs is a role bit mask over the universe.
bool role_entails_mask(const DominoUniverse& u, std::uint64_t roles, const RoleExpr& e);

struct Domino {
  std::set<Concept> left;
  std::set<AtomicRole> roles;
  std::set<Concept> right;
  bool operator==(const Domino&) const = default;
};

// Domino as bit masks relative to a universe.
struct DominoBits {
  std::uint64_t left = 0;
  std::uint64_t roles = 0;
  std::uint64_t right = 0;
  auto operator<=>(const DominoBits&) const = default;
};

class DominoSet {
 public:
  DominoSet() = default;
  DominoSet(DominoUniverse u, std::vector<DominoBits> members);

  const DominoUniverse& universe() const { return universe_; }
  const std::vector<DominoBits>& members() const { return members_; }  // sorted, unique
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const DominoBits& d) const;
  bool contains(const Domino& d) const;

  Domino decode(const DominoBits& d) const;
  std::optional<DominoBits> encode(const Domino& d) const;
  bool subset_of(const DominoSet& other) const;
  bool operator==(const DominoSet&) const = default;

 private:
  DominoUniverse universe_;
  std::vector<DominoBits> members_;
};

// Every (δ, δ') pair of the interpretation, including δ = δ', mapped to the
// domino of concepts and roles it realises.
DominoSet domino_projection(const FiniteInterpretation& i, const DominoUniverse& u);

struct ExplicitOptions {
  // Largest |concepts| + |atomic roles| accepted.
  std::size_t cap = 22;
  // Largest initial domino count accepted.
  std::size_t max_dominoes = std::size_t{1} << 27;
  // When set, the initial set only pairs left sides with right sides that
  // satisfy the TBox axioms themselves. Dominoes with any other right side
  // lack a symmetric partner and leave in the first round, so the fixpoint is
  // the same.
  bool prune_right = true;
};

struct ExplicitStats {
  std::size_t initial = 0;
  std::size_t iterations = 0;
};

// Greatest domino set of the TBox by explicit iteration over bit sets. Uses
// only the TBox of `kb`, which must be ALCIb (no counting restrictions).
DominoSet canonical_domino_set(const KnowledgeBase& kb, const ExplicitOptions& opt = {},
                               ExplicitStats* stats = nullptr);

struct BoundedInterpretation {
  FiniteInterpretation interpretation;
  std::vector<bool> frontier;  // elements whose word has the full depth
};

// Interpretation over chained domino words of length 1..depth. Every
// non-frontier element satisfies the flat axioms the set was built from.
BoundedInterpretation build_bounded_domino_interpretation(const DominoSet& ds, std::size_t depth,
                                                          std::size_t max_elements = 200000);

}  // namespace domino
