#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "domino/compile.hpp"
#include "domino/syntax.hpp"

namespace domino {

// Name of the equality predicate in programs and serialized text.
inline constexpr const char* kEqualityPredicate = "~";

struct DTerm {
  bool variable = false;
  std::string name;  // serialized spelling: variables capitalized

  static DTerm var(std::string n) { return {true, std::move(n)}; }
  static DTerm constant(std::string n) { return {false, std::move(n)}; }
  auto operator<=>(const DTerm&) const = default;
};

struct DAtom {
  std::string predicate;
  std::vector<DTerm> args;
  bool is_equality() const { return predicate == kEqualityPredicate; }
  auto operator<=>(const DAtom&) const = default;
};

// Disjunctive head, conjunctive body. Empty head is a constraint, empty body a
// fact.
struct DatalogRule {
  std::vector<DAtom> head;
  std::vector<DAtom> body;
  bool operator==(const DatalogRule&) const = default;
};

struct PredicateInfo {
  enum class Kind : std::uint8_t { Concept, Role, Node };
  Kind kind = Kind::Concept;
  std::string name;   // s_c<k>, s_r<k>, a_<k>, a_root, a_true, a_false
  std::string label;  // concept or role syntax; "node <id> <var label>" for nodes
  std::size_t arity() const { return kind == Kind::Concept ? 1 : 2; }
  bool operator==(const PredicateInfo&) const = default;
};

class DatalogProgram {
 public:
  std::vector<PredicateInfo> predicates;  // first-registration order
  std::vector<std::string> constants;
  std::vector<DatalogRule> rules;
  std::vector<std::string> diagnostics;  // not serialized

  const PredicateInfo* find(std::string_view name) const;
  // Predicate standing for the concept / role name, if any.
  std::optional<std::string> concept_predicate(const Concept& c) const;
  std::optional<std::string> role_predicate(const std::string& role) const;
  // Registers the predicate if missing and returns its name.
  std::string intern(PredicateInfo::Kind kind, const std::string& label);

  bool uses_equality() const;
  bool operator==(const DatalogProgram& o) const {
    return predicates == o.predicates && constants == o.constants && rules == o.rules;
  }
};

struct EmitStats {
  std::size_t labeled_nodes = 0;  // non-terminal nodes reachable from the root
  std::size_t rule_atoms = 0;     // rules emitted from DL-safe rules
};

// The program simulating τ over every pair of individuals, plus the DL-safe
// rules of `kb` with concept and role atoms replaced by their predicates.
// Conjunctive heads are split into one rule per head atom.
DatalogProgram emit_program(const CompiledTBox& ct, const KnowledgeBase& kb, EmitStats* stats = nullptr);

// Reflexivity facts for every constant; with `full`, also symmetry,
// transitivity and congruence for every predicate argument position.
void axiomatize_equality(DatalogProgram& p, bool full);

void serialize(std::ostream& out, const DatalogProgram& p);
std::string serialize(const DatalogProgram& p);
// Reads the serialized form back; throws ParseError.
DatalogProgram parse_program(std::string_view text);

std::string to_string(const DAtom& a);
std::string to_string(const DatalogRule& r);

}  // namespace domino
