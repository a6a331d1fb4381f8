#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace domino {

// Prefixes reserved for generated names. The parser rejects user names that
// start with "__".
inline constexpr const char* kFlattenPrefix = "__f";
inline constexpr const char* kRolePrefix = "__r";
inline constexpr const char* kSelfPrefix = "__self_";
inline constexpr unsigned kDefaultNumberCap = 64;

struct AtomicRole {
  std::string name;
  bool inverted = false;

  AtomicRole() = default;
  AtomicRole(std::string n, bool inv = false) : name(std::move(n)), inverted(inv) {}

  AtomicRole inverse() const { return AtomicRole(name, !inverted); }
  auto operator<=>(const AtomicRole&) const = default;
};

inline AtomicRole invert(const AtomicRole& r) { return r.inverse(); }

// Boolean role expression over atomic roles. Immutable, shared structure.
class RoleExpr {
 public:
  enum class Kind : std::uint8_t { Atomic, Not, And, Or };

  RoleExpr(AtomicRole r);  // NOLINT: atomic roles are role expressions
  static RoleExpr atomic(std::string name, bool inverted = false);
  static RoleExpr negation(RoleExpr u);
  static RoleExpr conjunction(RoleExpr u, RoleExpr v);
  static RoleExpr disjunction(RoleExpr u, RoleExpr v);

  Kind kind() const;
  bool is_atomic() const { return kind() == Kind::Atomic; }
  const AtomicRole& atom() const;
  const RoleExpr& operand() const;
  const RoleExpr& left() const;
  const RoleExpr& right() const;
  std::size_t hash() const;

  friend bool operator==(const RoleExpr& a, const RoleExpr& b);
  friend std::strong_ordering operator<=>(const RoleExpr& a, const RoleExpr& b);

 private:
  struct Node;
  explicit RoleExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Inverts every atomic role inside the expression.
RoleExpr invert(const RoleExpr& u);
void collect_atomic_roles(const RoleExpr& u, std::set<AtomicRole>& out);

class Concept {
 public:
  enum class Kind : std::uint8_t { Name, Top, Bottom, Not, And, Or, Forall, Exists, AtMost, AtLeast };

  static Concept name(std::string n);
  static Concept top();
  static Concept bottom();
  static Concept negation(Concept c);
  static Concept conjunction(Concept c, Concept d);
  static Concept disjunction(Concept c, Concept d);
  static Concept forall(RoleExpr u, Concept c);
  static Concept exists(RoleExpr u, Concept c);
  static Concept at_most(unsigned n, RoleExpr u, Concept c);
  // at_least(0, ...) is Top.
  static Concept at_least(unsigned n, RoleExpr u, Concept c);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  const std::string& name() const;
  const Concept& operand() const;
  const Concept& left() const;
  const Concept& right() const;
  const RoleExpr& role() const;
  const Concept& filler() const;
  unsigned number() const;

  bool is_quantified() const;  // forall, exists, atmost, atleast
  bool is_counting() const { return is(Kind::AtMost) || is(Kind::AtLeast); }
  // Names, Top and Bottom may stand as fillers in flat axioms.
  bool is_atomic() const { return is(Kind::Name) || is(Kind::Top) || is(Kind::Bottom); }
  std::size_t hash() const;

  friend bool operator==(const Concept& a, const Concept& b);
  friend std::strong_ordering operator<=>(const Concept& a, const Concept& b);

 private:
  struct Node;
  explicit Concept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Concept make(Kind k, std::string name, unsigned n, std::vector<RoleExpr> role,
                      std::vector<Concept> children);
  std::shared_ptr<const Node> node_;
};

Concept conjunction_of(const std::vector<Concept>& cs);  // Top when empty
Concept disjunction_of(const std::vector<Concept>& cs);  // Bottom when empty

struct Term {
  enum class Kind : std::uint8_t { Variable, Individual };
  Kind kind = Kind::Individual;
  std::string name;

  static Term variable(std::string n) { return {Kind::Variable, std::move(n)}; }
  static Term individual(std::string n) { return {Kind::Individual, std::move(n)}; }
  bool is_variable() const { return kind == Kind::Variable; }
  auto operator<=>(const Term&) const = default;
};

struct ConceptAtom {
  std::string concept_name;
  Term arg;
  auto operator<=>(const ConceptAtom&) const = default;
};

struct RoleAtom {
  std::string role;
  Term first, second;
  auto operator<=>(const RoleAtom&) const = default;
};

struct EqualityAtom {
  Term left, right;
  auto operator<=>(const EqualityAtom&) const = default;
};

using Atom = std::variant<ConceptAtom, RoleAtom, EqualityAtom>;

// Atom for an atomic role that may be inverted: R-(s,t) is written R(t,s).
Atom role_atom(const AtomicRole& r, Term s, Term t);

struct Rule {
  std::vector<Atom> body;
  std::vector<Atom> head;
  bool operator==(const Rule&) const = default;
};

// TBox axiom Top ⊑ concept. C ⊑ D is stored as Top ⊑ ¬C ⊔ D.
struct Gci {
  Concept expr;
  bool operator==(const Gci&) const = default;
};

struct RoleInclusion {
  RoleExpr sub, super;
  bool operator==(const RoleInclusion&) const = default;
};

struct Transitivity {
  AtomicRole role;
  bool operator==(const Transitivity&) const = default;
};

using Axiom = std::variant<Gci, RoleInclusion, Transitivity, Rule>;

Gci subclass_of(const Concept& c, const Concept& d);

struct Signature {
  std::set<std::string> concepts;
  std::set<std::string> roles;
  std::set<std::string> individuals;
  bool operator==(const Signature&) const = default;
};

// Axiom lists keep insertion order; structural duplicates are dropped on insert.
class KnowledgeBase {
 public:
  void add(const Axiom& a);
  void add_gci(const Concept& c);
  void add_subclass(const Concept& c, const Concept& d);
  void add_role_inclusion(const RoleExpr& sub, const RoleExpr& super);
  void add_transitivity(const AtomicRole& r);
  void add_rule(const Rule& r);

  // Registers names without adding axioms.
  void declare_concept(const std::string& n) { sig_.concepts.insert(n); }
  void declare_role(const std::string& n) { sig_.roles.insert(n); }
  void declare_individual(const std::string& n) { sig_.individuals.insert(n); }

  const std::vector<Concept>& tbox() const { return tbox_; }
  const std::vector<RoleInclusion>& role_inclusions() const { return inclusions_; }
  const std::vector<Transitivity>& transitivity() const { return transitive_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const Signature& signature() const { return sig_; }

  std::vector<Axiom> axioms() const;

  // Copies that keep the signature but drop one kind of axiom.
  KnowledgeBase without_tbox() const;
  KnowledgeBase without_rules() const;
  KnowledgeBase without_role_inclusions() const;
  KnowledgeBase without_transitivity() const;

  bool is_transitive(const AtomicRole& r) const;
  bool has_individuals() const { return !sig_.individuals.empty(); }

 private:
  void note_concept(const Concept& c);
  void note_role(const RoleExpr& u);
  void note_atom(const Atom& a);

  std::vector<Concept> tbox_;
  std::vector<RoleInclusion> inclusions_;
  std::vector<Transitivity> transitive_;
  std::vector<Rule> rules_;
  Signature sig_;
};

// What a knowledge base is asked: satisfiability or entailment of one ground
// atom. Concept facts may use any concept; complex ones must occur among the
// parts of the compiled TBox.
struct Query {
  enum class Kind : std::uint8_t { Satisfiability, ConceptFact, RoleFact, SameAs };
  Kind kind = Kind::Satisfiability;
  std::vector<Concept> target;  // one entry for ConceptFact
  std::string role;
  std::string first, second;

  static Query satisfiability() { return {}; }
  static Query concept_fact(Concept c, std::string a) { return {Kind::ConceptFact, {std::move(c)}, "", std::move(a), ""}; }
  static Query role_fact(std::string r, std::string a, std::string b) {
    return {Kind::RoleFact, {}, std::move(r), std::move(a), std::move(b)};
  }
  static Query same_as(std::string a, std::string b) { return {Kind::SameAs, {}, "", std::move(a), std::move(b)}; }
};

// Returns a name with the given prefix that is absent from the signature and
// records it there. Numbering continues from the smallest free index.
std::string fresh_concept_name(Signature& sig, const std::string& prefix);
std::string fresh_role_name(Signature& sig, const std::string& prefix);

std::string self_concept_name(const AtomicRole& r);

}  // namespace domino

template <>
struct std::hash<domino::Concept> {
  std::size_t operator()(const domino::Concept& c) const noexcept { return c.hash(); }
};
template <>
struct std::hash<domino::RoleExpr> {
  std::size_t operator()(const domino::RoleExpr& u) const noexcept { return u.hash(); }
};
