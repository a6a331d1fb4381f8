#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "domino/datalog.hpp"

namespace domino {

struct GroundAtom {
  std::string predicate;
  std::vector<std::string> args;
  auto operator<=>(const GroundAtom&) const = default;
};

std::string to_string(const GroundAtom& a);

// A ground rule read as a clause: some body atom false or some head atom true.
struct GroundClause {
  std::vector<std::uint32_t> head;
  std::vector<std::uint32_t> body;
};

class GroundProgram {
 public:
  std::uint32_t intern(const GroundAtom& a);
  std::optional<std::uint32_t> find(const GroundAtom& a) const;
  const GroundAtom& atom(std::uint32_t i) const { return atoms_[i]; }
  std::size_t atom_count() const { return atoms_.size(); }

  // Drops duplicate literals; clauses with an atom in head and body are
  // tautologies and are not stored.
  void add_clause(std::vector<std::uint32_t> head, std::vector<std::uint32_t> body);
  const std::vector<GroundClause>& clauses() const { return clauses_; }

 private:
  struct Hash {
    std::size_t operator()(const GroundAtom& a) const noexcept;
  };
  std::vector<GroundAtom> atoms_;
  std::unordered_map<GroundAtom, std::uint32_t, Hash> index_;
  std::vector<GroundClause> clauses_;
};

// Instantiates every rule under all maps from its variables to constants.
// The constants are the program's constants plus any constant its rules
// mention. Equality is axiomatized on the fly: reflexivity always, and the
// full theory when `full_equality` is set.
GroundProgram ground(const DatalogProgram& p, bool full_equality);
// Full equality exactly when the program mentions '~'.
GroundProgram ground(const DatalogProgram& p);

struct SolveStats {
  std::size_t decisions = 0;
  std::size_t propagations = 0;
  std::size_t conflicts = 0;
};

// Conflict-driven search: two watched literals, first-UIP clause learning,
// activity-ordered branching with saved phases (false initially) and Luby
// restarts. `assume_false` atoms are fixed to false before search.
bool is_satisfiable(const GroundProgram& g, const std::vector<std::uint32_t>& assume_false = {},
                    SolveStats* stats = nullptr);

// True iff the atom holds in every model of g. An atom g never mentions is
// entailed only by an unsatisfiable program.
bool cautious_entails(const GroundProgram& g, const GroundAtom& a, SolveStats* stats = nullptr);
// Grounds with full equality when the program or the query uses it. Throws
// Error for a predicate the program does not declare or a wrong arity.
bool cautious_entails(const DatalogProgram& p, const GroundAtom& a, SolveStats* stats = nullptr);

struct GroundModel {
  std::vector<std::uint32_t> atoms;  // sorted
  bool operator==(const GroundModel&) const = default;
};

inline constexpr std::size_t kMinimalModelCap = 24;

// Every subset-minimal model exactly once. Throws CapacityError above the
// cap; the cap itself may be raised to 64.
std::vector<GroundModel> enumerate_minimal_models(const GroundProgram& g, std::size_t cap = kMinimalModelCap);

}  // namespace domino
