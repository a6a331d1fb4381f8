#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "domino/dominoes.hpp"
#include "domino/obdd.hpp"
#include "domino/syntax.hpp"

namespace domino {

// One Boolean variable of the domino encoding: an atomic role, or a concept
// of the universe on the left (side 1) or right (side 2) of a domino.
struct DominoVar {
  enum class Kind : std::uint8_t { Role, Concept };
  Kind kind = Kind::Role;
  std::size_t index = 0;  // into DominoUniverse roles or concepts
  int side = 0;           // 1 or 2 for concept variables

  static DominoVar role(std::size_t i) { return {Kind::Role, i, 0}; }
  static DominoVar concept_var(std::size_t i, int side) { return {Kind::Concept, i, side}; }
  bool operator==(const DominoVar&) const = default;
};

// Role labels are the role syntax ("r", "inv(r)"); concept labels are
// "<C,1>" or "<C,2>" with C in concept syntax.
std::string var_label(const DominoUniverse& u, const DominoVar& v);

struct VariableOrder {
  enum class Kind { Default, Interleaved, Explicit };
  Kind kind = Kind::Default;
  std::vector<std::string> labels;  // Explicit only, first label tested first

  static VariableOrder interleaved() { return {Kind::Interleaved, {}}; }
  static VariableOrder explicit_order(std::vector<std::string> labels) { return {Kind::Explicit, std::move(labels)}; }
  // One label per line; blank lines and lines starting with '#' are skipped.
  static VariableOrder from_file(const std::string& path);
};

// Maps domino variables to OBDD levels.
class DominoEncoding {
 public:
  DominoEncoding(DominoUniverse u, const VariableOrder& order = {});

  const DominoUniverse& universe() const { return universe_; }
  std::size_t var_count() const { return at_level_.size(); }
  obdd::VarId level(const DominoVar& v) const;
  const DominoVar& var_at(obdd::VarId level) const { return at_level_[level]; }
  std::string label_at(obdd::VarId level) const { return var_label(universe_, at_level_[level]); }
  std::size_t concept_index(const Concept& c) const;  // throws when c is not in the universe

  // Involution swapping sides and inverting roles.
  std::vector<obdd::VarId> swap_permutation() const;
  // Role variables and side-2 concept variables.
  std::vector<obdd::VarId> right_and_role_levels() const;

 private:
  std::size_t canonical(const DominoVar& v) const;

  DominoUniverse universe_;
  std::vector<DominoVar> at_level_;
  std::vector<obdd::VarId> level_of_;  // indexed by canonical position
  std::unordered_map<Concept, std::size_t> concept_pos_;
};

obdd::Func encode_concept(obdd::Manager& m, const DominoEncoding& e, const Concept& c, int side = 1);
obdd::Func encode_role(obdd::Manager& m, const DominoEncoding& e, const RoleExpr& u);
// φkb ∧ φuni ∧ φex over a flat TBox.
obdd::Func build_initial(obdd::Manager& m, const DominoEncoding& e, const KnowledgeBase& flat);

struct CompileOptions {
  VariableOrder order;
  std::size_t cache_bits = 20;
  // Run the elimination in the interleaved order and carry the fixpoint over
  // to `order`. The result is the same function either way.
  bool search_interleaved = true;
};

struct CompileStats {
  std::size_t variables = 0;
  std::size_t iterations = 0;
  std::size_t nodes = 0;  // node count of the final function
};

class CompiledTBox {
 public:
  CompiledTBox(DominoEncoding enc, std::unique_ptr<obdd::Manager> m, obdd::Func tau, CompileStats stats);

  const DominoEncoding& encoding() const { return enc_; }
  const DominoUniverse& universe() const { return enc_.universe(); }
  obdd::Manager& manager() const { return *mgr_; }
  obdd::Func tau() const { return tau_; }
  const CompileStats& stats() const { return stats_; }
  void set_stats(const CompileStats& s) { stats_ = s; }
  bool satisfiable() const { return !tau_.is_false(); }

 private:
  DominoEncoding enc_;
  std::unique_ptr<obdd::Manager> mgr_;
  obdd::Func tau_;
  CompileStats stats_;
};

// Flattens the TBox of `kb` and iterates the symbolic domino elimination to
// its fixpoint. The TBox must be free of counting restrictions.
CompiledTBox fixpoint_compile(const KnowledgeBase& kb, const CompileOptions& opt = {});

// OBDD of an explicit domino set, in the same encoding fixpoint_compile uses.
CompiledTBox compile_domino_set(const DominoSet& ds, const CompileOptions& opt = {});

DominoSet extract_domino_set(const CompiledTBox& ct, std::size_t cap = 22);

}  // namespace domino
