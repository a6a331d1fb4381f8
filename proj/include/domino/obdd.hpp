#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace domino::obdd {

// Variables are identified with their level: variable 0 is tested first.
using VarId = std::uint32_t;

class Manager;

// Handle to a node of one manager. Equal functions of one manager have equal
// handles.
class Func {
 public:
  Func() = default;

  std::uint32_t id() const { return id_; }
  const Manager* manager() const { return mgr_; }
  bool is_false() const { return id_ == 0; }
  bool is_true() const { return id_ == 1; }
  bool is_constant() const { return id_ < 2; }

  friend bool operator==(const Func& a, const Func& b) { return a.mgr_ == b.mgr_ && a.id_ == b.id_; }

 private:
  friend class Manager;
  Func(const Manager* m, std::uint32_t id) : mgr_(m), id_(id) {}
  const Manager* mgr_ = nullptr;
  std::uint32_t id_ = 0;
};

enum class BinOp : std::uint8_t { And, Or, Implies, Iff, Xor };
enum class Quant : std::uint8_t { Exists, Forall };

class Manager {
 public:
  explicit Manager(std::size_t num_vars, std::size_t cache_bits = 20);
  Manager(const Manager&) = delete;
  Manager& operator=(const Manager&) = delete;

  std::size_t num_vars() const { return num_vars_; }

  Func constant(bool value) const { return Func(this, value ? 1 : 0); }
  Func variable(VarId v);
  Func make_node(VarId v, Func low, Func high);

  Func apply(BinOp op, Func f, Func g);
  Func negate(Func f);
  Func ite(Func f, Func g, Func h);
  Func conj(Func f, Func g) { return apply(BinOp::And, f, g); }
  Func disj(Func f, Func g) { return apply(BinOp::Or, f, g); }
  Func implies(Func f, Func g) { return apply(BinOp::Implies, f, g); }

  Func quantify(Quant q, const std::vector<VarId>& vars, Func f);
  Func exists(const std::vector<VarId>& vars, Func f) { return quantify(Quant::Exists, vars, f); }
  Func forall(const std::vector<VarId>& vars, Func f) { return quantify(Quant::Forall, vars, f); }
  // ∃vars.(f ∧ g) without building the conjunction.
  Func and_exists(Func f, Func g, const std::vector<VarId>& vars);

  // Returns g with g(V) = f(perm(V)). perm must be an involution on all
  // variables of the manager.
  Func rename(const std::vector<VarId>& perm, Func f);
  // The function f of `src` with source variable v read as level_map[v] of
  // this manager. The map need not preserve the order.
  Func import(const Manager& src, Func f, const std::vector<VarId>& level_map);

  bool is_equal(Func f, Func g) const;
  bool evaluate(Func f, const std::vector<bool>& assignment) const;
  // Calls visit once per satisfying total assignment, in lexicographic order
  // with false before true. Stops early when visit returns false.
  void enumerate(Func f, const std::function<bool(const std::vector<bool>&)>& visit) const;
  double sat_count(Func f) const;

  // Reachable nodes, terminals included.
  std::size_t node_count(Func f) const;
  std::size_t total_nodes() const { return nodes_.size(); }

  VarId top_var(Func f) const;
  Func low(Func f) const;
  Func high(Func f) const;
  // Reachable internal nodes, parents before children.
  std::vector<Func> internal_nodes(Func f) const;

  // High edges solid, low edges dashed.
  void write_dot(std::ostream& out, Func f, const std::function<std::string(VarId)>& label) const;

  // Checks ordering, reduction and uniqueness of every node.
  bool audit(std::string* why = nullptr) const;
  void clear_cache();

 private:
  struct Node {
    VarId var;
    std::uint32_t low, high;
  };
  // The op code sits in the top bits of `key`; node ids stay below 2^28.
  struct CacheEntry {
    std::uint32_t key = 0, b = 0, c = 0, result = kNoResult;
  };
  static constexpr std::uint32_t kNoResult = 0xFFFFFFFFu;
  static constexpr std::uint32_t kMaxNodes = 1u << 28;

  void check(Func f) const;
  std::uint32_t mk(VarId v, std::uint32_t low, std::uint32_t high);
  void grow_unique();
  void grow_cache();
  VarId var_of(std::uint32_t id) const { return nodes_[id].var; }
  bool lookup(std::uint32_t op, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t& out) const;
  void store(std::uint32_t op, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t result);

  std::uint32_t apply_rec(BinOp op, std::uint32_t f, std::uint32_t g);
  std::uint32_t not_rec(std::uint32_t f);
  std::uint32_t ite_rec(std::uint32_t f, std::uint32_t g, std::uint32_t h);
  std::uint32_t exists_rec(std::uint32_t f, std::uint32_t cube);
  std::uint32_t and_exists_rec(std::uint32_t f, std::uint32_t g, std::uint32_t cube);
  std::uint32_t cube_of(const std::vector<VarId>& vars);

  std::size_t num_vars_;
  std::vector<Node> nodes_;
  // Open addressing over node ids; 0 marks a free slot since terminals are
  // never stored.
  std::vector<std::uint32_t> unique_;
  std::size_t unique_mask_;
  std::vector<CacheEntry> cache_;
  std::size_t cache_mask_;
  std::size_t max_cache_bits_;
};

}  // namespace domino::obdd
