#include "domino/obdd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "domino/error.hpp"

namespace domino::obdd {

namespace {

enum CacheOp : std::uint32_t {
  kAnd = 1,
  kOr,
  kImplies,
  kIff,
  kXor,
  kNot,
  kIte,
  kExists,
  kAndExists,
};

std::uint32_t op_code(BinOp op) {
  switch (op) {
    case BinOp::And: return kAnd;
    case BinOp::Or: return kOr;
    case BinOp::Implies: return kImplies;
    case BinOp::Iff: return kIff;
    case BinOp::Xor: return kXor;
  }
  return 0;
}

std::size_t hash4(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
  std::uint64_t h = a * 0x9E3779B97F4A7C15ULL;
  h ^= (b + 0x632BE59BD9B4E019ULL) * 0xBF58476D1CE4E5B9ULL;
  h ^= (c + 0x85EBCA77C2B2AE63ULL) * 0x94D049BB133111EBULL;
  h ^= (d + 0x27D4EB2F165667C5ULL) * 0xD6E8FEB86659FD93ULL;
  return static_cast<std::size_t>(h ^ (h >> 31));
}

}  // namespace

// The cache doubles with the node count up to this size.
constexpr std::size_t kMaxCacheBits = 22;

Manager::Manager(std::size_t num_vars, std::size_t cache_bits)
    : num_vars_(num_vars),
      unique_(std::size_t{1} << 12),
      unique_mask_((std::size_t{1} << 12) - 1),
      cache_(std::size_t{1} << cache_bits),
      cache_mask_((std::size_t{1} << cache_bits) - 1),
      max_cache_bits_(std::max(cache_bits, kMaxCacheBits)) {
  const VarId terminal = static_cast<VarId>(num_vars);
  nodes_.push_back({terminal, 0, 0});
  nodes_.push_back({terminal, 1, 1});
}

void Manager::check(Func f) const {
  if (f.mgr_ != this) throw Error("OBDD operand belongs to a different manager");
}

std::uint32_t Manager::mk(VarId v, std::uint32_t low, std::uint32_t high) {
  if (low == high) return low;
  std::size_t slot = hash4(v, low, high, 0) & unique_mask_;
  for (;; slot = (slot + 1) & unique_mask_) {
    const std::uint32_t id = unique_[slot];
    if (id == 0) break;
    const Node& n = nodes_[id];
    if (n.var == v && n.low == low && n.high == high) return id;
  }
  auto id = static_cast<std::uint32_t>(nodes_.size());
  if (id >= kMaxNodes) throw CapacityError("OBDD node table is full");
  nodes_.push_back({v, low, high});
  unique_[slot] = id;
  if (2 * nodes_.size() > unique_.size()) grow_unique();
  if (nodes_.size() > cache_.size() && cache_.size() < (std::size_t{1} << max_cache_bits_)) grow_cache();
  return id;
}

void Manager::grow_unique() {
  std::vector<std::uint32_t> next(unique_.size() * 2, 0);
  const std::size_t mask = next.size() - 1;
  for (std::uint32_t id = 2; id < nodes_.size(); ++id) {
    const Node& n = nodes_[id];
    std::size_t slot = hash4(n.var, n.low, n.high, 0) & mask;
    while (next[slot] != 0) slot = (slot + 1) & mask;
    next[slot] = id;
  }
  unique_ = std::move(next);
  unique_mask_ = mask;
}

void Manager::grow_cache() {
  std::vector<CacheEntry> next(cache_.size() * 2);
  const std::size_t mask = next.size() - 1;
  for (const auto& e : cache_) {
    if (e.result != kNoResult) next[hash4(e.key, e.b, e.c, 0) & mask] = e;
  }
  cache_ = std::move(next);
  cache_mask_ = mask;
}

bool Manager::lookup(std::uint32_t op, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t& out) const {
  const std::uint32_t key = op << 28 | a;
  const CacheEntry& e = cache_[hash4(key, b, c, 0) & cache_mask_];
  if (e.result != kNoResult && e.key == key && e.b == b && e.c == c) {
    out = e.result;
    return true;
  }
  return false;
}

void Manager::store(std::uint32_t op, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t result) {
  const std::uint32_t key = op << 28 | a;
  cache_[hash4(key, b, c, 0) & cache_mask_] = {key, b, c, result};
}

void Manager::clear_cache() { std::fill(cache_.begin(), cache_.end(), CacheEntry{}); }

Func Manager::variable(VarId v) {
  if (v >= num_vars_) throw Error("unknown OBDD variable " + std::to_string(v));
  return Func(this, mk(v, 0, 1));
}

Func Manager::make_node(VarId v, Func low, Func high) {
  check(low);
  check(high);
  if (v >= num_vars_) throw Error("unknown OBDD variable " + std::to_string(v));
  if (var_of(low.id_) <= v || var_of(high.id_) <= v) throw Error("make_node would violate the variable order");
  return Func(this, mk(v, low.id_, high.id_));
}

// ------------------------------------------------------------------- apply

std::uint32_t Manager::not_rec(std::uint32_t f) {
  if (f < 2) return 1 - f;
  std::uint32_t r;
  if (lookup(kNot, f, 0, 0, r)) return r;
  const Node n = nodes_[f];
  r = mk(n.var, not_rec(n.low), not_rec(n.high));
  store(kNot, f, 0, 0, r);
  return r;
}

std::uint32_t Manager::apply_rec(BinOp op, std::uint32_t f, std::uint32_t g) {
  switch (op) {
    case BinOp::And:
      if (f == 0 || g == 0) return 0;
      if (f == 1) return g;
      if (g == 1 || f == g) return f;
      break;
    case BinOp::Or:
      if (f == 1 || g == 1) return 1;
      if (f == 0) return g;
      if (g == 0 || f == g) return f;
      break;
    case BinOp::Implies:
      if (f == 0 || g == 1 || f == g) return 1;
      if (f == 1) return g;
      if (g == 0) return not_rec(f);
      break;
    case BinOp::Iff:
      if (f == g) return 1;
      if (f == 1) return g;
      if (g == 1) return f;
      if (f == 0) return not_rec(g);
      if (g == 0) return not_rec(f);
      break;
    case BinOp::Xor:
      if (f == g) return 0;
      if (f == 0) return g;
      if (g == 0) return f;
      if (f == 1) return not_rec(g);
      if (g == 1) return not_rec(f);
      break;
  }
  if (op != BinOp::Implies && f > g) std::swap(f, g);
  const std::uint32_t code = op_code(op);
  std::uint32_t r;
  if (lookup(code, f, g, 0, r)) return r;
  const Node nf = nodes_[f];
  const Node ng = nodes_[g];
  const VarId v = std::min(nf.var, ng.var);
  const std::uint32_t f0 = nf.var == v ? nf.low : f, f1 = nf.var == v ? nf.high : f;
  const std::uint32_t g0 = ng.var == v ? ng.low : g, g1 = ng.var == v ? ng.high : g;
  const std::uint32_t lo = apply_rec(op, f0, g0);
  const std::uint32_t hi = apply_rec(op, f1, g1);
  r = mk(v, lo, hi);
  store(code, f, g, 0, r);
  return r;
}

Func Manager::apply(BinOp op, Func f, Func g) {
  check(f);
  check(g);
  return Func(this, apply_rec(op, f.id_, g.id_));
}

Func Manager::negate(Func f) {
  check(f);
  return Func(this, not_rec(f.id_));
}

std::uint32_t Manager::ite_rec(std::uint32_t f, std::uint32_t g, std::uint32_t h) {
  if (f == 1) return g;
  if (f == 0) return h;
  if (g == h) return g;
  if (g == 1 && h == 0) return f;
  if (g == 0 && h == 1) return not_rec(f);
  if (g == 1) return apply_rec(BinOp::Or, f, h);
  if (g == 0) return apply_rec(BinOp::And, not_rec(f), h);
  if (h == 0) return apply_rec(BinOp::And, f, g);
  if (h == 1) return apply_rec(BinOp::Implies, f, g);
  std::uint32_t r;
  if (lookup(kIte, f, g, h, r)) return r;
  const VarId v = std::min({var_of(f), var_of(g), var_of(h)});
  auto cof = [&](std::uint32_t x, bool hi) {
    const Node& n = nodes_[x];
    return n.var == v ? (hi ? n.high : n.low) : x;
  };
  const std::uint32_t lo = ite_rec(cof(f, false), cof(g, false), cof(h, false));
  const std::uint32_t hi = ite_rec(cof(f, true), cof(g, true), cof(h, true));
  r = mk(v, lo, hi);
  store(kIte, f, g, h, r);
  return r;
}

Func Manager::ite(Func f, Func g, Func h) {
  check(f);
  check(g);
  check(h);
  return Func(this, ite_rec(f.id_, g.id_, h.id_));
}

// -------------------------------------------------------------- quantifiers

std::uint32_t Manager::cube_of(const std::vector<VarId>& vars) {
  std::vector<VarId> vs(vars);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  std::uint32_t cube = 1;
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) {
    if (*it >= num_vars_) throw Error("unknown OBDD variable " + std::to_string(*it));
    cube = mk(*it, 0, cube);
  }
  return cube;
}

std::uint32_t Manager::exists_rec(std::uint32_t f, std::uint32_t cube) {
  if (f < 2) return f;
  const VarId v = var_of(f);
  while (cube != 1 && var_of(cube) < v) cube = nodes_[cube].high;
  if (cube == 1) return f;
  std::uint32_t r;
  if (lookup(kExists, f, cube, 0, r)) return r;
  const Node n = nodes_[f];
  if (var_of(cube) == v) {
    const std::uint32_t rest = nodes_[cube].high;
    const std::uint32_t lo = exists_rec(n.low, rest);
    r = lo == 1 ? 1 : apply_rec(BinOp::Or, lo, exists_rec(n.high, rest));
  } else {
    const std::uint32_t lo = exists_rec(n.low, cube);
    const std::uint32_t hi = exists_rec(n.high, cube);
    r = mk(v, lo, hi);
  }
  store(kExists, f, cube, 0, r);
  return r;
}

Func Manager::quantify(Quant q, const std::vector<VarId>& vars, Func f) {
  check(f);
  const std::uint32_t cube = cube_of(vars);
  if (q == Quant::Exists) return Func(this, exists_rec(f.id_, cube));
  return Func(this, not_rec(exists_rec(not_rec(f.id_), cube)));
}

std::uint32_t Manager::and_exists_rec(std::uint32_t f, std::uint32_t g, std::uint32_t cube) {
  if (f == 0 || g == 0) return 0;
  if (f == 1 && g == 1) return 1;
  if (cube == 1) return apply_rec(BinOp::And, f, g);
  if (f == 1 || f == g) return exists_rec(g, cube);
  if (g == 1) return exists_rec(f, cube);
  if (f > g) std::swap(f, g);
  const VarId v = std::min(var_of(f), var_of(g));
  while (cube != 1 && var_of(cube) < v) cube = nodes_[cube].high;
  if (cube == 1) return apply_rec(BinOp::And, f, g);
  std::uint32_t r;
  if (lookup(kAndExists, f, g, cube, r)) return r;
  const Node nf = nodes_[f];
  const Node ng = nodes_[g];
  const std::uint32_t f0 = nf.var == v ? nf.low : f, f1 = nf.var == v ? nf.high : f;
  const std::uint32_t g0 = ng.var == v ? ng.low : g, g1 = ng.var == v ? ng.high : g;
  if (var_of(cube) == v) {
    const std::uint32_t rest = nodes_[cube].high;
    const std::uint32_t lo = and_exists_rec(f0, g0, rest);
    r = lo == 1 ? 1 : apply_rec(BinOp::Or, lo, and_exists_rec(f1, g1, rest));
  } else {
    const std::uint32_t lo = and_exists_rec(f0, g0, cube);
    const std::uint32_t hi = and_exists_rec(f1, g1, cube);
    r = mk(v, lo, hi);
  }
  store(kAndExists, f, g, cube, r);
  return r;
}

Func Manager::and_exists(Func f, Func g, const std::vector<VarId>& vars) {
  check(f);
  check(g);
  return Func(this, and_exists_rec(f.id_, g.id_, cube_of(vars)));
}

// ------------------------------------------------------------------- rename
Func Manager::import(const Manager& src, Func f, const std::vector<VarId>& level_map) {
  src.check(f);
  if (level_map.size() != src.num_vars_) throw Error("import map must cover every source variable");
  for (VarId l : level_map) {
    if (l >= num_vars_) throw Error("import map leaves the target manager");
  }
  std::unordered_map<std::uint32_t, std::uint32_t> memo;
  memo.reserve(src.node_count(f));
  std::function<std::uint32_t(std::uint32_t)> go = [&](std::uint32_t x) -> std::uint32_t {
    if (x < 2) return x;
    auto it = memo.find(x);
    if (it != memo.end()) return it->second;
    const Node n = src.nodes_[x];
    const std::uint32_t lo = go(n.low);
    const std::uint32_t hi = go(n.high);
    const std::uint32_t r = ite_rec(mk(level_map[n.var], 0, 1), hi, lo);
    memo.emplace(x, r);
    return r;
  };
  return Func(this, go(f.id_));
}


Func Manager::rename(const std::vector<VarId>& perm, Func f) {
  check(f);
  if (perm.size() != num_vars_) throw Error("rename map must cover every variable");
  for (VarId v = 0; v < perm.size(); ++v) {
    if (perm[v] >= num_vars_ || perm[perm[v]] != v) throw Error("rename map is not an involution");
  }
  std::unordered_map<std::uint32_t, std::uint32_t> memo;
  memo.reserve(node_count(f));
  std::function<std::uint32_t(std::uint32_t)> go = [&](std::uint32_t x) -> std::uint32_t {
    if (x < 2) return x;
    auto it = memo.find(x);
    if (it != memo.end()) return it->second;
    const Node n = nodes_[x];
    const std::uint32_t lo = go(n.low);
    const std::uint32_t hi = go(n.high);
    const std::uint32_t r = ite_rec(mk(perm[n.var], 0, 1), hi, lo);
    memo.emplace(x, r);
    return r;
  };
  return Func(this, go(f.id_));
}

// -------------------------------------------------------------- inspection

bool Manager::is_equal(Func f, Func g) const {
  check(f);
  check(g);
  return f.id_ == g.id_;
}

bool Manager::evaluate(Func f, const std::vector<bool>& assignment) const {
  check(f);
  if (assignment.size() < num_vars_) throw Error("assignment shorter than the variable count");
  std::uint32_t x = f.id_;
  while (x >= 2) x = assignment[nodes_[x].var] ? nodes_[x].high : nodes_[x].low;
  return x == 1;
}

void Manager::enumerate(Func f, const std::function<bool(const std::vector<bool>&)>& visit) const {
  check(f);
  std::vector<bool> a(num_vars_, false);
  bool go_on = true;
  std::function<void(VarId, std::uint32_t)> rec = [&](VarId level, std::uint32_t x) {
    if (!go_on || x == 0) return;
    if (level == num_vars_) {
      go_on = visit(a);
      return;
    }
    const Node& n = nodes_[x];
    for (bool value : {false, true}) {
      a[level] = value;
      rec(level + 1, n.var == level ? (value ? n.high : n.low) : x);
    }
    a[level] = false;
  };
  rec(0, f.id_);
}

double Manager::sat_count(Func f) const {
  check(f);
  std::unordered_map<std::uint32_t, double> memo;
  // Count over the variables at or below the node's level.
  std::function<double(std::uint32_t)> rec = [&](std::uint32_t x) -> double {
    if (x < 2) return x;
    auto it = memo.find(x);
    if (it != memo.end()) return it->second;
    const Node& n = nodes_[x];
    double lo = rec(n.low) * std::ldexp(1.0, static_cast<int>(var_of(n.low) - n.var - 1));
    double hi = rec(n.high) * std::ldexp(1.0, static_cast<int>(var_of(n.high) - n.var - 1));
    memo.emplace(x, lo + hi);
    return lo + hi;
  };
  return rec(f.id_) * std::ldexp(1.0, static_cast<int>(var_of(f.id_)));
}

std::size_t Manager::node_count(Func f) const {
  check(f);
  std::unordered_set<std::uint32_t> seen;
  std::vector<std::uint32_t> stack{f.id_};
  while (!stack.empty()) {
    std::uint32_t x = stack.back();
    stack.pop_back();
    if (!seen.insert(x).second || x < 2) continue;
    stack.push_back(nodes_[x].low);
    stack.push_back(nodes_[x].high);
  }
  return seen.size();
}

VarId Manager::top_var(Func f) const {
  check(f);
  return var_of(f.id_);
}

Func Manager::low(Func f) const {
  check(f);
  if (f.id_ < 2) throw Error("terminal node has no children");
  return Func(this, nodes_[f.id_].low);
}

Func Manager::high(Func f) const {
  check(f);
  if (f.id_ < 2) throw Error("terminal node has no children");
  return Func(this, nodes_[f.id_].high);
}

std::vector<Func> Manager::internal_nodes(Func f) const {
  check(f);
  std::vector<Func> out;
  std::unordered_set<std::uint32_t> seen;
  std::vector<std::uint32_t> queue{f.id_};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    std::uint32_t x = queue[i];
    if (x < 2 || !seen.insert(x).second) continue;
    out.push_back(Func(this, x));
    queue.push_back(nodes_[x].high);
    queue.push_back(nodes_[x].low);
  }
  return out;
}

void Manager::write_dot(std::ostream& out, Func f, const std::function<std::string(VarId)>& label) const {
  check(f);
  out << "digraph obdd {\n";
  out << "  n0 [shape=box,label=\"0\"];\n  n1 [shape=box,label=\"1\"];\n";
  for (Func n : internal_nodes(f)) {
    const Node& x = nodes_[n.id_];
    std::string l = label ? label(x.var) : "x" + std::to_string(x.var);
    std::string escaped;
    for (char c : l) {
      if (c == '"' || c == '\\') escaped += '\\';
      escaped += c;
    }
    out << "  n" << n.id_ << " [label=\"" << escaped << "\"];\n";
    out << "  n" << n.id_ << " -> n" << x.high << ";\n";
    out << "  n" << n.id_ << " -> n" << x.low << " [style=dashed];\n";
  }
  out << "}\n";
}

bool Manager::audit(std::string* why) const {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  std::set<std::tuple<VarId, std::uint32_t, std::uint32_t>> seen;
  for (std::uint32_t i = 2; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (n.var >= num_vars_) return fail("node " + std::to_string(i) + " has an out-of-range variable");
    if (n.low == n.high) return fail("node " + std::to_string(i) + " is redundant");
    if (n.low >= i || n.high >= i) return fail("node " + std::to_string(i) + " points forward");
    if (var_of(n.low) <= n.var || var_of(n.high) <= n.var) {
      return fail("node " + std::to_string(i) + " violates the variable order");
    }
    if (!seen.emplace(n.var, n.low, n.high).second) return fail("node " + std::to_string(i) + " is duplicated");
    std::size_t slot = hash4(n.var, n.low, n.high, 0) & unique_mask_;
    while (unique_[slot] != 0 && unique_[slot] != i) slot = (slot + 1) & unique_mask_;
    if (unique_[slot] != i) return fail("node " + std::to_string(i) + " is missing from the unique table");
  }
  return true;
}

}  // namespace domino::obdd
