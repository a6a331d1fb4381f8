#include "domino/solver.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <unordered_set>

#include "domino/error.hpp"

namespace domino {

std::string to_string(const GroundAtom& a) {
  DAtom d{a.predicate, {}};
  for (const auto& c : a.args) d.args.push_back(DTerm::constant(c));
  return to_string(d);
}

std::size_t GroundProgram::Hash::operator()(const GroundAtom& a) const noexcept {
  std::size_t h = std::hash<std::string>()(a.predicate);
  for (const auto& s : a.args) h = h * 1000003u ^ std::hash<std::string>()(s);
  return h;
}

std::uint32_t GroundProgram::intern(const GroundAtom& a) {
  auto [it, fresh] = index_.try_emplace(a, static_cast<std::uint32_t>(atoms_.size()));
  if (fresh) atoms_.push_back(a);
  return it->second;
}

std::optional<std::uint32_t> GroundProgram::find(const GroundAtom& a) const {
  auto it = index_.find(a);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void GroundProgram::add_clause(std::vector<std::uint32_t> head, std::vector<std::uint32_t> body) {
  std::sort(head.begin(), head.end());
  head.erase(std::unique(head.begin(), head.end()), head.end());
  std::sort(body.begin(), body.end());
  body.erase(std::unique(body.begin(), body.end()), body.end());
  for (auto h : head) {
    if (std::binary_search(body.begin(), body.end(), h)) return;
  }
  clauses_.push_back({std::move(head), std::move(body)});
}

namespace {

void collect_constants(const std::vector<DAtom>& atoms, std::set<std::string>& seen, std::vector<std::string>& out) {
  for (const auto& a : atoms) {
    for (const auto& t : a.args) {
      if (!t.variable && seen.insert(t.name).second) out.push_back(t.name);
    }
  }
}

}  // namespace

GroundProgram ground(const DatalogProgram& src, bool full_equality) {
  DatalogProgram p = src;
  std::set<std::string> seen(p.constants.begin(), p.constants.end());
  for (const auto& r : src.rules) {
    collect_constants(r.head, seen, p.constants);
    collect_constants(r.body, seen, p.constants);
  }
  axiomatize_equality(p, full_equality);

  GroundProgram g;
  const auto& consts = p.constants;
  for (const auto& r : p.rules) {
    std::vector<std::string> vars;
    for (const auto* side : {&r.head, &r.body}) {
      for (const auto& a : *side) {
        for (const auto& t : a.args) {
          if (t.variable && std::find(vars.begin(), vars.end(), t.name) == vars.end()) vars.push_back(t.name);
        }
      }
    }
    if (!vars.empty() && consts.empty()) continue;
    std::vector<std::size_t> pick(vars.size(), 0);
    auto inst = [&](const DAtom& a) {
      GroundAtom ga{a.predicate, {}};
      for (const auto& t : a.args) {
        if (!t.variable) {
          ga.args.push_back(t.name);
        } else {
          auto k = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), t.name) - vars.begin());
          ga.args.push_back(consts[pick[k]]);
        }
      }
      return g.intern(ga);
    };
    for (;;) {
      std::vector<std::uint32_t> head, body;
      for (const auto& a : r.head) head.push_back(inst(a));
      for (const auto& a : r.body) body.push_back(inst(a));
      g.add_clause(std::move(head), std::move(body));
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == consts.size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }
  return g;
}

GroundProgram ground(const DatalogProgram& p) { return ground(p, p.uses_equality()); }

namespace {

// Literal 2v is "atom v true", 2v+1 is "atom v false".
using Lit = std::uint32_t;
constexpr std::uint32_t kNoReason = UINT32_MAX;

// Max-heap of variables keyed by activity.
class VarHeap {
 public:
  explicit VarHeap(const std::vector<double>& act) : act_(act), pos_(act.size(), kAbsent) {}

  bool empty() const { return heap_.empty(); }
  bool contains(std::uint32_t v) const { return pos_[v] != kAbsent; }

  void insert(std::uint32_t v) {
    if (contains(v)) return;
    pos_[v] = heap_.size();
    heap_.push_back(v);
    up(pos_[v]);
  }

  void bumped(std::uint32_t v) {
    if (contains(v)) up(pos_[v]);
  }

  std::uint32_t pop() {
    const std::uint32_t top = heap_.front();
    pos_[top] = kAbsent;
    heap_.front() = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      pos_[heap_.front()] = 0;
      down(0);
    }
    return top;
  }

 private:
  static constexpr std::size_t kAbsent = SIZE_MAX;

  // Ties go to the lower index so that runs are reproducible.
  bool before(std::uint32_t a, std::uint32_t b) const { return act_[a] > act_[b] || (act_[a] == act_[b] && a < b); }

  void place(std::size_t i, std::uint32_t v) {
    heap_[i] = v;
    pos_[v] = i;
  }

  void up(std::size_t i) {
    const std::uint32_t v = heap_[i];
    while (i > 0 && before(v, heap_[(i - 1) / 2])) {
      place(i, heap_[(i - 1) / 2]);
      i = (i - 1) / 2;
    }
    place(i, v);
  }

  void down(std::size_t i) {
    const std::uint32_t v = heap_[i];
    for (;;) {
      std::size_t c = 2 * i + 1;
      if (c >= heap_.size()) break;
      if (c + 1 < heap_.size() && before(heap_[c + 1], heap_[c])) ++c;
      if (!before(heap_[c], v)) break;
      place(i, heap_[c]);
      i = c;
    }
    place(i, v);
  }

  const std::vector<double>& act_;
  std::vector<std::size_t> pos_;
  std::vector<std::uint32_t> heap_;
};

std::uint64_t luby(std::uint64_t i) {
  std::uint64_t size = 1, seq = 0;
  while (size < i + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != i) {
    size = (size - 1) >> 1;
    --seq;
    i %= size;
  }
  return std::uint64_t{1} << seq;
}

class Cdcl {
 public:
  Cdcl(const GroundProgram& g, SolveStats* stats)
      : n_(g.atom_count()), stats_(stats), activity_(n_, 0.0), order_(activity_) {
    val_.assign(n_, -1);
    level_.assign(n_, 0);
    reason_.assign(n_, kNoReason);
    phase_.assign(n_, false);
    seen_.assign(n_, false);
    watch_.resize(2 * n_);
    for (const auto& c : g.clauses()) {
      std::vector<Lit> lits;
      for (auto h : c.head) lits.push_back(2 * h);
      for (auto b : c.body) lits.push_back(2 * b + 1);
      if (lits.empty()) {
        trivially_unsat_ = true;
      } else if (lits.size() == 1) {
        units_.push_back(lits[0]);
      } else {
        add_watched(std::move(lits));
      }
    }
    for (std::uint32_t v = 0; v < n_; ++v) order_.insert(v);
  }

  bool solve(const std::vector<std::uint32_t>& assume_false) {
    if (trivially_unsat_) return false;
    for (auto a : assume_false) {
      if (!enqueue(2 * a + 1, kNoReason)) return false;
    }
    for (Lit l : units_) {
      if (!enqueue(l, kNoReason)) return false;
    }
    std::uint64_t restarts = 0;
    std::uint64_t budget = 64 * luby(restarts);
    std::vector<Lit> learnt;
    for (;;) {
      const std::uint32_t confl = propagate();
      if (confl != kNoReason) {
        if (stats_) ++stats_->conflicts;
        if (decision_level() == 0) return false;
        std::uint32_t back = analyze(confl, learnt);
        undo_to(back);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          const auto id = add_watched(learnt);
          enqueue(learnt[0], id);
        }
        decay();
        if (budget > 0) --budget;
        continue;
      }
      if (budget == 0) {
        undo_to(0);
        budget = 64 * luby(++restarts);
        continue;
      }
      const std::uint32_t v = pick_branch();
      if (v == n_) return true;
      if (stats_) ++stats_->decisions;
      trail_lim_.push_back(trail_.size());
      enqueue(2 * v + (phase_[v] ? 0u : 1u), kNoReason);
    }
  }

 private:
  std::uint32_t decision_level() const { return static_cast<std::uint32_t>(trail_lim_.size()); }

  int value(Lit l) const {
    int v = val_[l >> 1];
    if (v < 0) return -1;
    return (l & 1) ? 1 - v : v;
  }

  std::uint32_t add_watched(std::vector<Lit> lits) {
    const auto id = static_cast<std::uint32_t>(clauses_.size());
    watch_[lits[0]].push_back(id);
    watch_[lits[1]].push_back(id);
    clauses_.push_back(std::move(lits));
    return id;
  }

  bool enqueue(Lit l, std::uint32_t reason) {
    int v = value(l);
    if (v == 0) return false;
    if (v == 1) return true;
    const std::uint32_t x = l >> 1;
    val_[x] = (l & 1) ? 0 : 1;
    level_[x] = decision_level();
    reason_[x] = reason;
    trail_.push_back(l);
    return true;
  }

  // Index of a conflicting clause, or kNoReason.
  std::uint32_t propagate() {
    std::uint32_t confl = kNoReason;
    while (head_ < trail_.size() && confl == kNoReason) {
      const Lit falsified = trail_[head_++] ^ 1u;
      auto& ws = watch_[falsified];
      std::size_t keep = 0;
      for (std::size_t i = 0; i < ws.size(); ++i) {
        const std::uint32_t ci = ws[i];
        if (confl != kNoReason) {
          ws[keep++] = ci;
          continue;
        }
        auto& c = clauses_[ci];
        if (c[0] == falsified) std::swap(c[0], c[1]);
        if (value(c[0]) == 1) {
          ws[keep++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (value(c[k]) != 0) {
            std::swap(c[1], c[k]);
            watch_[c[1]].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[keep++] = ci;
        if (stats_) ++stats_->propagations;
        if (!enqueue(c[0], ci)) confl = ci;
      }
      ws.resize(keep);
    }
    return confl;
  }

  // First-UIP learning. `out[0]` is the asserting literal, `out[1]` one of
  // the highest remaining level. Returns the backjump level.
  std::uint32_t analyze(std::uint32_t confl, std::vector<Lit>& out) {
    out.assign(1, 0);
    int open = 0;
    Lit p = 0;
    bool have_p = false;
    std::size_t idx = trail_.size();
    for (;;) {
      const auto& c = clauses_[confl];
      for (std::size_t k = have_p ? 1 : 0; k < c.size(); ++k) {
        const std::uint32_t x = c[k] >> 1;
        if (seen_[x] || level_[x] == 0) continue;
        seen_[x] = true;
        bump(x);
        if (level_[x] == decision_level()) {
          ++open;
        } else {
          out.push_back(c[k]);
        }
      }
      do {
        p = trail_[--idx];
      } while (!seen_[p >> 1]);
      seen_[p >> 1] = false;
      have_p = true;
      if (--open == 0) break;
      confl = reason_[p >> 1];
      // The reason clause keeps its implied literal first.
      auto& rc = clauses_[confl];
      if (rc[0] != p) std::swap(rc[0], *std::find(rc.begin(), rc.end(), p));
    }
    out[0] = p ^ 1u;
    std::uint32_t back = 0;
    std::size_t best = 1;
    for (std::size_t k = 1; k < out.size(); ++k) {
      seen_[out[k] >> 1] = false;
      if (level_[out[k] >> 1] > back) {
        back = level_[out[k] >> 1];
        best = k;
      }
    }
    if (out.size() > 1) std::swap(out[1], out[best]);
    return back;
  }

  void undo_to(std::uint32_t level) {
    if (decision_level() <= level) return;
    const std::size_t pos = trail_lim_[level];
    while (trail_.size() > pos) {
      const std::uint32_t x = trail_.back() >> 1;
      phase_[x] = val_[x] == 1;
      val_[x] = -1;
      reason_[x] = kNoReason;
      order_.insert(x);
      trail_.pop_back();
    }
    trail_lim_.resize(level);
    head_ = std::min(head_, pos);
  }

  std::uint32_t pick_branch() {
    while (!order_.empty()) {
      const std::uint32_t v = order_.pop();
      if (val_[v] < 0) return v;
    }
    return static_cast<std::uint32_t>(n_);
  }

  void bump(std::uint32_t x) {
    activity_[x] += inc_;
    if (activity_[x] > 1e100) {
      for (auto& a : activity_) a *= 1e-100;
      inc_ *= 1e-100;
    }
    order_.bumped(x);
  }

  void decay() { inc_ /= 0.95; }

  std::size_t n_;
  SolveStats* stats_;
  std::vector<double> activity_;
  VarHeap order_;
  double inc_ = 1.0;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<std::uint32_t>> watch_;
  std::vector<Lit> units_;
  std::vector<int> val_;
  std::vector<std::uint32_t> level_;
  std::vector<std::uint32_t> reason_;
  std::vector<bool> phase_;
  std::vector<bool> seen_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t head_ = 0;
  bool trivially_unsat_ = false;
};

}  // namespace

bool is_satisfiable(const GroundProgram& g, const std::vector<std::uint32_t>& assume_false, SolveStats* stats) {
  return Cdcl(g, stats).solve(assume_false);
}

bool cautious_entails(const GroundProgram& g, const GroundAtom& a, SolveStats* stats) {
  auto idx = g.find(a);
  if (!idx) return !is_satisfiable(g, {}, stats);
  return !is_satisfiable(g, {*idx}, stats);
}

bool cautious_entails(const DatalogProgram& p, const GroundAtom& a, SolveStats* stats) {
  const bool eq = a.predicate == kEqualityPredicate;
  if (!eq) {
    const PredicateInfo* info = p.find(a.predicate);
    if (!info) throw Error("unknown predicate " + a.predicate);
    if (info->arity() != a.args.size()) throw Error("wrong arity for predicate " + a.predicate);
  } else if (a.args.size() != 2) {
    throw Error("equality takes two arguments");
  }
  return cautious_entails(ground(p, eq || p.uses_equality()), a, stats);
}

std::vector<GroundModel> enumerate_minimal_models(const GroundProgram& g, std::size_t cap) {
  if (g.atom_count() > cap || cap > 64) {
    throw CapacityError("minimal model enumeration is limited to " + std::to_string(std::min<std::size_t>(cap, 64)) +
                        " atoms, program has " + std::to_string(g.atom_count()));
  }
  using Bits = std::uint64_t;
  struct Mask {
    Bits head = 0, body = 0;
  };
  std::vector<Mask> cs;
  for (const auto& c : g.clauses()) {
    Mask m;
    for (auto h : c.head) m.head |= Bits{1} << h;
    for (auto b : c.body) m.body |= Bits{1} << b;
    cs.push_back(m);
  }
  // Grow candidate models from the empty set: pick the first violated
  // clause and add one of its head atoms. Every minimal model is reachable
  // by always choosing a head atom it contains.
  std::unordered_set<Bits> visited;
  std::vector<Bits> found;
  std::vector<Bits> stack{0};
  while (!stack.empty()) {
    const Bits m = stack.back();
    stack.pop_back();
    if (!visited.insert(m).second) continue;
    const Mask* violated = nullptr;
    for (const auto& c : cs) {
      if ((c.body & m) == c.body && (c.head & m) == 0) {
        violated = &c;
        break;
      }
    }
    if (!violated) {
      found.push_back(m);
      continue;
    }
    for (Bits h = violated->head; h; h &= h - 1) stack.push_back(m | (h & -h));
  }
  std::sort(found.begin(), found.end(), [](Bits a, Bits b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  std::vector<Bits> minimal;
  for (auto m : found) {
    bool dominated = std::any_of(minimal.begin(), minimal.end(), [&](Bits k) { return (k & m) == k; });
    if (!dominated) minimal.push_back(m);
  }
  std::sort(minimal.begin(), minimal.end());
  std::vector<GroundModel> out;
  for (auto m : minimal) {
    GroundModel gm;
    for (std::uint32_t i = 0; i < 64; ++i) {
      if (m >> i & 1u) gm.atoms.push_back(i);
    }
    out.push_back(std::move(gm));
  }
  return out;
}

}  // namespace domino
