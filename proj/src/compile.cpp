#include "domino/compile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>

#include "domino/error.hpp"
#include "domino/normal_form.hpp"
#include "domino/printer.hpp"

namespace domino {

std::string var_label(const DominoUniverse& u, const DominoVar& v) {
  if (v.kind == DominoVar::Kind::Role) return to_string(u.role(v.index));
  return "<" + to_string(u.concepts[v.index]) + "," + std::to_string(v.side) + ">";
}

VariableOrder VariableOrder::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read variable order file " + path);
  VariableOrder o{Kind::Explicit, {}};
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    o.labels.push_back(line.substr(b, e - b + 1));
  }
  return o;
}

// ------------------------------------------------------------ DominoEncoding

DominoEncoding::DominoEncoding(DominoUniverse u, const VariableOrder& order) : universe_(std::move(u)) {
  const std::size_t nr = universe_.role_count();
  const std::size_t nc = universe_.concepts.size();
  for (std::size_t i = 0; i < nc; ++i) concept_pos_.emplace(universe_.concepts[i], i);

  std::vector<DominoVar> canon;
  for (std::size_t i = 0; i < nr; ++i) canon.push_back(DominoVar::role(i));
  for (std::size_t i = 0; i < nc; ++i) canon.push_back(DominoVar::concept_var(i, 1));
  for (std::size_t i = 0; i < nc; ++i) canon.push_back(DominoVar::concept_var(i, 2));

  switch (order.kind) {
    case VariableOrder::Kind::Default:
      at_level_ = canon;
      break;
    case VariableOrder::Kind::Interleaved:
      for (std::size_t i = 0; i < nr; ++i) at_level_.push_back(DominoVar::role(i));
      for (std::size_t i = 0; i < nc; ++i) {
        at_level_.push_back(DominoVar::concept_var(i, 1));
        at_level_.push_back(DominoVar::concept_var(i, 2));
      }
      break;
    case VariableOrder::Kind::Explicit: {
      std::map<std::string, DominoVar> by_label;
      for (const auto& v : canon) by_label.emplace(var_label(universe_, v), v);
      for (const auto& l : order.labels) {
        auto it = by_label.find(l);
        if (it == by_label.end()) throw Error("variable order names unknown or repeated variable " + l);
        at_level_.push_back(it->second);
        by_label.erase(it);
      }
      if (!by_label.empty()) throw Error("variable order omits " + by_label.begin()->first);
      break;
    }
  }
  level_of_.assign(canon.size(), 0);
  for (std::size_t l = 0; l < at_level_.size(); ++l) level_of_[canonical(at_level_[l])] = static_cast<obdd::VarId>(l);
}

std::size_t DominoEncoding::canonical(const DominoVar& v) const {
  const std::size_t nr = universe_.role_count();
  const std::size_t nc = universe_.concepts.size();
  if (v.kind == DominoVar::Kind::Role) return v.index;
  return nr + (v.side == 1 ? 0 : nc) + v.index;
}

obdd::VarId DominoEncoding::level(const DominoVar& v) const { return level_of_[canonical(v)]; }

std::size_t DominoEncoding::concept_index(const Concept& c) const {
  auto it = concept_pos_.find(c);
  if (it == concept_pos_.end()) throw Error("concept is not among the encoded parts: " + to_string(c));
  return it->second;
}

std::vector<obdd::VarId> DominoEncoding::swap_permutation() const {
  std::vector<obdd::VarId> perm(var_count());
  const std::size_t n = universe_.role_names.size();
  for (obdd::VarId l = 0; l < perm.size(); ++l) {
    DominoVar v = at_level_[l];
    if (v.kind == DominoVar::Kind::Role) {
      v.index = v.index < n ? v.index + n : v.index - n;
    } else {
      v.side = 3 - v.side;
    }
    perm[l] = level(v);
  }
  return perm;
}

std::vector<obdd::VarId> DominoEncoding::right_and_role_levels() const {
  std::vector<obdd::VarId> out;
  for (obdd::VarId l = 0; l < var_count(); ++l) {
    const DominoVar& v = at_level_[l];
    if (v.kind == DominoVar::Kind::Role || v.side == 2) out.push_back(l);
  }
  return out;
}

// ------------------------------------------------------------------ encoding

obdd::Func encode_concept(obdd::Manager& m, const DominoEncoding& e, const Concept& c, int side) {
  switch (c.kind()) {
    case Concept::Kind::Top:
      return m.constant(true);
    case Concept::Kind::Bottom:
      return m.constant(false);
    case Concept::Kind::Not:
      return m.negate(encode_concept(m, e, c.operand(), side));
    case Concept::Kind::And:
      return m.conj(encode_concept(m, e, c.left(), side), encode_concept(m, e, c.right(), side));
    case Concept::Kind::Or:
      return m.disj(encode_concept(m, e, c.left(), side), encode_concept(m, e, c.right(), side));
    default:
      return m.variable(e.level(DominoVar::concept_var(e.concept_index(c), side)));
  }
}

obdd::Func encode_role(obdd::Manager& m, const DominoEncoding& e, const RoleExpr& u) {
  switch (u.kind()) {
    case RoleExpr::Kind::Atomic: {
      auto i = e.universe().role_index(u.atom());
      if (!i) throw Error("role is not among the encoded roles: " + to_string(u.atom()));
      return m.variable(e.level(DominoVar::role(*i)));
    }
    case RoleExpr::Kind::Not:
      return m.negate(encode_role(m, e, u.operand()));
    case RoleExpr::Kind::And:
      return m.conj(encode_role(m, e, u.left()), encode_role(m, e, u.right()));
    case RoleExpr::Kind::Or:
      return m.disj(encode_role(m, e, u.left()), encode_role(m, e, u.right()));
  }
  return m.constant(false);
}

namespace {

// The conjuncts of φkb, φuni and φex, one per axiom and quantified part.
std::vector<obdd::Func> initial_pieces(obdd::Manager& m, const DominoEncoding& e, const KnowledgeBase& flat) {
  std::vector<obdd::Func> out;
  for (const auto& c : flat.tbox()) out.push_back(encode_concept(m, e, c, 1));
  for (const auto& c : e.universe().concepts) {
    if (c.is(Concept::Kind::Forall)) {
      obdd::Func pre = m.conj(encode_concept(m, e, c, 1), encode_role(m, e, c.role()));
      out.push_back(m.implies(pre, encode_concept(m, e, c.filler(), 2)));
    } else if (c.is(Concept::Kind::Exists)) {
      obdd::Func pre = m.conj(encode_concept(m, e, c.filler(), 2), encode_role(m, e, c.role()));
      out.push_back(m.implies(pre, encode_concept(m, e, c, 1)));
    }
  }
  return out;
}

}  // namespace

obdd::Func build_initial(obdd::Manager& m, const DominoEncoding& e, const KnowledgeBase& flat) {
  obdd::Func tau = m.constant(true);
  for (auto p : initial_pieces(m, e, flat)) tau = m.conj(tau, p);
  return tau;
}

// ------------------------------------------------------------------ fixpoint

CompiledTBox::CompiledTBox(DominoEncoding enc, std::unique_ptr<obdd::Manager> m, obdd::Func tau, CompileStats stats)
    : enc_(std::move(enc)), mgr_(std::move(m)), tau_(tau), stats_(stats) {}

namespace {

struct Fixpoint {
  obdd::Func tau;
  std::size_t rounds = 0;
};

// Iterates the elimination from `start`, or from τ0 when `start` is empty.
// Any start between the greatest fixpoint and τ0 reaches the same fixpoint.
Fixpoint iterate(obdd::Manager& m, const DominoEncoding& enc, const KnowledgeBase& flat,
                 std::optional<obdd::Func> start) {
  // Existential and universal parts with the pieces of their elimination
  // conditions that do not change between rounds. Conditions sharing a role
  // expression share the quantification of the role variables.
  struct Condition {
    obdd::Func left;    // χ<Q,1>
    obdd::Func filler;  // (¬)χ<C,2>
    std::size_t role;   // index into roles
    bool universal;
  };
  std::vector<Condition> conds;
  std::vector<obdd::Func> roles;
  auto role_slot = [&](const RoleExpr& u) {
    obdd::Func f = encode_role(m, enc, u);
    auto it = std::find(roles.begin(), roles.end(), f);
    if (it != roles.end()) return static_cast<std::size_t>(it - roles.begin());
    roles.push_back(f);
    return roles.size() - 1;
  };
  for (const auto& c : enc.universe().concepts) {
    if (c.is(Concept::Kind::Exists)) {
      conds.push_back({encode_concept(m, enc, c, 1), encode_concept(m, enc, c.filler(), 2), role_slot(c.role()), false});
    } else if (c.is(Concept::Kind::Forall)) {
      conds.push_back(
          {encode_concept(m, enc, c, 1), m.negate(encode_concept(m, enc, c.filler(), 2)), role_slot(c.role()), true});
    }
  }
  std::vector<obdd::VarId> role_levels, right_levels;
  for (obdd::VarId l = 0; l < enc.var_count(); ++l) {
    (enc.var_at(l).kind == DominoVar::Kind::Role ? role_levels : right_levels).push_back(l);
  }
  right_levels.erase(std::remove_if(right_levels.begin(), right_levels.end(),
                                    [&](obdd::VarId l) { return enc.var_at(l).side != 2; }),
                     right_levels.end());
  const auto swap = enc.swap_permutation();
  // τ can shrink at most once per domino before the fixpoint is reached.
  const double max_rounds = std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(enc.var_count(), 60))) + 1;

  std::vector<obdd::Func> pieces;
  obdd::Func tau = m.constant(true);
  if (start) {
    tau = *start;
  } else {
    pieces = initial_pieces(m, enc, flat);
    for (auto p : pieces) tau = m.conj(tau, p);
  }
  std::size_t rounds = 0;
  for (;;) {
    if (++rounds > max_rounds) throw Error("symbolic compilation did not reach a fixpoint");
    // The removal conditions mention side-1 variables only, so they are
    // gathered first and meet τ once.
    obdd::Func keep = m.constant(true);
    std::vector<obdd::Func> along;  // ∃ roles. τ ∧ τ(U), per role expression
    along.reserve(roles.size());
    for (const auto& u : roles) along.push_back(m.and_exists(tau, u, role_levels));
    for (const auto& cond : conds) {
      obdd::Func w = m.and_exists(along[cond.role], cond.filler, right_levels);
      // ∃U.C in the left set needs a witness; ∀U.C missing from it needs a counter-witness.
      keep = m.conj(keep, cond.universal ? m.disj(cond.left, w) : m.implies(cond.left, w));
    }
    obdd::Func next = m.conj(tau, keep);
    if (rounds == 1 && !pieces.empty()) {
      // τ0 can be large; renaming its conjuncts one by one gives the same
      // function more cheaply.
      for (auto p : pieces) next = m.conj(next, m.rename(swap, p));
    } else {
      next = m.conj(next, m.rename(swap, tau));
    }
    if (m.is_equal(next, tau)) break;
    tau = next;
  }
  return {tau, rounds};
}

}  // namespace

CompiledTBox fixpoint_compile(const KnowledgeBase& kb, const CompileOptions& opt) {
  for (const auto& c : parts_of(kb)) {
    if (c.is_counting()) throw Error("symbolic compilation needs a TBox without counting restrictions");
  }
  KnowledgeBase flat = flatten(kb.without_rules().without_role_inclusions().without_transitivity());
  DominoEncoding enc(make_universe(flat), opt.order);
  auto mgr = std::make_unique<obdd::Manager>(enc.var_count(), opt.cache_bits);
  obdd::Manager& m = *mgr;

  Fixpoint fp;
  if (opt.search_interleaved && opt.order.kind != VariableOrder::Kind::Interleaved) {
    // The fixpoint is a function, not a diagram: find it in the interleaved
    // order, carry it over, and confirm it is stable in the requested order.
    DominoEncoding work(enc.universe(), VariableOrder::interleaved());
    obdd::Manager wm(work.var_count(), opt.cache_bits);
    const Fixpoint found = iterate(wm, work, flat, std::nullopt);
    std::vector<obdd::VarId> level_map(work.var_count());
    for (obdd::VarId l = 0; l < work.var_count(); ++l) level_map[l] = enc.level(work.var_at(l));
    fp = iterate(m, enc, flat, m.import(wm, found.tau, level_map));
    if (fp.rounds != 1) throw Error("carried-over fixpoint is not stable");
    fp.rounds = found.rounds;
  } else {
    fp = iterate(m, enc, flat, std::nullopt);
  }
  CompileStats stats{enc.var_count(), fp.rounds, m.node_count(fp.tau)};
  return CompiledTBox(std::move(enc), std::move(mgr), fp.tau, stats);
}

// -------------------------------------------------------- explicit <-> OBDD

namespace {

std::vector<std::uint64_t> level_keys(const DominoSet& ds, const DominoEncoding& enc) {
  std::vector<std::uint64_t> keys;
  keys.reserve(ds.size());
  for (const auto& d : ds.members()) {
    std::uint64_t k = 0;
    for (obdd::VarId l = 0; l < enc.var_count(); ++l) {
      const DominoVar& v = enc.var_at(l);
      std::uint64_t bits = v.kind == DominoVar::Kind::Role ? d.roles : (v.side == 1 ? d.left : d.right);
      if ((bits >> v.index) & 1) k |= std::uint64_t{1} << l;
    }
    keys.push_back(k);
  }
  return keys;
}

}  // namespace

CompiledTBox compile_domino_set(const DominoSet& ds, const CompileOptions& opt) {
  DominoEncoding enc(ds.universe(), opt.order);
  if (enc.var_count() > 64) throw CapacityError("domino encoding exceeds 64 variables");
  auto mgr = std::make_unique<obdd::Manager>(enc.var_count(), opt.cache_bits);
  obdd::Manager& m = *mgr;
  std::vector<std::uint64_t> keys = level_keys(ds, enc);
  const obdd::VarId n = static_cast<obdd::VarId>(enc.var_count());

  std::function<obdd::Func(std::size_t, std::size_t, obdd::VarId)> build = [&](std::size_t lo, std::size_t hi,
                                                                                 obdd::VarId level) -> obdd::Func {
    if (lo == hi) return m.constant(false);
    if (level == n) return m.constant(true);
    auto mid = std::partition(keys.begin() + lo, keys.begin() + hi,
                              [&](std::uint64_t k) { return !((k >> level) & 1); });
    std::size_t split = static_cast<std::size_t>(mid - keys.begin());
    obdd::Func f0 = build(lo, split, level + 1);
    obdd::Func f1 = build(split, hi, level + 1);
    if (f0 == f1) return f0;
    return m.make_node(level, f0, f1);
  };
  obdd::Func tau = build(0, keys.size(), 0);
  CompileStats stats{enc.var_count(), 0, m.node_count(tau)};
  return CompiledTBox(std::move(enc), std::move(mgr), tau, stats);
}

DominoSet extract_domino_set(const CompiledTBox& ct, std::size_t cap) {
  const auto& enc = ct.encoding();
  const auto& u = enc.universe();
  if (u.concepts.size() + u.role_count() > cap) {
    throw CapacityError("domino set extraction: universe exceeds the cap of " + std::to_string(cap));
  }
  std::vector<DominoBits> out;
  ct.manager().enumerate(ct.tau(), [&](const std::vector<bool>& a) {
    DominoBits d;
    for (obdd::VarId l = 0; l < a.size(); ++l) {
      if (!a[l]) continue;
      const DominoVar& v = enc.var_at(l);
      std::uint64_t bit = std::uint64_t{1} << v.index;
      if (v.kind == DominoVar::Kind::Role) d.roles |= bit;
      else if (v.side == 1) d.left |= bit;
      else d.right |= bit;
    }
    out.push_back(d);
    return true;
  });
  return DominoSet(u, std::move(out));
}

}  // namespace domino
