#include "domino/dominoes.hpp"

#include <algorithm>
#include <functional>

#include "domino/error.hpp"
#include "domino/normal_form.hpp"
#include "domino/printer.hpp"

namespace domino {

AtomicRole DominoUniverse::role(std::size_t i) const {
  const std::size_t n = role_names.size();
  return i < n ? AtomicRole(role_names[i]) : AtomicRole(role_names[i - n], true);
}

std::optional<std::size_t> DominoUniverse::concept_index(const Concept& c) const {
  auto it = std::find(concepts.begin(), concepts.end(), c);
  if (it == concepts.end()) return std::nullopt;
  return static_cast<std::size_t>(it - concepts.begin());
}

std::optional<std::size_t> DominoUniverse::role_index(const AtomicRole& r) const {
  auto it = std::lower_bound(role_names.begin(), role_names.end(), r.name);
  if (it == role_names.end() || *it != r.name) return std::nullopt;
  std::size_t i = static_cast<std::size_t>(it - role_names.begin());
  return r.inverted ? i + role_names.size() : i;
}

std::uint64_t DominoUniverse::invert_roles(std::uint64_t mask) const {
  const std::size_t n = role_names.size();
  if (n == 0) return 0;
  const std::uint64_t low = mask & ((std::uint64_t{1} << n) - 1);
  return (low << n) | (mask >> n);
}

DominoUniverse make_universe(const KnowledgeBase& flat_kb) {
  DominoUniverse u;
  u.concepts = parts_of(flat_kb);
  std::set<std::string> names;
  for (const auto& c : u.concepts) {
    if (!c.is_quantified()) continue;
    std::set<AtomicRole> rs;
    collect_atomic_roles(c.role(), rs);
    for (const auto& r : rs) names.insert(r.name);
  }
  u.role_names.assign(names.begin(), names.end());
  return u;
}

bool role_entails_mask(const DominoUniverse& u, std::uint64_t roles, const RoleExpr& e) {
  switch (e.kind()) {
    case RoleExpr::Kind::Atomic: {
      auto i = u.role_index(e.atom());
      return i && ((roles >> *i) & 1);
    }
    case RoleExpr::Kind::Not:
      return !role_entails_mask(u, roles, e.operand());
    case RoleExpr::Kind::And:
      return role_entails_mask(u, roles, e.left()) && role_entails_mask(u, roles, e.right());
    case RoleExpr::Kind::Or:
      return role_entails_mask(u, roles, e.left()) || role_entails_mask(u, roles, e.right());
  }
  return false;
}

// ---------------------------------------------------------------- DominoSet

DominoSet::DominoSet(DominoUniverse u, std::vector<DominoBits> members)
    : universe_(std::move(u)), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool DominoSet::contains(const DominoBits& d) const {
  return std::binary_search(members_.begin(), members_.end(), d);
}

bool DominoSet::contains(const Domino& d) const {
  auto b = encode(d);
  return b && contains(*b);
}

Domino DominoSet::decode(const DominoBits& d) const {
  Domino out;
  for (std::size_t i = 0; i < universe_.concepts.size(); ++i) {
    if ((d.left >> i) & 1) out.left.insert(universe_.concepts[i]);
    if ((d.right >> i) & 1) out.right.insert(universe_.concepts[i]);
  }
  for (std::size_t i = 0; i < universe_.role_count(); ++i) {
    if ((d.roles >> i) & 1) out.roles.insert(universe_.role(i));
  }
  return out;
}

std::optional<DominoBits> DominoSet::encode(const Domino& d) const {
  DominoBits b;
  for (const auto& c : d.left) {
    auto i = universe_.concept_index(c);
    if (!i) return std::nullopt;
    b.left |= std::uint64_t{1} << *i;
  }
  for (const auto& c : d.right) {
    auto i = universe_.concept_index(c);
    if (!i) return std::nullopt;
    b.right |= std::uint64_t{1} << *i;
  }
  for (const auto& r : d.roles) {
    auto i = universe_.role_index(r);
    if (!i) return std::nullopt;
    b.roles |= std::uint64_t{1} << *i;
  }
  return b;
}

bool DominoSet::subset_of(const DominoSet& other) const {
  if (!(universe_ == other.universe_)) return false;
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

// --------------------------------------------------------------- projection

DominoSet domino_projection(const FiniteInterpretation& in, const DominoUniverse& u) {
  if (u.concepts.size() > 64 || u.role_count() > 64) throw CapacityError("domino universe exceeds 64 bits");
  const std::size_t n = in.size;
  std::vector<std::uint64_t> concept_mask(n, 0);
  for (std::size_t k = 0; k < u.concepts.size(); ++k) {
    for (Element e : eval_concept(in, u.concepts[k])) concept_mask[e] |= std::uint64_t{1} << k;
  }
  std::vector<std::vector<std::uint64_t>> role_mask(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t k = 0; k < u.role_count(); ++k) {
    for (const auto& [a, b] : eval_role(in, RoleExpr(u.role(k)))) role_mask[a][b] |= std::uint64_t{1} << k;
  }
  std::vector<DominoBits> out;
  out.reserve(n * n);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) out.push_back({concept_mask[a], role_mask[a][b], concept_mask[b]});
  }
  return DominoSet(u, std::move(out));
}

// ---------------------------------------------------------- explicit engine

namespace {

// Evaluates a flat axiom as a Boolean formula over a concept bit set.
bool eval_flat(const DominoUniverse& u, const Concept& c, std::uint64_t set) {
  switch (c.kind()) {
    case Concept::Kind::Top:
      return true;
    case Concept::Kind::Bottom:
      return false;
    case Concept::Kind::Not:
      return !eval_flat(u, c.operand(), set);
    case Concept::Kind::And:
      return eval_flat(u, c.left(), set) && eval_flat(u, c.right(), set);
    case Concept::Kind::Or:
      return eval_flat(u, c.left(), set) || eval_flat(u, c.right(), set);
    default: {
      auto i = u.concept_index(c);
      if (!i) throw std::logic_error("concept outside the domino universe: " + to_string(c));
      return (set >> *i) & 1;
    }
  }
}

struct Quantifier {
  std::size_t index;              // position of ∃U.A / ∀U.A in the universe
  int filler = -1;                // universe position of A, or -1 for a constant
  bool filler_constant = false;   // value of A when it is Top or Bottom
  std::vector<bool> entails;      // entails[roles] == (roles ⊢ U)

  bool filler_in(std::uint64_t set) const { return filler < 0 ? filler_constant : ((set >> filler) & 1); }
};

Quantifier make_quantifier(const DominoUniverse& u, std::size_t index) {
  const Concept& c = u.concepts[index];
  Quantifier q;
  q.index = index;
  if (c.filler().is(Concept::Kind::Top)) {
    q.filler_constant = true;
  } else if (c.filler().is(Concept::Kind::Bottom)) {
    q.filler_constant = false;
  } else {
    q.filler = static_cast<int>(*u.concept_index(c.filler()));
  }
  const std::uint64_t masks = std::uint64_t{1} << u.role_count();
  q.entails.resize(masks);
  for (std::uint64_t m = 0; m < masks; ++m) q.entails[m] = role_entails_mask(u, m, c.role());
  return q;
}

}  // namespace

DominoSet canonical_domino_set(const KnowledgeBase& kb, const ExplicitOptions& opt, ExplicitStats* stats) {
  for (const auto& c : parts_of(kb)) {
    if (c.is_counting()) throw Error("explicit domino engine needs a TBox without counting restrictions");
  }
  KnowledgeBase flat = flatten(kb.without_rules().without_role_inclusions().without_transitivity());
  DominoUniverse u = make_universe(flat);
  const std::size_t nc = u.concepts.size();
  const std::size_t nr = u.role_count();
  if (nc + nr > opt.cap) {
    throw CapacityError("explicit domino engine: " + std::to_string(nc) + " concepts and " + std::to_string(nr) +
                        " atomic roles exceed the cap of " + std::to_string(opt.cap));
  }

  std::vector<Quantifier> exists, forall;
  for (std::size_t i = 0; i < nc; ++i) {
    if (u.concepts[i].is(Concept::Kind::Exists)) exists.push_back(make_quantifier(u, i));
    if (u.concepts[i].is(Concept::Kind::Forall)) forall.push_back(make_quantifier(u, i));
  }

  // Concept sets satisfying every flat axiom.
  std::vector<std::uint64_t> types;
  const std::uint64_t subsets = std::uint64_t{1} << nc;
  for (std::uint64_t a = 0; a < subsets; ++a) {
    bool ok = std::all_of(flat.tbox().begin(), flat.tbox().end(),
                          [&](const Concept& c) { return eval_flat(u, c, a); });
    if (ok) types.push_back(a);
  }
  std::vector<std::uint64_t> all_subsets;
  if (!opt.prune_right) {
    all_subsets.resize(subsets);
    for (std::uint64_t b = 0; b < subsets; ++b) all_subsets[b] = b;
  }
  const std::vector<std::uint64_t>& rights = opt.prune_right ? types : all_subsets;
  const std::uint64_t role_sets = std::uint64_t{1} << nr;
  if (static_cast<double>(types.size()) * rights.size() * role_sets > static_cast<double>(opt.max_dominoes)) {
    throw CapacityError("explicit domino engine: initial domino set too large");
  }

  std::vector<DominoBits> cur;
  for (std::uint64_t a : types) {
    for (std::uint64_t b : rights) {
      for (std::uint64_t r = 0; r < role_sets; ++r) {
        bool ok = true;
        for (const auto& q : exists) {  // (ex)
          if (q.filler_in(b) && q.entails[r] && !((a >> q.index) & 1)) { ok = false; break; }
        }
        if (!ok) continue;
        for (const auto& q : forall) {  // (uni)
          if (((a >> q.index) & 1) && q.entails[r] && !q.filler_in(b)) { ok = false; break; }
        }
        if (ok) cur.push_back({a, r, b});
      }
    }
  }
  std::sort(cur.begin(), cur.end());
  if (stats) stats->initial = cur.size();

  std::size_t iterations = 0;
  for (;;) {
    ++iterations;
    std::vector<DominoBits> next;
    next.reserve(cur.size());
    for (std::size_t lo = 0; lo < cur.size();) {
      std::size_t hi = lo;
      while (hi < cur.size() && cur[hi].left == cur[lo].left) ++hi;
      const std::uint64_t a = cur[lo].left;
      bool keep = true;
      for (const auto& q : exists) {  // (delex)
        if (!((a >> q.index) & 1)) continue;
        bool witness = false;
        for (std::size_t k = lo; k < hi && !witness; ++k) witness = q.entails[cur[k].roles] && q.filler_in(cur[k].right);
        if (!witness) { keep = false; break; }
      }
      for (std::size_t j = 0; keep && j < forall.size(); ++j) {  // (deluni)
        const auto& q = forall[j];
        if ((a >> q.index) & 1) continue;
        bool witness = false;
        for (std::size_t k = lo; k < hi && !witness; ++k) witness = q.entails[cur[k].roles] && !q.filler_in(cur[k].right);
        if (!witness) keep = false;
      }
      if (keep) {
        for (std::size_t k = lo; k < hi; ++k) {  // (sym)
          DominoBits partner{cur[k].right, u.invert_roles(cur[k].roles), cur[k].left};
          if (std::binary_search(cur.begin(), cur.end(), partner)) next.push_back(cur[k]);
        }
      }
      lo = hi;
    }
    if (next.size() == cur.size()) break;
    cur = std::move(next);
  }
  if (stats) stats->iterations = iterations;
  return DominoSet(std::move(u), std::move(cur));
}

// ------------------------------------------------------ bounded model

BoundedInterpretation build_bounded_domino_interpretation(const DominoSet& ds, std::size_t depth,
                                                          std::size_t max_elements) {
  if (ds.empty()) throw Error("no dominoes to build an interpretation from");
  if (depth == 0) throw Error("depth must be at least 1");
  const auto& u = ds.universe();
  const auto& dom = ds.members();

  struct Word {
    std::size_t parent;  // index of the prefix word, or npos for length one
    std::size_t last;    // index of the last domino
    std::size_t length;
  };
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<Word> words;
  for (std::size_t d = 0; d < dom.size(); ++d) words.push_back({npos, d, 1});
  std::size_t level_begin = 0;
  for (std::size_t len = 2; len <= depth; ++len) {
    std::size_t level_end = words.size();
    for (std::size_t w = level_begin; w < level_end; ++w) {
      const std::uint64_t tail = dom[words[w].last].right;
      auto it = std::lower_bound(dom.begin(), dom.end(), DominoBits{tail, 0, 0});
      for (; it != dom.end() && it->left == tail; ++it) {
        words.push_back({w, static_cast<std::size_t>(it - dom.begin()), len});
        if (words.size() > max_elements) throw CapacityError("bounded domino interpretation too large");
      }
    }
    level_begin = level_end;
  }

  BoundedInterpretation out;
  auto& in = out.interpretation;
  in.size = words.size();
  out.frontier.resize(words.size());
  for (std::size_t w = 0; w < words.size(); ++w) {
    out.frontier[w] = words[w].length == depth;
    const DominoBits& d = dom[words[w].last];
    for (std::size_t i = 0; i < u.concepts.size(); ++i) {
      if (u.concepts[i].is(Concept::Kind::Name) && ((d.right >> i) & 1)) in.concepts[u.concepts[i].name()].insert(w);
    }
    if (words[w].parent == npos) continue;
    for (std::size_t k = 0; k < u.role_count(); ++k) {
      if (!((d.roles >> k) & 1)) continue;
      AtomicRole r = u.role(k);
      if (r.inverted) in.roles[r.name].insert({w, words[w].parent});
      else in.roles[r.name].insert({words[w].parent, w});
    }
  }
  for (const auto& n : u.role_names) in.roles[n];
  return out;
}

}  // namespace domino
