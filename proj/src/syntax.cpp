#include "domino/syntax.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "domino/error.hpp"

namespace domino {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

// ---------------------------------------------------------------- RoleExpr

struct RoleExpr::Node {
  Kind kind;
  AtomicRole atom;
  std::vector<RoleExpr> children;
  std::size_t hash;
};

RoleExpr::RoleExpr(AtomicRole r) {
  std::size_t h = mix(std::hash<std::string>{}(r.name), r.inverted ? 3 : 1);
  node_ = std::make_shared<const Node>(Node{Kind::Atomic, std::move(r), {}, h});
}

RoleExpr RoleExpr::atomic(std::string name, bool inverted) {
  return RoleExpr(AtomicRole(std::move(name), inverted));
}

RoleExpr RoleExpr::negation(RoleExpr u) {
  std::size_t h = mix(11, u.hash());
  return RoleExpr(std::make_shared<const Node>(Node{Kind::Not, {}, {std::move(u)}, h}));
}

RoleExpr RoleExpr::conjunction(RoleExpr u, RoleExpr v) {
  std::size_t h = mix(mix(13, u.hash()), v.hash());
  return RoleExpr(std::make_shared<const Node>(Node{Kind::And, {}, {std::move(u), std::move(v)}, h}));
}

RoleExpr RoleExpr::disjunction(RoleExpr u, RoleExpr v) {
  std::size_t h = mix(mix(17, u.hash()), v.hash());
  return RoleExpr(std::make_shared<const Node>(Node{Kind::Or, {}, {std::move(u), std::move(v)}, h}));
}

RoleExpr::Kind RoleExpr::kind() const { return node_->kind; }

const AtomicRole& RoleExpr::atom() const {
  if (node_->kind != Kind::Atomic) throw std::logic_error("RoleExpr::atom on compound expression");
  return node_->atom;
}

const RoleExpr& RoleExpr::operand() const {
  if (node_->kind != Kind::Not) throw std::logic_error("RoleExpr::operand on non-negation");
  return node_->children[0];
}

const RoleExpr& RoleExpr::left() const {
  if (node_->children.size() != 2) throw std::logic_error("RoleExpr::left on non-binary expression");
  return node_->children[0];
}

const RoleExpr& RoleExpr::right() const {
  if (node_->children.size() != 2) throw std::logic_error("RoleExpr::right on non-binary expression");
  return node_->children[1];
}

std::size_t RoleExpr::hash() const { return node_->hash; }

bool operator==(const RoleExpr& a, const RoleExpr& b) {
  if (a.node_ == b.node_) return true;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const RoleExpr& a, const RoleExpr& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (a.kind() == RoleExpr::Kind::Atomic) return a.atom() <=> b.atom();
  const auto& x = a.node_->children;
  const auto& y = b.node_->children;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (auto c = x[i] <=> y[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

RoleExpr invert(const RoleExpr& u) {
  switch (u.kind()) {
    case RoleExpr::Kind::Atomic:
      return RoleExpr(u.atom().inverse());
    case RoleExpr::Kind::Not:
      return RoleExpr::negation(invert(u.operand()));
    case RoleExpr::Kind::And:
      return RoleExpr::conjunction(invert(u.left()), invert(u.right()));
    case RoleExpr::Kind::Or:
      return RoleExpr::disjunction(invert(u.left()), invert(u.right()));
  }
  return u;
}

void collect_atomic_roles(const RoleExpr& u, std::set<AtomicRole>& out) {
  switch (u.kind()) {
    case RoleExpr::Kind::Atomic:
      out.insert(u.atom());
      break;
    case RoleExpr::Kind::Not:
      collect_atomic_roles(u.operand(), out);
      break;
    default:
      collect_atomic_roles(u.left(), out);
      collect_atomic_roles(u.right(), out);
  }
}

// ----------------------------------------------------------------- Concept

struct Concept::Node {
  Kind kind;
  std::string name;
  unsigned number = 0;
  std::vector<RoleExpr> role;  // zero or one entry
  std::vector<Concept> children;
  std::size_t hash = 0;
};

namespace {

std::size_t concept_hash(Concept::Kind k, const std::string& name, unsigned n,
                         const std::vector<RoleExpr>& role, const std::vector<Concept>& children) {
  std::size_t h = mix(static_cast<std::size_t>(k) * 31 + 7, std::hash<std::string>{}(name));
  h = mix(h, n);
  for (const auto& r : role) h = mix(h, r.hash());
  for (const auto& c : children) h = mix(h, c.hash());
  return h;
}

}  // namespace

Concept Concept::name(std::string n) { return make(Kind::Name, std::move(n), 0, {}, {}); }

Concept Concept::top() {
  static const Concept t = make(Kind::Top, "", 0, {}, {});
  return t;
}

Concept Concept::bottom() {
  static const Concept b = make(Kind::Bottom, "", 0, {}, {});
  return b;
}

Concept Concept::negation(Concept c) { return make(Kind::Not, "", 0, {}, {std::move(c)}); }

Concept Concept::conjunction(Concept c, Concept d) {
  return make(Kind::And, "", 0, {}, {std::move(c), std::move(d)});
}

Concept Concept::disjunction(Concept c, Concept d) {
  return make(Kind::Or, "", 0, {}, {std::move(c), std::move(d)});
}

Concept Concept::forall(RoleExpr u, Concept c) { return make(Kind::Forall, "", 0, {std::move(u)}, {std::move(c)}); }

Concept Concept::exists(RoleExpr u, Concept c) { return make(Kind::Exists, "", 0, {std::move(u)}, {std::move(c)}); }

Concept Concept::at_most(unsigned n, RoleExpr u, Concept c) {
  return make(Kind::AtMost, "", n, {std::move(u)}, {std::move(c)});
}

Concept Concept::at_least(unsigned n, RoleExpr u, Concept c) {
  if (n == 0) return top();
  return make(Kind::AtLeast, "", n, {std::move(u)}, {std::move(c)});
}

Concept Concept::make(Kind k, std::string name, unsigned n, std::vector<RoleExpr> role,
                      std::vector<Concept> children) {
  std::size_t h = concept_hash(k, name, n, role, children);
  return Concept(std::make_shared<const Node>(Node{k, std::move(name), n, std::move(role), std::move(children), h}));
}

Concept::Kind Concept::kind() const { return node_->kind; }

const std::string& Concept::name() const {
  if (node_->kind != Kind::Name) throw std::logic_error("Concept::name on non-name");
  return node_->name;
}

const Concept& Concept::operand() const {
  if (node_->kind != Kind::Not) throw std::logic_error("Concept::operand on non-negation");
  return node_->children[0];
}

const Concept& Concept::left() const {
  if (node_->kind != Kind::And && node_->kind != Kind::Or) throw std::logic_error("Concept::left on non-binary");
  return node_->children[0];
}

const Concept& Concept::right() const {
  if (node_->kind != Kind::And && node_->kind != Kind::Or) throw std::logic_error("Concept::right on non-binary");
  return node_->children[1];
}

const RoleExpr& Concept::role() const {
  if (!is_quantified()) throw std::logic_error("Concept::role on unquantified concept");
  return node_->role[0];
}

const Concept& Concept::filler() const {
  if (!is_quantified()) throw std::logic_error("Concept::filler on unquantified concept");
  return node_->children[0];
}

unsigned Concept::number() const {
  if (!is_counting()) throw std::logic_error("Concept::number on non-counting concept");
  return node_->number;
}

bool Concept::is_quantified() const {
  switch (node_->kind) {
    case Kind::Forall:
    case Kind::Exists:
    case Kind::AtMost:
    case Kind::AtLeast:
      return true;
    default:
      return false;
  }
}

std::size_t Concept::hash() const { return node_->hash; }

bool operator==(const Concept& a, const Concept& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Concept& a, const Concept& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (auto c = x.number <=> y.number; c != 0) return c;
  for (std::size_t i = 0; i < x.role.size(); ++i) {
    if (auto c = x.role[i] <=> y.role[i]; c != 0) return c;
  }
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (auto c = x.children[i] <=> y.children[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Concept conjunction_of(const std::vector<Concept>& cs) {
  if (cs.empty()) return Concept::top();
  Concept acc = cs[0];
  for (std::size_t i = 1; i < cs.size(); ++i) acc = Concept::conjunction(acc, cs[i]);
  return acc;
}

Concept disjunction_of(const std::vector<Concept>& cs) {
  if (cs.empty()) return Concept::bottom();
  Concept acc = cs[0];
  for (std::size_t i = 1; i < cs.size(); ++i) acc = Concept::disjunction(acc, cs[i]);
  return acc;
}

Atom role_atom(const AtomicRole& r, Term s, Term t) {
  if (r.inverted) return RoleAtom{r.name, std::move(t), std::move(s)};
  return RoleAtom{r.name, std::move(s), std::move(t)};
}

Gci subclass_of(const Concept& c, const Concept& d) {
  if (c.is(Concept::Kind::Top)) return Gci{d};
  return Gci{Concept::disjunction(Concept::negation(c), d)};
}

// ----------------------------------------------------------- KnowledgeBase

void KnowledgeBase::add(const Axiom& a) {
  std::visit(
      [this](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Gci>) {
          add_gci(x.expr);
        } else if constexpr (std::is_same_v<T, RoleInclusion>) {
          add_role_inclusion(x.sub, x.super);
        } else if constexpr (std::is_same_v<T, Transitivity>) {
          add_transitivity(x.role);
        } else {
          add_rule(x);
        }
      },
      a);
}

void KnowledgeBase::add_gci(const Concept& c) {
  note_concept(c);
  if (std::find(tbox_.begin(), tbox_.end(), c) == tbox_.end()) tbox_.push_back(c);
}

void KnowledgeBase::add_subclass(const Concept& c, const Concept& d) { add_gci(subclass_of(c, d).expr); }

void KnowledgeBase::add_role_inclusion(const RoleExpr& sub, const RoleExpr& super) {
  note_role(sub);
  note_role(super);
  RoleInclusion ri{sub, super};
  if (std::find(inclusions_.begin(), inclusions_.end(), ri) == inclusions_.end()) inclusions_.push_back(ri);
}

void KnowledgeBase::add_transitivity(const AtomicRole& r) {
  sig_.roles.insert(r.name);
  Transitivity t{r};
  if (std::find(transitive_.begin(), transitive_.end(), t) == transitive_.end()) transitive_.push_back(t);
}

void KnowledgeBase::add_rule(const Rule& r) {
  for (const auto& a : r.body) note_atom(a);
  for (const auto& a : r.head) note_atom(a);
  if (std::find(rules_.begin(), rules_.end(), r) == rules_.end()) rules_.push_back(r);
}

std::vector<Axiom> KnowledgeBase::axioms() const {
  std::vector<Axiom> out;
  for (const auto& c : tbox_) out.emplace_back(Gci{c});
  for (const auto& r : inclusions_) out.emplace_back(r);
  for (const auto& t : transitive_) out.emplace_back(t);
  for (const auto& r : rules_) out.emplace_back(r);
  return out;
}

KnowledgeBase KnowledgeBase::without_tbox() const {
  KnowledgeBase kb = *this;
  kb.tbox_.clear();
  return kb;
}

KnowledgeBase KnowledgeBase::without_rules() const {
  KnowledgeBase kb = *this;
  kb.rules_.clear();
  return kb;
}

KnowledgeBase KnowledgeBase::without_role_inclusions() const {
  KnowledgeBase kb = *this;
  kb.inclusions_.clear();
  return kb;
}

KnowledgeBase KnowledgeBase::without_transitivity() const {
  KnowledgeBase kb = *this;
  kb.transitive_.clear();
  return kb;
}

bool KnowledgeBase::is_transitive(const AtomicRole& r) const {
  for (const auto& t : transitive_) {
    if (t.role.name == r.name) return true;  // Trans(R) iff Trans(R-)
  }
  return false;
}

void KnowledgeBase::note_concept(const Concept& c) {
  switch (c.kind()) {
    case Concept::Kind::Name:
      sig_.concepts.insert(c.name());
      break;
    case Concept::Kind::Top:
    case Concept::Kind::Bottom:
      break;
    case Concept::Kind::Not:
      note_concept(c.operand());
      break;
    case Concept::Kind::And:
    case Concept::Kind::Or:
      note_concept(c.left());
      note_concept(c.right());
      break;
    default:
      note_role(c.role());
      note_concept(c.filler());
  }
}

void KnowledgeBase::note_role(const RoleExpr& u) {
  std::set<AtomicRole> rs;
  collect_atomic_roles(u, rs);
  for (const auto& r : rs) sig_.roles.insert(r.name);
}

void KnowledgeBase::note_atom(const Atom& a) {
  auto note_term = [this](const Term& t) {
    if (!t.is_variable()) sig_.individuals.insert(t.name);
  };
  if (const auto* c = std::get_if<ConceptAtom>(&a)) {
    sig_.concepts.insert(c->concept_name);
    note_term(c->arg);
  } else if (const auto* r = std::get_if<RoleAtom>(&a)) {
    sig_.roles.insert(r->role);
    note_term(r->first);
    note_term(r->second);
  } else {
    const auto& e = std::get<EqualityAtom>(a);
    note_term(e.left);
    note_term(e.right);
  }
}

namespace {

std::string fresh_name(std::set<std::string>& taken, const std::set<std::string>& other, const std::string& prefix) {
  for (std::size_t k = 0;; ++k) {
    std::string n = prefix + std::to_string(k);
    if (!taken.count(n) && !other.count(n)) {
      taken.insert(n);
      return n;
    }
  }
}

}  // namespace

std::string fresh_concept_name(Signature& sig, const std::string& prefix) {
  return fresh_name(sig.concepts, sig.roles, prefix);
}

std::string fresh_role_name(Signature& sig, const std::string& prefix) {
  return fresh_name(sig.roles, sig.concepts, prefix);
}

std::string self_concept_name(const AtomicRole& r) {
  return std::string(kSelfPrefix) + r.name + (r.inverted ? "_inv" : "");
}

}  // namespace domino
