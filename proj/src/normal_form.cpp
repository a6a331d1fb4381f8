#include "domino/normal_form.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "domino/printer.hpp"

namespace domino {

bool role_entails(const std::set<AtomicRole>& rs, const RoleExpr& u) {
  switch (u.kind()) {
    case RoleExpr::Kind::Atomic:
      return rs.count(u.atom()) > 0;
    case RoleExpr::Kind::Not:
      return !role_entails(rs, u.operand());
    case RoleExpr::Kind::And:
      return role_entails(rs, u.left()) && role_entails(rs, u.right());
    case RoleExpr::Kind::Or:
      return role_entails(rs, u.left()) || role_entails(rs, u.right());
  }
  return false;
}

bool is_restricted(const RoleExpr& u) { return !role_entails({}, u); }

RoleClassification classify_roles(const KnowledgeBase& kb) {
  RoleClassification rc;
  std::set<AtomicRole> atoms;
  for (const auto& n : kb.signature().roles) {
    atoms.insert(AtomicRole(n));
    atoms.insert(AtomicRole(n, true));
  }
  for (const auto& r : atoms) rc.subsumed.insert({r, r});
  for (const auto& ri : kb.role_inclusions()) {
    if (ri.sub.is_atomic() && ri.super.is_atomic()) {
      rc.subsumed.insert({ri.sub.atom(), ri.super.atom()});
      rc.subsumed.insert({ri.sub.atom().inverse(), ri.super.atom().inverse()});
    }
  }
  // Transitive closure; the role sets are small.
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::pair<AtomicRole, AtomicRole>> add;
    for (const auto& [a, b] : rc.subsumed) {
      for (auto it = rc.subsumed.lower_bound({b, AtomicRole()}); it != rc.subsumed.end() && it->first == b; ++it) {
        if (!rc.subsumed.count({a, it->second})) add.emplace_back(a, it->second);
      }
    }
    for (auto& p : add) changed |= rc.subsumed.insert(p).second;
  }

  for (const auto& t : kb.transitivity()) {
    rc.non_simple.insert(t.role);
    rc.non_simple.insert(t.role.inverse());
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& ri : kb.role_inclusions()) {
      if (!ri.sub.is_atomic() || !ri.super.is_atomic()) continue;
      if (rc.non_simple.count(ri.sub.atom()) && !rc.non_simple.count(ri.super.atom())) {
        rc.non_simple.insert(ri.super.atom());
        rc.non_simple.insert(ri.super.atom().inverse());
        changed = true;
      }
    }
  }
  return rc;
}

namespace {

class Validator {
 public:
  Validator(const KnowledgeBase& kb, unsigned cap) : rc_(classify_roles(kb)), cap_(cap) {}

  void role(const RoleExpr& u, const std::string& where) {
    if (!u.is_atomic()) {
      std::set<AtomicRole> rs;
      collect_atomic_roles(u, rs);
      for (const auto& r : rs) {
        if (!rc_.is_simple(r)) {
          report(Violation::Kind::NonSimpleInBooleanRole,
                 "non-simple role " + to_string(r) + " inside role expression " + to_string(u) + " in " + where);
        }
      }
    }
    if (!is_restricted(u)) {
      report(Violation::Kind::UnrestrictedRole, "unrestricted role expression " + to_string(u) + " in " + where);
    }
  }

  void visit_concept(const Concept& c, const std::string& where) {
    switch (c.kind()) {
      case Concept::Kind::Not:
        visit_concept(c.operand(), where);
        return;
      case Concept::Kind::And:
      case Concept::Kind::Or:
        visit_concept(c.left(), where);
        visit_concept(c.right(), where);
        return;
      case Concept::Kind::Forall:
      case Concept::Kind::Exists:
        role(c.role(), where);
        visit_concept(c.filler(), where);
        return;
      case Concept::Kind::AtMost:
      case Concept::Kind::AtLeast: {
        role(c.role(), where);
        std::set<AtomicRole> rs;
        collect_atomic_roles(c.role(), rs);
        for (const auto& r : rs) {
          if (!rc_.is_simple(r)) {
            report(Violation::Kind::NonSimpleInCounting,
                   "counting restriction " + to_string(c) + " uses non-simple role " + to_string(r) + " in " + where);
          }
        }
        if (c.number() > cap_) {
          report(Violation::Kind::NumberTooLarge,
                 "number " + std::to_string(c.number()) + " exceeds cap " + std::to_string(cap_) + " in " + where);
        }
        visit_concept(c.filler(), where);
        return;
      }
      default:
        return;
    }
  }

  void report(Violation::Kind k, std::string msg) {
    for (const auto& v : out_) {
      if (v.kind == k && v.message == msg) return;
    }
    out_.push_back({k, std::move(msg)});
  }

  std::vector<Violation> take() { return std::move(out_); }

 private:
  RoleClassification rc_;
  unsigned cap_;
  std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validate_shiqbs(const KnowledgeBase& kb, unsigned number_cap) {
  Validator v(kb, number_cap);
  for (const auto& c : kb.tbox()) v.visit_concept(c, to_string(Axiom(Gci{c})));
  for (const auto& ri : kb.role_inclusions()) {
    std::string where = to_string(Axiom(ri));
    v.role(ri.sub, where);
    v.role(ri.super, where);
  }
  return v.take();
}

namespace {

Concept nnf_impl(const Concept& c, bool negate) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Name:
      return negate ? Concept::negation(c) : c;
    case K::Top:
      return negate ? Concept::bottom() : c;
    case K::Bottom:
      return negate ? Concept::top() : c;
    case K::Not:
      return nnf_impl(c.operand(), !negate);
    case K::And:
      return negate ? Concept::disjunction(nnf_impl(c.left(), true), nnf_impl(c.right(), true))
                    : Concept::conjunction(nnf_impl(c.left(), false), nnf_impl(c.right(), false));
    case K::Or:
      return negate ? Concept::conjunction(nnf_impl(c.left(), true), nnf_impl(c.right(), true))
                    : Concept::disjunction(nnf_impl(c.left(), false), nnf_impl(c.right(), false));
    case K::Forall:
      return negate ? Concept::exists(c.role(), nnf_impl(c.filler(), true))
                    : Concept::forall(c.role(), nnf_impl(c.filler(), false));
    case K::Exists:
      return negate ? Concept::forall(c.role(), nnf_impl(c.filler(), true))
                    : Concept::exists(c.role(), nnf_impl(c.filler(), false));
    case K::AtMost:
      return negate ? Concept::at_least(c.number() + 1, c.role(), nnf_impl(c.filler(), false))
                    : Concept::at_most(c.number(), c.role(), nnf_impl(c.filler(), false));
    case K::AtLeast:
      return negate ? Concept::at_most(c.number() - 1, c.role(), nnf_impl(c.filler(), false))
                    : Concept::at_least(c.number(), c.role(), nnf_impl(c.filler(), false));
  }
  return c;
}

}  // namespace

Concept nnf(const Concept& c) { return nnf_impl(c, false); }

bool is_nnf(const Concept& c) {
  switch (c.kind()) {
    case Concept::Kind::Not:
      return c.operand().is(Concept::Kind::Name);
    case Concept::Kind::And:
    case Concept::Kind::Or:
      return is_nnf(c.left()) && is_nnf(c.right());
    case Concept::Kind::Forall:
    case Concept::Kind::Exists:
    case Concept::Kind::AtMost:
    case Concept::Kind::AtLeast:
      return is_nnf(c.filler());
    default:
      return true;
  }
}

namespace {

// Replaces every outermost quantified subconcept with a non-atomic filler.
// Quantifiers never sit below a negation in NNF, so only the Boolean spine
// needs to be searched.
Concept flatten_spine(const Concept& c, const std::function<Concept(const Concept&)>& replace) {
  switch (c.kind()) {
    case Concept::Kind::And:
      return Concept::conjunction(flatten_spine(c.left(), replace), flatten_spine(c.right(), replace));
    case Concept::Kind::Or:
      return Concept::disjunction(flatten_spine(c.left(), replace), flatten_spine(c.right(), replace));
    case Concept::Kind::Forall:
    case Concept::Kind::Exists:
    case Concept::Kind::AtMost:
    case Concept::Kind::AtLeast:
      return c.filler().is_atomic() ? c : replace(c);
    default:
      return c;
  }
}

Concept with_filler(const Concept& q, const Concept& f) {
  switch (q.kind()) {
    case Concept::Kind::Forall:
      return Concept::forall(q.role(), f);
    case Concept::Kind::Exists:
      return Concept::exists(q.role(), f);
    case Concept::Kind::AtMost:
      return Concept::at_most(q.number(), q.role(), f);
    default:
      return Concept::at_least(q.number(), q.role(), f);
  }
}

}  // namespace

KnowledgeBase flatten(const KnowledgeBase& kb) {
  KnowledgeBase out = kb.without_tbox();
  Signature sig = kb.signature();
  std::deque<Concept> queue;
  for (const auto& c : kb.tbox()) queue.push_back(nnf(c));

  auto replace = [&](const Concept& q) {
    Concept f = Concept::name(fresh_concept_name(sig, kFlattenPrefix));
    out.declare_concept(f.name());
    const Concept& d = q.filler();
    if (q.is(Concept::Kind::AtMost)) {
      queue.push_back(Concept::disjunction(nnf(Concept::negation(d)), f));
    } else {
      queue.push_back(Concept::disjunction(Concept::negation(f), d));
    }
    return with_filler(q, f);
  };

  while (!queue.empty()) {
    Concept c = queue.front();
    queue.pop_front();
    out.add_gci(flatten_spine(c, replace));
  }
  return out;
}

bool is_flat(const KnowledgeBase& kb) {
  std::function<bool(const Concept&)> flat = [&](const Concept& c) {
    switch (c.kind()) {
      case Concept::Kind::Not:
        return c.operand().is(Concept::Kind::Name);
      case Concept::Kind::And:
      case Concept::Kind::Or:
        return flat(c.left()) && flat(c.right());
      case Concept::Kind::Forall:
      case Concept::Kind::Exists:
      case Concept::Kind::AtMost:
      case Concept::Kind::AtLeast:
        return c.filler().is_atomic();
      default:
        return true;
    }
  };
  return std::all_of(kb.tbox().begin(), kb.tbox().end(), flat);
}

namespace {

void parts_into(const Concept& c, std::vector<Concept>& out) {
  switch (c.kind()) {
    case Concept::Kind::Top:
    case Concept::Kind::Bottom:
      return;
    case Concept::Kind::Not:
      parts_into(c.operand(), out);
      return;
    case Concept::Kind::And:
    case Concept::Kind::Or:
      parts_into(c.left(), out);
      parts_into(c.right(), out);
      return;
    case Concept::Kind::Name:
      break;
    default:
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
      parts_into(c.filler(), out);
      return;
  }
  if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
}

}  // namespace

std::vector<Concept> parts_of(const Concept& c) {
  std::vector<Concept> out;
  parts_into(c, out);
  return out;
}

std::vector<Concept> parts_of(const KnowledgeBase& kb) {
  std::vector<Concept> out;
  for (const auto& c : kb.tbox()) parts_into(c, out);
  return out;
}

}  // namespace domino
