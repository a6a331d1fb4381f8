#include "domino/reduction.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "domino/normal_form.hpp"
#include "domino/printer.hpp"

namespace domino {

// ------------------------------------------------------------------- trace

StageTrace diff_stage(const std::string& stage, const KnowledgeBase& before, const KnowledgeBase& after) {
  StageTrace t;
  t.stage = stage;
  auto a = before.axioms();
  auto b = after.axioms();
  for (const auto& x : b) {
    if (std::find(a.begin(), a.end(), x) == a.end()) t.added.push_back(x);
  }
  for (const auto& x : a) {
    if (std::find(b.begin(), b.end(), x) == b.end()) t.removed.push_back(x);
  }
  const auto& s0 = before.signature();
  const auto& s1 = after.signature();
  for (const auto& n : s1.concepts) {
    if (!s0.concepts.count(n)) t.fresh_names.push_back(n);
  }
  for (const auto& n : s1.roles) {
    if (!s0.roles.count(n)) t.fresh_names.push_back(n);
  }
  return t;
}

KnowledgeBase replay(const KnowledgeBase& kb, const StageTrace& t) {
  KnowledgeBase out = kb.without_tbox().without_role_inclusions().without_transitivity().without_rules();
  for (const auto& a : kb.axioms()) {
    if (std::find(t.removed.begin(), t.removed.end(), a) == t.removed.end()) out.add(a);
  }
  for (const auto& a : t.added) out.add(a);
  return out;
}

void ReductionTrace::write(std::ostream& out) const {
  for (const auto& s : stages) {
    for (const auto& a : s.removed) out << s.stage << "\tremove\t" << to_string(a) << "\n";
    for (const auto& a : s.added) out << s.stage << "\tadd\t" << to_string(a) << "\n";
  }
}

std::string ReductionTrace::str() const {
  std::ostringstream ss;
  write(ss);
  return ss.str();
}

// ------------------------------------------------------------- predicates

namespace {

bool any_subconcept(const Concept& c, const std::function<bool(const Concept&)>& pred) {
  if (pred(c)) return true;
  switch (c.kind()) {
    case Concept::Kind::Not:
      return any_subconcept(c.operand(), pred);
    case Concept::Kind::And:
    case Concept::Kind::Or:
      return any_subconcept(c.left(), pred) || any_subconcept(c.right(), pred);
    case Concept::Kind::Forall:
    case Concept::Kind::Exists:
    case Concept::Kind::AtMost:
    case Concept::Kind::AtLeast:
      return any_subconcept(c.filler(), pred);
    default:
      return false;
  }
}

bool any_in_tbox(const KnowledgeBase& kb, const std::function<bool(const Concept&)>& pred) {
  return std::any_of(kb.tbox().begin(), kb.tbox().end(),
                     [&](const Concept& c) { return any_subconcept(c, pred); });
}

// Rewrites the Boolean spine of an NNF concept, applying f at quantified nodes.
Concept rewrite_spine(const Concept& c, const std::function<Concept(const Concept&)>& f) {
  switch (c.kind()) {
    case Concept::Kind::And:
      return Concept::conjunction(rewrite_spine(c.left(), f), rewrite_spine(c.right(), f));
    case Concept::Kind::Or:
      return Concept::disjunction(rewrite_spine(c.left(), f), rewrite_spine(c.right(), f));
    case Concept::Kind::Forall:
    case Concept::Kind::Exists:
    case Concept::Kind::AtMost:
    case Concept::Kind::AtLeast:
      return f(c);
    default:
      return c;
  }
}

const Term kX = Term::variable("x");
const Term kY = Term::variable("y");
const Term kZ = Term::variable("z");

std::vector<AtomicRole> atomic_roles_of(const Signature& sig) {
  std::vector<AtomicRole> out;
  for (const auto& n : sig.roles) out.emplace_back(n);
  for (const auto& n : sig.roles) out.emplace_back(n, true);
  return out;
}

}  // namespace

bool has_transitivity(const KnowledgeBase& kb) { return !kb.transitivity().empty(); }

bool has_at_least(const KnowledgeBase& kb) {
  return any_in_tbox(kb, [](const Concept& c) { return c.is(Concept::Kind::AtLeast); });
}

bool has_counting(const KnowledgeBase& kb) {
  return any_in_tbox(kb, [](const Concept& c) { return c.is_counting(); });
}

bool is_functionality_axiom(const Concept& c) {
  return c.is(Concept::Kind::AtMost) && c.number() == 1 && c.role().is_atomic() &&
         c.filler().is(Concept::Kind::Top);
}

bool has_at_most_other_than_functionality(const KnowledgeBase& kb) {
  for (const auto& ax : kb.tbox()) {
    if (is_functionality_axiom(ax)) continue;
    if (any_subconcept(ax, [](const Concept& c) { return c.is(Concept::Kind::AtMost); })) return true;
  }
  return false;
}

// ------------------------------------------------------------- transitivity

std::vector<Concept> cl_closure(const KnowledgeBase& kb) {
  RoleClassification rc = classify_roles(kb);
  std::vector<AtomicRole> transitive;
  for (const auto& r : atomic_roles_of(kb.signature())) {
    if (kb.is_transitive(r)) transitive.push_back(r);
  }

  std::vector<Concept> out;
  std::deque<Concept> work;
  auto push = [&](const Concept& c) {
    if (std::find(out.begin(), out.end(), c) != out.end()) return;
    out.push_back(c);
    work.push_back(c);
  };
  for (const auto& c : kb.tbox()) push(nnf(c));
  while (!work.empty()) {
    Concept c = work.front();
    work.pop_front();
    switch (c.kind()) {
      case Concept::Kind::Not:
        push(c.operand());
        break;
      case Concept::Kind::And:
      case Concept::Kind::Or:
        push(c.left());
        push(c.right());
        break;
      case Concept::Kind::Forall:
        push(c.filler());
        if (c.role().is_atomic()) {
          for (const auto& s : transitive) {
            if (rc.sub_role(s, c.role().atom())) push(Concept::forall(s, c.filler()));
          }
        }
        break;
      case Concept::Kind::AtMost:
        push(c.filler());
        push(nnf(Concept::negation(c.filler())));
        break;
      case Concept::Kind::Exists:
      case Concept::Kind::AtLeast:
        push(c.filler());
        break;
      default:
        break;
    }
  }
  return out;
}

KnowledgeBase transform_es(const KnowledgeBase& kb) {
  KnowledgeBase out = kb.without_transitivity();
  // Box propagation is only sound for roles that are actually transitive.
  for (const auto& c : cl_closure(kb)) {
    if (!c.is(Concept::Kind::Forall) || !c.role().is_atomic()) continue;
    if (!kb.is_transitive(c.role().atom())) continue;
    out.add_subclass(c, Concept::forall(c.role(), c));
  }
  std::set<std::string> names;
  for (const auto& t : kb.transitivity()) names.insert(t.role.name);
  for (const auto& n : names) {
    for (bool inv : {false, true}) {
      AtomicRole s(n, inv);
      std::string self = self_concept_name(s);
      out.add_subclass(Concept::exists(RoleExpr::conjunction(s, s.inverse()), Concept::top()), Concept::name(self));
      out.add_rule(Rule{{ConceptAtom{self, kX}}, {role_atom(s, kX, kX)}});
      out.add_rule(Rule{{role_atom(s, kX, kY), role_atom(s, kY, kZ)}, {role_atom(s, kX, kZ)}});
    }
  }
  return out;
}

// ------------------------------------------------------------ counting roles

KnowledgeBase atomize_counting_roles(const KnowledgeBase& kb) {
  if (!any_in_tbox(kb, [](const Concept& c) { return c.is_counting() && !c.role().is_atomic(); })) return kb;
  KnowledgeBase out = kb.without_tbox();
  Signature sig = kb.signature();
  std::vector<std::pair<RoleExpr, AtomicRole>> fresh;

  std::function<Concept(const Concept&)> rw = [&](const Concept& c) -> Concept {
    switch (c.kind()) {
      case Concept::Kind::Not:
        return Concept::negation(rw(c.operand()));
      case Concept::Kind::And:
        return Concept::conjunction(rw(c.left()), rw(c.right()));
      case Concept::Kind::Or:
        return Concept::disjunction(rw(c.left()), rw(c.right()));
      case Concept::Kind::Forall:
        return Concept::forall(c.role(), rw(c.filler()));
      case Concept::Kind::Exists:
        return Concept::exists(c.role(), rw(c.filler()));
      case Concept::Kind::AtMost:
      case Concept::Kind::AtLeast: {
        RoleExpr u = c.role();
        if (!u.is_atomic()) {
          auto it = std::find_if(fresh.begin(), fresh.end(), [&](const auto& p) { return p.first == u; });
          if (it == fresh.end()) {
            AtomicRole r(fresh_role_name(sig, kRolePrefix));
            out.declare_role(r.name);
            fresh.emplace_back(u, r);
            it = std::prev(fresh.end());
          }
          u = it->second;
        }
        return c.is(Concept::Kind::AtMost) ? Concept::at_most(c.number(), u, rw(c.filler()))
                                            : Concept::at_least(c.number(), u, rw(c.filler()));
      }
      default:
        return c;
    }
  };
  for (const auto& c : kb.tbox()) out.add_gci(rw(c));
  for (const auto& [u, r] : fresh) {
    out.add_gci(Concept::forall(RoleExpr::conjunction(u, RoleExpr::negation(r)), Concept::bottom()));
    out.add_gci(Concept::forall(RoleExpr::conjunction(RoleExpr::negation(u), r), Concept::bottom()));
  }
  return out;
}

// --------------------------------------------------------------- at-least

KnowledgeBase transform_ege(const KnowledgeBase& kb) {
  // Negated at-most restrictions turn into at-least ones under NNF, so the
  // test runs on the flattened form.
  if (!has_counting(kb)) return kb;
  KnowledgeBase flat = flatten(kb);
  if (!has_at_least(flat)) return flat;
  KnowledgeBase out = flat.without_tbox();
  Signature sig = flat.signature();
  std::vector<Concept> extra;

  auto replace = [&](const Concept& c) -> Concept {
    if (!c.is(Concept::Kind::AtLeast)) return c;
    std::vector<AtomicRole> rs;
    std::vector<Concept> conj;
    for (unsigned i = 0; i < c.number(); ++i) {
      rs.emplace_back(fresh_role_name(sig, kRolePrefix));
      out.declare_role(rs.back().name);
      conj.push_back(Concept::exists(rs.back(), c.filler()));
      out.add_role_inclusion(rs.back(), c.role());
    }
    for (std::size_t i = 0; i < rs.size(); ++i) {
      for (std::size_t k = i + 1; k < rs.size(); ++k) {
        extra.push_back(Concept::forall(RoleExpr::conjunction(rs[i], rs[k]), Concept::bottom()));
      }
    }
    return conjunction_of(conj);
  };
  for (const auto& c : flat.tbox()) out.add_gci(rewrite_spine(c, replace));
  for (const auto& c : extra) out.add_gci(c);
  return out;
}

// --------------------------------------------------------- role hierarchy

KnowledgeBase transform_eh(const KnowledgeBase& kb) {
  KnowledgeBase out = kb.without_role_inclusions();
  for (const auto& ri : kb.role_inclusions()) {
    out.add_gci(Concept::forall(RoleExpr::conjunction(ri.sub, RoleExpr::negation(ri.super)), Concept::bottom()));
  }
  return out;
}

// ---------------------------------------------------------------- at-most

KnowledgeBase transform_ele(const KnowledgeBase& kb) {
  if (!has_counting(kb)) return kb;
  KnowledgeBase flat = flatten(kb);
  if (!has_at_most_other_than_functionality(flat)) return flat;
  KnowledgeBase out = flat.without_tbox();
  Signature sig = flat.signature();
  std::vector<Concept> extra;

  auto replace = [&](const Concept& c) -> Concept {
    if (!c.is(Concept::Kind::AtMost)) return c;
    if (!c.role().is_atomic()) throw std::logic_error("at-most restriction over a non-atomic role: " + to_string(c));
    RoleExpr u = c.role();
    for (unsigned i = 0; i < c.number(); ++i) {
      AtomicRole r(fresh_role_name(sig, kRolePrefix));
      out.declare_role(r.name);
      u = RoleExpr::conjunction(u, RoleExpr::negation(r));
      extra.push_back(Concept::forall(r, c.filler()));
      extra.push_back(Concept::at_most(1, r, Concept::top()));
    }
    return Concept::forall(u, nnf(Concept::negation(c.filler())));
  };
  for (const auto& c : flat.tbox()) {
    out.add_gci(is_functionality_axiom(c) ? c : rewrite_spine(c, replace));
  }
  for (const auto& c : extra) out.add_gci(c);
  return out;
}

// ----------------------------------------------------------- functionality

KnowledgeBase transform_ef(const KnowledgeBase& kb) {
  std::vector<AtomicRole> functional;
  KnowledgeBase out = kb.without_tbox();
  for (const auto& c : kb.tbox()) {
    if (is_functionality_axiom(c)) {
      if (std::find(functional.begin(), functional.end(), c.role().atom()) == functional.end()) {
        functional.push_back(c.role().atom());
      }
    } else {
      out.add_gci(c);
    }
  }
  if (functional.empty()) return kb;
  std::vector<Concept> parts = parts_of(out);
  std::vector<AtomicRole> roles = atomic_roles_of(kb.signature());
  for (const auto& r : functional) {
    for (const auto& d : parts) {
      out.add_gci(Concept::disjunction(Concept::forall(r, Concept::negation(d)), Concept::forall(r, d)));
    }
    for (const auto& s : roles) {
      out.add_gci(Concept::disjunction(
          Concept::forall(RoleExpr::conjunction(r, s), Concept::bottom()),
          Concept::forall(RoleExpr::conjunction(r, RoleExpr::negation(s)), Concept::bottom())));
    }
    out.add_rule(Rule{{role_atom(r, kX, kY), role_atom(r, kX, kZ)}, {EqualityAtom{kY, kZ}}});
  }
  return out;
}

// ------------------------------------------------------------------ full

KnowledgeBase transform_full(const KnowledgeBase& kb, ReductionTrace* trace) {
  using Stage = KnowledgeBase (*)(const KnowledgeBase&);
  const std::pair<const char*, Stage> stages[] = {
      {"Es", transform_es},   {"atomize", atomize_counting_roles},
      {"Ege", transform_ege}, {"Eh", transform_eh},
      {"Ele", transform_ele}, {"Ef", transform_ef},
  };
  KnowledgeBase cur = kb;
  for (const auto& [name, fn] : stages) {
    KnowledgeBase next = fn(cur);
    if (trace) trace->stages.push_back(diff_stage(name, cur, next));
    cur = std::move(next);
  }
  return cur;
}

}  // namespace domino
