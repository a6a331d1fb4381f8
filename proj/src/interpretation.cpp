#include "domino/interpretation.hpp"

#include <algorithm>
#include <functional>
#include <vector>

#include "domino/error.hpp"
#include "domino/printer.hpp"

namespace domino {

namespace {

using Row = std::vector<bool>;
using Matrix = std::vector<Row>;  // m[x][y]: (x, y) in the role

Matrix role_matrix(const FiniteInterpretation& in, const RoleExpr& u) {
  const std::size_t n = in.size;
  Matrix m(n, Row(n, false));
  switch (u.kind()) {
    case RoleExpr::Kind::Atomic: {
      auto it = in.roles.find(u.atom().name);
      if (it == in.roles.end()) return m;
      for (const auto& [a, b] : it->second) {
        if (a >= n || b >= n) throw Error("role pair outside the domain for " + u.atom().name);
        if (u.atom().inverted) m[b][a] = true; else m[a][b] = true;
      }
      return m;
    }
    case RoleExpr::Kind::Not: {
      m = role_matrix(in, u.operand());
      for (auto& row : m) row.flip();
      return m;
    }
    case RoleExpr::Kind::And:
    case RoleExpr::Kind::Or: {
      Matrix a = role_matrix(in, u.left());
      Matrix b = role_matrix(in, u.right());
      bool conj = u.kind() == RoleExpr::Kind::And;
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) m[x][y] = conj ? (a[x][y] && b[x][y]) : (a[x][y] || b[x][y]);
      }
      return m;
    }
  }
  return m;
}

Row concept_row(const FiniteInterpretation& in, const Concept& c) {
  const std::size_t n = in.size;
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Name: {
      Row r(n, false);
      auto it = in.concepts.find(c.name());
      if (it != in.concepts.end()) {
        for (Element e : it->second) {
          if (e >= n) throw Error("element outside the domain for " + c.name());
          r[e] = true;
        }
      }
      return r;
    }
    case K::Top:
      return Row(n, true);
    case K::Bottom:
      return Row(n, false);
    case K::Not: {
      Row r = concept_row(in, c.operand());
      r.flip();
      return r;
    }
    case K::And:
    case K::Or: {
      Row a = concept_row(in, c.left());
      Row b = concept_row(in, c.right());
      for (std::size_t x = 0; x < n; ++x) a[x] = c.is(K::And) ? (a[x] && b[x]) : (a[x] || b[x]);
      return a;
    }
    default: {
      Matrix m = role_matrix(in, c.role());
      Row f = concept_row(in, c.filler());
      Row r(n, false);
      for (std::size_t x = 0; x < n; ++x) {
        std::size_t hits = 0, misses = 0;
        for (std::size_t y = 0; y < n; ++y) {
          if (!m[x][y]) continue;
          if (f[y]) ++hits; else ++misses;
        }
        switch (c.kind()) {
          case K::Forall: r[x] = misses == 0; break;
          case K::Exists: r[x] = hits > 0; break;
          case K::AtMost: r[x] = hits <= c.number(); break;
          default: r[x] = hits >= c.number(); break;
        }
      }
      return r;
    }
  }
}

}  // namespace

std::set<Element> eval_concept(const FiniteInterpretation& i, const Concept& c) {
  Row r = concept_row(i, c);
  std::set<Element> out;
  for (Element x = 0; x < r.size(); ++x) {
    if (r[x]) out.insert(x);
  }
  return out;
}

std::set<ElementPair> eval_role(const FiniteInterpretation& i, const RoleExpr& u) {
  Matrix m = role_matrix(i, u);
  std::set<ElementPair> out;
  for (Element x = 0; x < i.size; ++x) {
    for (Element y = 0; y < i.size; ++y) {
      if (m[x][y]) out.insert({x, y});
    }
  }
  return out;
}

namespace {

bool rule_holds(const FiniteInterpretation& in, const Rule& rule, const std::vector<Element>& named) {
  std::vector<std::string> vars;
  auto note = [&](const Term& t) {
    if (t.is_variable() && std::find(vars.begin(), vars.end(), t.name) == vars.end()) vars.push_back(t.name);
  };
  for (const auto* side : {&rule.body, &rule.head}) {
    for (const auto& a : *side) {
      std::visit(
          [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ConceptAtom>) note(x.arg);
            else if constexpr (std::is_same_v<T, RoleAtom>) { note(x.first); note(x.second); }
            else { note(x.left); note(x.right); }
          },
          a);
    }
  }
  std::map<std::string, Element> val;
  auto value = [&](const Term& t) -> Element {
    if (t.is_variable()) return val.at(t.name);
    auto it = in.individuals.find(t.name);
    if (it == in.individuals.end()) throw Error("interpretation does not name individual " + t.name);
    return it->second;
  };
  auto holds = [&](const Atom& a) -> bool {
    if (const auto* c = std::get_if<ConceptAtom>(&a)) {
      auto it = in.concepts.find(c->concept_name);
      return it != in.concepts.end() && it->second.count(value(c->arg));
    }
    if (const auto* r = std::get_if<RoleAtom>(&a)) {
      auto it = in.roles.find(r->role);
      return it != in.roles.end() && it->second.count({value(r->first), value(r->second)});
    }
    const auto& e = std::get<EqualityAtom>(a);
    return value(e.left) == value(e.right);
  };
  std::function<bool(std::size_t)> go = [&](std::size_t k) -> bool {
    if (k == vars.size()) {
      for (const auto& a : rule.body) {
        if (!holds(a)) return true;
      }
      for (const auto& a : rule.head) {
        if (!holds(a)) return false;
      }
      return !rule.head.empty();
    }
    for (Element e : named) {
      val[vars[k]] = e;
      if (!go(k + 1)) return false;
    }
    return true;
  };
  return go(0);
}

}  // namespace

bool check_model(const FiniteInterpretation& i, const KnowledgeBase& kb, std::string* why) {
  auto fail = [&](const Axiom& a) {
    if (why) *why = to_string(a);
    return false;
  };
  for (const auto& c : kb.tbox()) {
    if (eval_concept(i, c).size() != i.size) return fail(Gci{c});
  }
  for (const auto& ri : kb.role_inclusions()) {
    auto sub = eval_role(i, ri.sub);
    auto sup = eval_role(i, ri.super);
    for (const auto& p : sub) {
      if (!sup.count(p)) return fail(ri);
    }
  }
  for (const auto& t : kb.transitivity()) {
    auto r = eval_role(i, RoleExpr(AtomicRole(t.role.name)));
    for (const auto& [a, b] : r) {
      for (const auto& [c, d] : r) {
        if (b == c && !r.count({a, d})) return fail(t);
      }
    }
  }
  std::set<Element> named_set;
  for (const auto& [n, e] : i.individuals) named_set.insert(e);
  std::vector<Element> named(named_set.begin(), named_set.end());
  for (const auto& r : kb.rules()) {
    if (!rule_holds(i, r, named)) return fail(r);
  }
  return true;
}

}  // namespace domino
