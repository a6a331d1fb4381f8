#include "domino/printer.hpp"

#include <ostream>
#include <sstream>

namespace domino {

std::string to_string(const AtomicRole& r) { return r.inverted ? "inv(" + r.name + ")" : r.name; }

std::string to_string(const RoleExpr& u) {
  switch (u.kind()) {
    case RoleExpr::Kind::Atomic:
      return to_string(u.atom());
    case RoleExpr::Kind::Not:
      return "not(" + to_string(u.operand()) + ")";
    case RoleExpr::Kind::And:
      return "and(" + to_string(u.left()) + "," + to_string(u.right()) + ")";
    case RoleExpr::Kind::Or:
      return "or(" + to_string(u.left()) + "," + to_string(u.right()) + ")";
  }
  return "?";
}

std::string to_string(const Concept& c) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Name:
      return c.name();
    case K::Top:
      return "Top";
    case K::Bottom:
      return "Bottom";
    case K::Not:
      return "not(" + to_string(c.operand()) + ")";
    case K::And:
      return "and(" + to_string(c.left()) + "," + to_string(c.right()) + ")";
    case K::Or:
      return "or(" + to_string(c.left()) + "," + to_string(c.right()) + ")";
    case K::Forall:
      return "all(" + to_string(c.role()) + "," + to_string(c.filler()) + ")";
    case K::Exists:
      return "some(" + to_string(c.role()) + "," + to_string(c.filler()) + ")";
    case K::AtMost:
      return "atmost(" + std::to_string(c.number()) + "," + to_string(c.role()) + "," + to_string(c.filler()) + ")";
    case K::AtLeast:
      return "atleast(" + std::to_string(c.number()) + "," + to_string(c.role()) + "," + to_string(c.filler()) + ")";
  }
  return "?";
}

std::string to_string(const Term& t) { return t.is_variable() ? "?" + t.name : t.name; }

std::string to_string(const Atom& a) {
  if (const auto* c = std::get_if<ConceptAtom>(&a)) return c->concept_name + "(" + to_string(c->arg) + ")";
  if (const auto* r = std::get_if<RoleAtom>(&a)) {
    return r->role + "(" + to_string(r->first) + "," + to_string(r->second) + ")";
  }
  const auto& e = std::get<EqualityAtom>(a);
  return to_string(e.left) + " ~ " + to_string(e.right);
}

namespace {

std::string join_atoms(const std::vector<Atom>& atoms) {
  std::string s;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) s += ", ";
    s += to_string(atoms[i]);
  }
  return s;
}

}  // namespace

std::string to_string(const Rule& r) {
  std::string s = "Rule(";
  if (!r.body.empty()) s += join_atoms(r.body) + " ";
  s += "->";
  if (!r.head.empty()) s += " " + join_atoms(r.head);
  return s + ")";
}

std::string to_string(const Axiom& a) {
  if (const auto* g = std::get_if<Gci>(&a)) return "Valid(" + to_string(g->expr) + ")";
  if (const auto* r = std::get_if<RoleInclusion>(&a)) {
    return "SubRoleOf(" + to_string(r->sub) + ", " + to_string(r->super) + ")";
  }
  if (const auto* t = std::get_if<Transitivity>(&a)) return "Transitive(" + to_string(t->role) + ")";
  return to_string(std::get<Rule>(a));
}

std::string to_string(const Query& q) {
  switch (q.kind) {
    case Query::Kind::Satisfiability:
      return "sat";
    case Query::Kind::ConceptFact:
      return to_string(q.target.at(0)) + "(" + q.first + ")";
    case Query::Kind::RoleFact:
      return q.role + "(" + q.first + "," + q.second + ")";
    case Query::Kind::SameAs:
      return q.first + " ~ " + q.second;
  }
  return "?";
}

void write_kb(std::ostream& out, const KnowledgeBase& kb) {
  for (const auto& a : kb.axioms()) out << to_string(a) << "\n";
}

std::string to_string(const KnowledgeBase& kb) {
  std::ostringstream ss;
  write_kb(ss, kb);
  return ss.str();
}

}  // namespace domino
