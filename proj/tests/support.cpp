#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "domino/normal_form.hpp"
#include "domino/printer.hpp"

namespace support {

std::string data_path(const std::string& name) { return std::string(DOMINO_TEST_DATA) + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

template <class T>
const T& pick(std::mt19937& rng, const std::vector<T>& xs) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

int roll(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

AtomicRole random_atomic(std::mt19937& rng, const Vocabulary& v) { return AtomicRole(pick(rng, v.roles), roll(rng, 0, 1) == 1); }

}  // namespace

RoleExpr random_role(std::mt19937& rng, const Vocabulary& v) {
  if (!v.boolean_roles || roll(rng, 0, 2) > 0) return random_atomic(rng, v);
  RoleExpr a = random_atomic(rng, v);
  RoleExpr b = random_atomic(rng, v);
  switch (roll(rng, 0, 2)) {
    case 0:
      return RoleExpr::conjunction(a, b);
    case 1:
      return RoleExpr::disjunction(a, b);
    default:
      return RoleExpr::conjunction(a, RoleExpr::negation(b));
  }
}

Concept random_concept(std::mt19937& rng, const Vocabulary& v, int depth) {
  const int top = depth <= 0 ? 2 : (v.counting ? 9 : 7);
  switch (roll(rng, 0, top)) {
    case 0:
    case 1:
      return Concept::name(pick(rng, v.concepts));
    case 2:
      return roll(rng, 0, 3) == 0 ? (roll(rng, 0, 1) ? Concept::top() : Concept::bottom())
                                  : Concept::negation(Concept::name(pick(rng, v.concepts)));
    case 3:
      return Concept::negation(random_concept(rng, v, depth - 1));
    case 4:
      return Concept::conjunction(random_concept(rng, v, depth - 1), random_concept(rng, v, depth - 1));
    case 5:
      return Concept::disjunction(random_concept(rng, v, depth - 1), random_concept(rng, v, depth - 1));
    case 6:
      return Concept::exists(random_role(rng, v), random_concept(rng, v, depth - 1));
    case 7:
      return Concept::forall(random_role(rng, v), random_concept(rng, v, depth - 1));
    case 8:
      return Concept::at_most(static_cast<unsigned>(roll(rng, 0, static_cast<int>(v.max_number))), random_role(rng, v),
                              random_concept(rng, v, depth - 1));
    default:
      return Concept::at_least(static_cast<unsigned>(roll(rng, 1, static_cast<int>(v.max_number))), random_role(rng, v),
                               random_concept(rng, v, depth - 1));
  }
}

KnowledgeBase random_tbox(std::mt19937& rng, const Vocabulary& v, int axioms, int depth) {
  KnowledgeBase kb;
  for (int i = 0; i < axioms; ++i) {
    if (roll(rng, 0, 1)) {
      kb.add_subclass(random_concept(rng, v, depth - 1), random_concept(rng, v, depth));
    } else {
      kb.add_gci(random_concept(rng, v, depth));
    }
  }
  return kb;
}

FiniteInterpretation random_interpretation(std::mt19937& rng, const Vocabulary& v, std::size_t size) {
  FiniteInterpretation i;
  i.size = size;
  for (const auto& c : v.concepts) {
    for (Element e = 0; e < size; ++e) {
      if (roll(rng, 0, 1)) i.concepts[c].insert(e);
    }
  }
  for (const auto& r : v.roles) {
    for (Element a = 0; a < size; ++a) {
      for (Element b = 0; b < size; ++b) {
        if (roll(rng, 0, 2) == 0) i.roles[r].insert({a, b});
      }
    }
  }
  return i;
}

bool brute_role_entails(const std::set<AtomicRole>& rs, const RoleExpr& u) {
  switch (u.kind()) {
    case RoleExpr::Kind::Atomic:
      return rs.count(u.atom()) > 0;
    case RoleExpr::Kind::Not:
      return !brute_role_entails(rs, u.operand());
    case RoleExpr::Kind::And:
      return brute_role_entails(rs, u.left()) && brute_role_entails(rs, u.right());
    case RoleExpr::Kind::Or:
      return brute_role_entails(rs, u.left()) || brute_role_entails(rs, u.right());
  }
  return false;
}

bool eval_skeleton(const Concept& c, const std::set<Concept>& a) {
  switch (c.kind()) {
    case Concept::Kind::Top:
      return true;
    case Concept::Kind::Bottom:
      return false;
    case Concept::Kind::Not:
      return !eval_skeleton(c.operand(), a);
    case Concept::Kind::And:
      return eval_skeleton(c.left(), a) && eval_skeleton(c.right(), a);
    case Concept::Kind::Or:
      return eval_skeleton(c.left(), a) || eval_skeleton(c.right(), a);
    default:
      return a.count(c) > 0;
  }
}

FiniteInterpretation extend_to_flat(const FiniteInterpretation& i, const KnowledgeBase& flat) {
  std::vector<std::pair<std::string, Concept>> defs;
  for (const auto& ax : flat.tbox()) {
    if (!ax.is(Concept::Kind::Or) || !ax.left().is(Concept::Kind::Not)) continue;
    const Concept& n = ax.left().operand();
    if (n.is(Concept::Kind::Name) && n.name().rfind("__f", 0) == 0) defs.emplace_back(n.name(), ax.right());
  }
  FiniteInterpretation out = i;
  // Definitions are acyclic, so |defs| rounds reach the fixpoint.
  for (std::size_t round = 0; round <= defs.size(); ++round) {
    for (const auto& [name, body] : defs) out.concepts[name] = eval_concept(out, body);
  }
  return out;
}

std::string closure_violation(const DominoSet& ds, const KnowledgeBase& flat) {
  const auto& u = ds.universe();
  std::vector<Domino> all;
  std::map<std::set<Concept>, std::vector<std::size_t>> by_left;
  for (const auto& b : ds.members()) {
    all.push_back(ds.decode(b));
    by_left[all.back().left].push_back(all.size() - 1);
  }
  auto show = [](const Domino& d) {
    std::string s = "<{";
    for (const auto& c : d.left) s += to_string(c) + " ";
    s += "},{";
    for (const auto& r : d.roles) s += to_string(r) + " ";
    s += "},{";
    for (const auto& c : d.right) s += to_string(c) + " ";
    return s + "}>";
  };
  for (const auto& d : all) {
    for (const auto& ax : flat.tbox()) {
      if (!eval_skeleton(ax, d.left)) return "kb fails on " + show(d);
    }
    const auto& peers = by_left[d.left];
    for (const auto& c : u.concepts) {
      if (c.is(Concept::Kind::Exists) && eval_skeleton(c.filler(), d.right) && brute_role_entails(d.roles, c.role()) &&
          !d.left.count(c)) {
        return "ex fails on " + show(d);
      }
      if (c.is(Concept::Kind::Forall) && d.left.count(c) && brute_role_entails(d.roles, c.role()) &&
          !eval_skeleton(c.filler(), d.right)) {
        return "uni fails on " + show(d);
      }
      if (c.is(Concept::Kind::Exists) && d.left.count(c)) {
        bool ok = false;
        for (auto k : peers) {
          ok |= brute_role_entails(all[k].roles, c.role()) && eval_skeleton(c.filler(), all[k].right);
        }
        if (!ok) return "delex fails on " + show(d) + " for " + to_string(c);
      }
      if (c.is(Concept::Kind::Forall) && !d.left.count(c)) {
        bool ok = false;
        for (auto k : peers) {
          ok |= brute_role_entails(all[k].roles, c.role()) && !eval_skeleton(c.filler(), all[k].right);
        }
        if (!ok) return "deluni fails on " + show(d) + " for " + to_string(c);
      }
    }
    Domino mirror{d.right, {}, d.left};
    for (const auto& r : d.roles) mirror.roles.insert(r.inverse());
    if (!ds.contains(mirror)) return "sym fails on " + show(d);
  }
  return "";
}

}  // namespace support
