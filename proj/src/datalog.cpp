#include "domino/datalog.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <ostream>
#include <sstream>

#include "domino/error.hpp"
#include "domino/printer.hpp"

namespace domino {

const PredicateInfo* DatalogProgram::find(std::string_view name) const {
  for (const auto& p : predicates) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

namespace {

std::optional<std::string> find_label(const DatalogProgram& p, PredicateInfo::Kind kind, const std::string& label) {
  for (const auto& q : p.predicates) {
    if (q.kind == kind && q.label == label) return q.name;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> DatalogProgram::concept_predicate(const Concept& c) const {
  return find_label(*this, PredicateInfo::Kind::Concept, to_string(c));
}

std::optional<std::string> DatalogProgram::role_predicate(const std::string& role) const {
  return find_label(*this, PredicateInfo::Kind::Role, role);
}

std::string DatalogProgram::intern(PredicateInfo::Kind kind, const std::string& label) {
  if (auto n = find_label(*this, kind, label)) return *n;
  std::size_t k = 0;
  for (const auto& q : predicates) k += q.kind == kind;
  std::string name;
  switch (kind) {
    case PredicateInfo::Kind::Concept: name = "s_c" + std::to_string(k); break;
    case PredicateInfo::Kind::Role: name = "s_r" + std::to_string(k); break;
    case PredicateInfo::Kind::Node: name = "a_" + std::to_string(k + 1); break;
  }
  predicates.push_back({kind, name, label});
  return name;
}

bool DatalogProgram::uses_equality() const {
  for (const auto& r : rules) {
    for (const auto* side : {&r.head, &r.body}) {
      for (const auto& a : *side) {
        if (a.is_equality()) return true;
      }
    }
  }
  return false;
}

namespace {

const DTerm kX = DTerm::var("X");
const DTerm kY = DTerm::var("Y");

// Variables of one source rule get capitalized names; on a clash the whole
// rule falls back to V0, V1, ...
std::map<std::string, std::string> variable_names(const Rule& r) {
  std::vector<std::string> order;
  auto note = [&](const Term& t) {
    if (t.is_variable() && std::find(order.begin(), order.end(), t.name) == order.end()) order.push_back(t.name);
  };
  for (const auto* side : {&r.body, &r.head}) {
    for (const auto& a : *side) {
      if (const auto* c = std::get_if<ConceptAtom>(&a)) {
        note(c->arg);
      } else if (const auto* ra = std::get_if<RoleAtom>(&a)) {
        note(ra->first);
        note(ra->second);
      } else {
        const auto& e = std::get<EqualityAtom>(a);
        note(e.left);
        note(e.right);
      }
    }
  }
  std::map<std::string, std::string> out;
  std::set<std::string> used;
  bool clash = false;
  for (const auto& v : order) {
    std::string n = v;
    if (std::islower(static_cast<unsigned char>(n[0]))) {
      n[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(n[0])));
    } else if (!std::isupper(static_cast<unsigned char>(n[0]))) {
      n = "V" + n;
    }
    clash |= !used.insert(n).second;
    out[v] = n;
  }
  if (clash) {
    for (std::size_t i = 0; i < order.size(); ++i) out[order[i]] = "V" + std::to_string(i);
  }
  return out;
}

}  // namespace

DatalogProgram emit_program(const CompiledTBox& ct, const KnowledgeBase& kb, EmitStats* stats) {
  using K = PredicateInfo::Kind;
  DatalogProgram p;
  const DominoUniverse& u = ct.universe();
  for (const auto& c : u.concepts) p.intern(K::Concept, to_string(c));
  for (const auto& r : u.role_names) p.intern(K::Role, r);
  p.constants.assign(kb.signature().individuals.begin(), kb.signature().individuals.end());

  EmitStats st;
  for (const auto& rule : kb.rules()) {
    auto vars = variable_names(rule);
    auto term = [&](const Term& t) { return t.is_variable() ? DTerm::var(vars.at(t.name)) : DTerm::constant(t.name); };
    auto atom = [&](const Atom& a) {
      if (const auto* c = std::get_if<ConceptAtom>(&a)) {
        if (!kb.signature().concepts.count(c->concept_name)) {
          p.diagnostics.push_back("rule mentions undeclared concept " + c->concept_name);
        }
        return DAtom{p.intern(K::Concept, c->concept_name), {term(c->arg)}};
      }
      if (const auto* r = std::get_if<RoleAtom>(&a)) {
        if (!kb.signature().roles.count(r->role)) {
          p.diagnostics.push_back("rule mentions undeclared role " + r->role);
        }
        return DAtom{p.intern(K::Role, r->role), {term(r->first), term(r->second)}};
      }
      const auto& e = std::get<EqualityAtom>(a);
      return DAtom{kEqualityPredicate, {term(e.left), term(e.right)}};
    };
    std::vector<DAtom> body;
    for (const auto& a : rule.body) body.push_back(atom(a));
    if (rule.head.empty()) {
      p.rules.push_back({{}, body});
      ++st.rule_atoms;
    }
    for (const auto& h : rule.head) {
      p.rules.push_back({{atom(h)}, body});
      ++st.rule_atoms;
    }
  }

  const obdd::Manager& m = ct.manager();
  const obdd::Func tau = ct.tau();
  const DominoEncoding& enc = ct.encoding();
  std::map<std::uint32_t, std::string> names;
  std::size_t next_node = 1;
  auto node_label = [&](obdd::Func f) {
    std::string id = "node " + std::to_string(f.id()) + " ";
    if (f.is_constant()) return id + (f.is_true() ? "true" : "false");
    return id + enc.label_at(m.top_var(f));
  };
  auto name_of = [&](obdd::Func f) -> const std::string& {
    auto it = names.find(f.id());
    if (it != names.end()) return it->second;
    std::string n;
    if (f.is_false()) {
      n = "a_false";
    } else if (f == tau) {
      n = "a_root";
    } else if (f.is_true()) {
      n = "a_true";
    } else {
      n = "a_" + std::to_string(next_node++);
    }
    p.predicates.push_back({K::Node, n, node_label(f)});
    return names.emplace(f.id(), n).first->second;
  };

  p.rules.push_back({{DAtom{name_of(tau), {kX, kY}}}, {}});
  p.rules.push_back({{}, {DAtom{name_of(m.constant(false)), {kX, kY}}}});

  const auto inner = m.internal_nodes(tau);
  for (const auto& n : inner) name_of(n);
  for (const auto& n : inner) {
    const DominoVar& v = enc.var_at(m.top_var(n));
    DAtom cond;
    if (v.kind == DominoVar::Kind::Concept) {
      cond = DAtom{p.intern(K::Concept, to_string(u.concepts[v.index])), {v.side == 1 ? kX : kY}};
    } else {
      const AtomicRole r = u.role(v.index);
      const std::string pred = p.intern(K::Role, r.name);
      cond = r.inverted ? DAtom{pred, {kY, kX}} : DAtom{pred, {kX, kY}};
    }
    const DAtom self{name_of(n), {kX, kY}};
    p.rules.push_back({{DAtom{name_of(m.high(n)), {kX, kY}}}, {cond, self}});
    p.rules.push_back({{DAtom{name_of(m.low(n)), {kX, kY}}, cond}, {self}});
  }
  st.labeled_nodes = inner.size();
  if (stats) *stats = st;
  return p;
}

void axiomatize_equality(DatalogProgram& p, bool full) {
  const DTerm x = DTerm::var("X"), y = DTerm::var("Y"), z = DTerm::var("Z");
  const std::string eq = kEqualityPredicate;
  for (const auto& c : p.constants) p.rules.push_back({{DAtom{eq, {DTerm::constant(c), DTerm::constant(c)}}}, {}});
  if (!full) return;
  p.rules.push_back({{DAtom{eq, {y, x}}}, {DAtom{eq, {x, y}}}});
  p.rules.push_back({{DAtom{eq, {x, z}}}, {DAtom{eq, {x, y}}, DAtom{eq, {y, z}}}});
  for (const auto& q : p.predicates) {
    if (q.arity() == 1) {
      p.rules.push_back({{DAtom{q.name, {y}}}, {DAtom{q.name, {x}}, DAtom{eq, {x, y}}}});
    } else {
      p.rules.push_back({{DAtom{q.name, {y, z}}}, {DAtom{q.name, {x, z}}, DAtom{eq, {x, y}}}});
      p.rules.push_back({{DAtom{q.name, {z, y}}}, {DAtom{q.name, {z, x}}, DAtom{eq, {x, y}}}});
    }
  }
}

namespace {

bool plain_constant(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string spell(const DTerm& t) {
  if (t.variable || plain_constant(t.name)) return t.name;
  std::string s = "'";
  for (char c : t.name) {
    if (c == '\'' || c == '\\') s += '\\';
    s += c;
  }
  return s + "'";
}

std::string join(const std::vector<DAtom>& atoms, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) s += sep;
    s += to_string(atoms[i]);
  }
  return s;
}

}  // namespace

std::string to_string(const DAtom& a) {
  if (a.is_equality()) return spell(a.args.at(0)) + " ~ " + spell(a.args.at(1));
  std::string s = a.predicate + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) s += ",";
    s += spell(a.args[i]);
  }
  return s + ")";
}

std::string to_string(const DatalogRule& r) {
  std::string s = join(r.head, " | ");
  if (!r.body.empty() || r.head.empty()) {
    if (!s.empty()) s += " ";
    s += ":-";
    if (!r.body.empty()) s += " " + join(r.body, ", ");
  }
  return s + ".";
}

void serialize(std::ostream& out, const DatalogProgram& p) {
  for (const auto& c : p.constants) out << "%! const " << spell(DTerm::constant(c)) << "\n";
  for (const auto& q : p.predicates) out << "%! map " << q.name << " = " << q.label << "\n";
  for (const auto& r : p.rules) out << to_string(r) << "\n";
}

std::string serialize(const DatalogProgram& p) {
  std::ostringstream ss;
  serialize(ss, p);
  return ss.str();
}

namespace {

class LineReader {
 public:
  LineReader(std::string_view s, int line) : s_(s), line_(line) {}

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool at_end() {
    skip();
    return i_ >= s_.size();
  }
  bool accept(std::string_view tok) {
    skip();
    if (s_.substr(i_, tok.size()) != tok) return false;
    i_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, static_cast<int>(i_) + 1); }

  std::string identifier() {
    skip();
    std::size_t b = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    if (b == i_) fail("expected an identifier");
    return std::string(s_.substr(b, i_ - b));
  }

  DTerm term() {
    skip();
    if (i_ < s_.size() && s_[i_] == '\'') {
      ++i_;
      std::string n;
      while (i_ < s_.size() && s_[i_] != '\'') {
        if (s_[i_] == '\\' && i_ + 1 < s_.size()) ++i_;
        n += s_[i_++];
      }
      if (i_ >= s_.size()) fail("unterminated quoted constant");
      ++i_;
      return DTerm::constant(n);
    }
    std::string n = identifier();
    if (std::isupper(static_cast<unsigned char>(n[0]))) return DTerm::var(n);
    if (!std::islower(static_cast<unsigned char>(n[0]))) fail("terms start with a letter");
    return DTerm::constant(n);
  }

  DAtom atom() {
    skip();
    std::size_t save = i_;
    if (i_ < s_.size() && s_[i_] != '\'') {
      std::string n = identifier();
      if (accept("(")) {
        DAtom a{n, {}};
        a.args.push_back(term());
        while (accept(",")) a.args.push_back(term());
        expect(")");
        return a;
      }
    }
    i_ = save;
    DTerm l = term();
    expect("~");
    return DAtom{kEqualityPredicate, {l, term()}};
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
  int line_;
};

}  // namespace

DatalogProgram parse_program(std::string_view text) {
  DatalogProgram p;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    LineReader r(line, line_no);
    if (r.at_end()) continue;
    if (r.accept("%!")) {
      std::string key = r.identifier();
      if (key == "const") {
        p.constants.push_back(r.term().name);
      } else if (key == "map") {
        std::string name = r.identifier();
        r.expect("=");
        r.skip();
        std::size_t eq = line.find('=');
        std::string label(line.substr(eq + 1));
        label.erase(0, label.find_first_not_of(' '));
        PredicateInfo::Kind kind;
        if (name.rfind("s_c", 0) == 0) {
          kind = PredicateInfo::Kind::Concept;
        } else if (name.rfind("s_r", 0) == 0) {
          kind = PredicateInfo::Kind::Role;
        } else if (name.rfind("a_", 0) == 0) {
          kind = PredicateInfo::Kind::Node;
        } else {
          r.fail("unknown predicate prefix in '" + name + "'");
        }
        p.predicates.push_back({kind, name, label});
      } else {
        r.fail("unknown header '" + key + "'");
      }
      continue;
    }
    if (r.accept("%")) continue;
    DatalogRule rule;
    if (!r.accept(":-")) {
      rule.head.push_back(r.atom());
      while (r.accept("|")) rule.head.push_back(r.atom());
      if (r.accept(".")) {
        if (!r.at_end()) r.fail("trailing text after rule");
        p.rules.push_back(std::move(rule));
        continue;
      }
      r.expect(":-");
    }
    if (!r.accept(".")) {
      rule.body.push_back(r.atom());
      while (r.accept(",")) rule.body.push_back(r.atom());
      r.expect(".");
    }
    if (!r.at_end()) r.fail("trailing text after rule");
    p.rules.push_back(std::move(rule));
  }
  return p;
}

}  // namespace domino
