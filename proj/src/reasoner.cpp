#include "domino/reasoner.hpp"

#include "domino/error.hpp"
#include "domino/normal_form.hpp"
#include "domino/printer.hpp"

namespace domino {

Reasoner::Reasoner(const KnowledgeBase& kb, const ReasonerOptions& opt) : input_(kb), opt_(opt) {
  auto violations = validate_shiqbs(kb, opt.number_cap);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  reduced_ = transform_full(kb, &trace_);
  if (opt.engine == Engine::Obdd) {
    compiled_ = std::make_unique<CompiledTBox>(fixpoint_compile(reduced_, opt.compile));
  } else {
    ExplicitStats es;
    DominoSet ds = canonical_domino_set(reduced_, opt.explicit_options, &es);
    CompiledTBox ct = compile_domino_set(ds, opt.compile);
    CompileStats cs = ct.stats();
    cs.iterations = es.iterations;
    compiled_ = std::make_unique<CompiledTBox>(std::move(ct));
    compiled_->set_stats(cs);
  }
  program_ = emit_program(*compiled_, reduced_, &emit_stats_);
}

VerdictStats Reasoner::base_stats() const {
  VerdictStats s;
  s.variables = compiled_->stats().variables;
  s.nodes = compiled_->stats().nodes;
  s.iterations = compiled_->stats().iterations;
  s.rules = program_.rules.size();
  return s;
}

namespace {

bool names_individual(const DatalogProgram& p) {
  if (!p.constants.empty()) return true;
  for (const auto& r : p.rules) {
    for (const auto* side : {&r.head, &r.body}) {
      for (const auto& a : *side) {
        for (const auto& t : a.args) {
          if (!t.variable) return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

Verdict Reasoner::satisfiable() const {
  Verdict v;
  v.stats = base_stats();
  if (!compiled_->satisfiable() && (opt_.short_circuit || !names_individual(program_))) {
    v.answer = false;
    v.decided_by_tau = true;
  } else {
    GroundProgram g = ground(program_);
    v.stats.ground_atoms = g.atom_count();
    v.stats.ground_clauses = g.clauses().size();
    v.answer = is_satisfiable(g);
  }
  v.text = v.answer ? "SAT" : "UNSAT";
  return v;
}

std::optional<GroundAtom> Reasoner::translate(const Query& q) const {
  const Signature& sig = input_.signature();
  auto need_individual = [&](const std::string& a) {
    if (!sig.individuals.count(a)) throw Error("unknown individual '" + a + "'");
  };
  switch (q.kind) {
    case Query::Kind::Satisfiability:
      throw Error("a satisfiability query has no atom");
    case Query::Kind::ConceptFact: {
      need_individual(q.first);
      const Concept& c = q.target.at(0);
      if (c.is(Concept::Kind::Name)) {
        if (!sig.concepts.count(c.name())) throw Error("unknown concept '" + c.name() + "'");
      } else {
        for (const auto& p : parts_of(c)) {
          if (p.is(Concept::Kind::Name) && !sig.concepts.count(p.name())) {
            throw Error("unknown concept '" + p.name() + "'");
          }
        }
      }
      auto pred = program_.concept_predicate(c);
      if (!pred) pred = program_.concept_predicate(nnf(c));
      if (!pred) {
        if (!c.is(Concept::Kind::Name)) {
          throw Error("query concept " + to_string(c) + " is not among the parts of the compiled terminology");
        }
        return std::nullopt;
      }
      return GroundAtom{*pred, {q.first}};
    }
    case Query::Kind::RoleFact: {
      need_individual(q.first);
      need_individual(q.second);
      if (!sig.roles.count(q.role)) throw Error("unknown role '" + q.role + "'");
      auto pred = program_.role_predicate(q.role);
      if (!pred) return std::nullopt;
      return GroundAtom{*pred, {q.first, q.second}};
    }
    case Query::Kind::SameAs:
      need_individual(q.first);
      need_individual(q.second);
      return GroundAtom{kEqualityPredicate, {q.first, q.second}};
  }
  return std::nullopt;
}

Verdict Reasoner::entails(const Query& q) const {
  Verdict v;
  v.stats = base_stats();
  const auto atom = translate(q);
  if (!compiled_->satisfiable() && opt_.short_circuit) {
    v.answer = true;
    v.decided_by_tau = true;
  } else {
    const bool eq = program_.uses_equality() || q.kind == Query::Kind::SameAs;
    GroundProgram g = ground(program_, eq);
    v.stats.ground_atoms = g.atom_count();
    v.stats.ground_clauses = g.clauses().size();
    if (atom) {
      v.answer = cautious_entails(g, *atom);
    } else {
      v.answer = !is_satisfiable(g);
    }
  }
  v.text = v.answer ? "ENTAILED" : "NOT ENTAILED";
  return v;
}

Verdict Reasoner::answer(const Query& q) const {
  return q.kind == Query::Kind::Satisfiability ? satisfiable() : entails(q);
}

Verdict reason(const KnowledgeBase& kb, const Query& q, const ReasonerOptions& opt) {
  return Reasoner(kb, opt).answer(q);
}

}  // namespace domino
