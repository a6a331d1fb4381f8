#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>

#include "domino/compile.hpp"
#include "domino/datalog.hpp"
#include "domino/dominoes.hpp"
#include "domino/reduction.hpp"
#include "domino/solver.hpp"
#include "domino/syntax.hpp"

namespace domino {

enum class Engine { Obdd, Explicit };

struct ReasonerOptions {
  Engine engine = Engine::Obdd;
  CompileOptions compile;
  ExplicitOptions explicit_options;
  unsigned number_cap = kDefaultNumberCap;
  // Answer from τ alone when it is constant false. With the flag off the
  // Datalog program decides whenever the knowledge base names an individual.
  bool short_circuit = true;
};

struct VerdictStats {
  std::size_t variables = 0;
  std::size_t nodes = 0;
  std::size_t iterations = 0;
  std::size_t rules = 0;
  std::size_t ground_atoms = 0;
  std::size_t ground_clauses = 0;
};

struct Verdict {
  bool answer = false;
  bool decided_by_tau = false;
  std::string text;  // SAT, UNSAT, ENTAILED, NOT ENTAILED
  VerdictStats stats;
};

// Validates, reduces to ALCIb, compiles the terminology and emits the
// Datalog program once; queries then reuse the program.
class Reasoner {
 public:
  explicit Reasoner(const KnowledgeBase& kb, const ReasonerOptions& opt = {});

  const KnowledgeBase& input() const { return input_; }
  const KnowledgeBase& reduced() const { return reduced_; }
  const ReductionTrace& trace() const { return trace_; }
  const CompiledTBox& compiled() const { return *compiled_; }
  const DatalogProgram& program() const { return program_; }
  const EmitStats& emit_stats() const { return emit_stats_; }

  Verdict satisfiable() const;
  Verdict entails(const Query& q) const;
  Verdict answer(const Query& q) const;

  // The program atom a fact query stands for. Throws Error for names the
  // knowledge base does not know; nullopt when the program has no predicate
  // for a known name.
  std::optional<GroundAtom> translate(const Query& q) const;

 private:
  VerdictStats base_stats() const;

  KnowledgeBase input_;
  KnowledgeBase reduced_;
  ReductionTrace trace_;
  std::unique_ptr<CompiledTBox> compiled_;
  DatalogProgram program_;
  EmitStats emit_stats_;
  ReasonerOptions opt_;
};

Verdict reason(const KnowledgeBase& kb, const Query& q, const ReasonerOptions& opt = {});

}  // namespace domino
