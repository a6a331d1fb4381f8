// Command-line front end: sat, entail, compile and stats over a KB file.
// Exit status 0 means SAT or entailed, 1 UNSAT or not entailed, 2 a usage,
// parse or validation error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "domino/datalog.hpp"
#include "domino/error.hpp"
#include "domino/parser.hpp"
#include "domino/reasoner.hpp"

namespace {

struct Common {
  std::string file;
  std::string engine = "obdd";
  std::string var_order = "default";
  std::string dump_dot;
  std::string trace;
  bool no_short_circuit = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("file", c.file, "knowledge base file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--engine", c.engine, "terminology compiler")->check(CLI::IsMember({"obdd", "explicit"}));
  cmd->add_option("--var-order", c.var_order, "default, interleaved or file:PATH");
  cmd->add_option("--dump-dot", c.dump_dot, "write the compiled OBDD in DOT format");
  cmd->add_option("--trace", c.trace, "write the reduction trace");
  cmd->add_flag("--no-short-circuit", c.no_short_circuit, "let the Datalog program decide even when tau is false");
}

domino::ReasonerOptions options_from(const Common& c) {
  domino::ReasonerOptions opt;
  opt.engine = c.engine == "explicit" ? domino::Engine::Explicit : domino::Engine::Obdd;
  if (c.var_order == "interleaved") {
    opt.compile.order = domino::VariableOrder::interleaved();
  } else if (c.var_order.rfind("file:", 0) == 0) {
    opt.compile.order = domino::VariableOrder::from_file(c.var_order.substr(5));
  } else if (c.var_order != "default") {
    throw CLI::ValidationError("--var-order", "expected default, interleaved or file:PATH");
  }
  opt.short_circuit = !c.no_short_circuit;
  return opt;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw domino::Error("cannot write " + path);
  return out;
}

void write_side_outputs(const Common& c, const domino::Reasoner& r) {
  if (!c.trace.empty()) {
    auto out = open_out(c.trace);
    r.trace().write(out);
  }
  if (!c.dump_dot.empty()) {
    auto out = open_out(c.dump_dot);
    const auto& ct = r.compiled();
    ct.manager().write_dot(out, ct.tau(), [&](domino::obdd::VarId v) { return ct.encoding().label_at(v); });
  }
}

void print_stats(std::ostream& out, const domino::Verdict& v) {
  out << "variables: " << v.stats.variables << "\n"
      << "nodes: " << v.stats.nodes << "\n"
      << "iterations: " << v.stats.iterations << "\n"
      << "rules: " << v.stats.rules << "\n"
      << "ground_atoms: " << v.stats.ground_atoms << "\n"
      << "ground_clauses: " << v.stats.ground_clauses << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knowledge compiler and reasoner for SHIQbs knowledge bases with DL-safe rules"};
  app.require_subcommand(1);

  Common sat_opts, entail_opts, compile_opts, stats_opts;
  std::string query, out_path;
  bool inline_equality = false;

  auto* sat = app.add_subcommand("sat", "decide satisfiability");
  add_common(sat, sat_opts);
  auto* entail = app.add_subcommand("entail", "decide entailment of a ground atom");
  add_common(entail, entail_opts);
  entail->add_option("--query", query, "C(a), r(a,b) or a ~ b")->required();
  auto* compile = app.add_subcommand("compile", "write the Datalog program");
  add_common(compile, compile_opts);
  compile->add_option("-o,--output", out_path, "output file (default: stdout)");
  compile->add_flag("--inline-equality", inline_equality, "append the equality axioms to the program");
  auto* stats = app.add_subcommand("stats", "print pipeline statistics");
  add_common(stats, stats_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const Common& c = sat->parsed() ? sat_opts : entail->parsed() ? entail_opts : compile->parsed() ? compile_opts : stats_opts;
    domino::ReasonerOptions opt = options_from(c);
    domino::KnowledgeBase kb = domino::parse_kb_file(c.file, {false, opt.number_cap});
    std::optional<domino::Query> q;
    if (entail->parsed()) q = domino::parse_query(query);
    domino::Reasoner r(kb, opt);
    write_side_outputs(c, r);

    if (sat->parsed() || entail->parsed()) {
      domino::Verdict v = q ? r.entails(*q) : r.satisfiable();
      std::cout << v.text << "\n";
      return v.answer ? 0 : 1;
    }
    if (compile->parsed()) {
      domino::DatalogProgram p = r.program();
      if (inline_equality) domino::axiomatize_equality(p, p.uses_equality());
      if (out_path.empty()) {
        domino::serialize(std::cout, p);
      } else {
        auto out = open_out(out_path);
        domino::serialize(out, p);
      }
      for (const auto& d : p.diagnostics) std::cerr << "warning: " << d << "\n";
      return 0;
    }
    domino::Verdict v = r.satisfiable();
    std::cout << "verdict: " << v.text << "\n";
    print_stats(std::cout, v);
    std::cout << "labeled_nodes: " << r.emit_stats().labeled_nodes << "\n"
              << "rule_atoms: " << r.emit_stats().rule_atoms << "\n";
    return v.answer ? 0 : 1;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const domino::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
