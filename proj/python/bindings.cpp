#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "domino/datalog.hpp"
#include "domino/error.hpp"
#include "domino/parser.hpp"
#include "domino/printer.hpp"
#include "domino/reasoner.hpp"

namespace py = pybind11;
using namespace domino;

namespace {

ReasonerOptions options(const std::string& engine, const std::string& var_order, bool short_circuit) {
  ReasonerOptions opt;
  if (engine == "obdd") {
    opt.engine = Engine::Obdd;
  } else if (engine == "explicit") {
    opt.engine = Engine::Explicit;
  } else {
    throw py::value_error("engine must be 'obdd' or 'explicit'");
  }
  if (var_order == "interleaved") {
    opt.compile.order = VariableOrder::interleaved();
  } else if (var_order.rfind("file:", 0) == 0) {
    opt.compile.order = VariableOrder::from_file(var_order.substr(5));
  } else if (var_order != "default") {
    throw py::value_error("var_order must be 'default', 'interleaved' or 'file:PATH'");
  }
  opt.short_circuit = short_circuit;
  return opt;
}

py::dict stats_dict(const VerdictStats& s) {
  py::dict d;
  d["variables"] = s.variables;
  d["nodes"] = s.nodes;
  d["iterations"] = s.iterations;
  d["rules"] = s.rules;
  d["ground_atoms"] = s.ground_atoms;
  d["ground_clauses"] = s.ground_clauses;
  return d;
}

Query query_of(const std::optional<std::string>& text) { return text ? parse_query(*text) : Query::satisfiability(); }

}  // namespace

PYBIND11_MODULE(_domino, m) {
  m.doc() = "Knowledge compilation and reasoning for SHIQbs knowledge bases with DL-safe rules";

  auto base = py::register_exception<Error>(m, "DominoError");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());

  py::class_<Verdict>(m, "Verdict")
      .def_readonly("answer", &Verdict::answer)
      .def_readonly("text", &Verdict::text)
      .def_readonly("decided_by_tau", &Verdict::decided_by_tau)
      .def_property_readonly("stats", [](const Verdict& v) { return stats_dict(v.stats); })
      .def("__bool__", [](const Verdict& v) { return v.answer; })
      .def("__repr__", [](const Verdict& v) { return "<Verdict " + v.text + ">"; });

  py::class_<Reasoner>(m, "Reasoner")
      .def(py::init([](const std::string& kb, const std::string& engine, const std::string& var_order,
                       bool short_circuit) { return Reasoner(parse_kb(kb), options(engine, var_order, short_circuit)); }),
           py::arg("kb"), py::arg("engine") = "obdd", py::arg("var_order") = "default", py::arg("short_circuit") = true,
           "Reduces, compiles and emits the Datalog program for the knowledge base text.")
      .def("satisfiable", &Reasoner::satisfiable)
      .def("entails", [](const Reasoner& r, const std::string& q) { return r.entails(parse_query(q)); }, py::arg("query"))
      .def("program", [](const Reasoner& r) { return serialize(r.program()); }, "The Datalog program as text.")
      .def_property_readonly("reduced", [](const Reasoner& r) { return to_string(r.reduced()); })
      .def_property_readonly("labeled_nodes", [](const Reasoner& r) { return r.emit_stats().labeled_nodes; })
      .def_property_readonly("rule_count", [](const Reasoner& r) { return r.program().rules.size(); });

  m.def(
      "reason",
      [](const std::string& kb, const std::optional<std::string>& query, const std::string& engine,
         const std::string& var_order) { return reason(parse_kb(kb), query_of(query), options(engine, var_order, true)); },
      py::arg("kb"), py::arg("query") = py::none(), py::arg("engine") = "obdd", py::arg("var_order") = "default",
      "Satisfiability when query is None, else entailment of the query atom.");
  m.def(
      "compile",
      [](const std::string& kb, const std::string& var_order) {
        return serialize(Reasoner(parse_kb(kb), options("obdd", var_order, true)).program());
      },
      py::arg("kb"), py::arg("var_order") = "default");
  m.def("normalize", [](const std::string& kb) { return to_string(parse_kb(kb)); }, py::arg("kb"),
        "The knowledge base as the parser reads it, one statement per line.");
}
