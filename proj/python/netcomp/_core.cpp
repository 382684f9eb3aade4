#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "netcomp/code.hpp"
#include "netcomp/construct.hpp"
#include "netcomp/error.hpp"
#include "netcomp/function.hpp"
#include "netcomp/network.hpp"
#include "netcomp/search.hpp"

namespace py = pybind11;
using namespace netcomp;

namespace {

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(r.numerator(), r.denominator());
}

py::dict log_ratio(const LogRatio& v) {
  py::dict d;
  d["coeff"] = fraction(v.coeff);
  d["arg"] = v.arg;
  d["base"] = v.base;
  d["value"] = v.value();
  d["text"] = v.to_string();
  return d;
}

py::object matrix_rows(const Matrix& m) {
  py::list rows;
  for (std::size_t i = 0; i < m.rows; ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols; ++j) row.append(m.entries[i * m.cols + j]);
    rows.append(row);
  }
  return rows;
}

py::dict classification(const Classification& c) {
  py::dict d;
  d["label"] = to_string(c.label);
  d["unresolved"] = c.unresolved;
  d["semi_injective_witness"] = c.semi_injective_witness;
  d["lambda_exhausted"] = c.lambda_exhausted;
  if (c.reduction) {
    py::dict r;
    r["lambda"] = c.reduction->lambda;
    r["T"] = matrix_rows(c.reduction->T);
    r["g_labels"] = c.reduction->g.labels();
    d["reduction"] = r;
  } else {
    d["reduction"] = py::none();
  }
  return d;
}

py::dict verify_result(const VerifyResult& v) {
  py::dict d;
  d["verified"] = v.verified;
  d["checked"] = v.checked;
  if (v.counterexample) {
    py::dict c;
    c["messages"] = v.counterexample->messages;
    c["expected"] = v.counterexample->expected;
    c["output"] = v.counterexample->output;
    d["counterexample"] = c;
  } else {
    d["counterexample"] = py::none();
  }
  return d;
}

py::dict search_result(const SearchResult& r) {
  py::dict d;
  d["status"] = to_string(r.status);
  d["candidates"] = r.candidates;
  d["evaluations"] = r.evaluations;
  d["code"] = r.code ? py::cast(*r.code) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Network function computation over finite rings";

  py::register_exception<Error>(m, "NetcompError", PyExc_ValueError);

  py::class_<Algebra>(m, "Algebra")
      .def(py::init([](const std::string& spec) { return build_algebra(spec); }), py::arg("spec"))
      .def_property_readonly("size", &Algebra::size)
      .def_property_readonly("spec", &Algebra::spec)
      .def_property_readonly("is_field", &Algebra::is_field)
      .def("add", &Algebra::add)
      .def("mul", &Algebra::mul)
      .def("neg", &Algebra::neg)
      .def("one", &Algebra::one)
      .def("inverse", &Algebra::inverse)
      .def("__repr__", [](const Algebra& a) { return "Algebra('" + a.spec() + "')"; });

  py::class_<Network>(m, "Network")
      .def_static("resolve", &resolve_network, py::arg("name_or_path"))
      .def_static("parse", [](const std::string& text) { return parse_network(text); }, py::arg("text"))
      .def_property_readonly("node_count", &Network::node_count)
      .def_property_readonly("edge_count", &Network::edge_count)
      .def_property_readonly("source_count", &Network::source_count)
      .def_property_readonly("edges",
                             [](const Network& n) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const Edge& e : n.edges()) out.emplace_back(n.name(e.tail), n.name(e.head));
                               return out;
                             })
      .def("serialize", &serialize_network);

  py::class_<TargetFunction>(m, "TargetFunction")
      .def_static("builtin", &make_builtin, py::arg("spec"), py::arg("algebra"), py::arg("arity") = 2)
      .def_static("table", &load_function_table, py::arg("path"), py::arg("algebra"))
      .def_property_readonly("arity", &TargetFunction::arity)
      .def_property_readonly("name", &TargetFunction::name)
      .def("__call__", [](const TargetFunction& f, const std::vector<Element>& x) {
        if (x.size() != f.arity()) throw py::value_error("wrong number of arguments");
        return f(x);
      });

  py::class_<NetworkCode>(m, "NetworkCode")
      .def_static("load", &load_code, py::arg("path"), py::arg("network"), py::arg("algebra"))
      .def_readonly("k", &NetworkCode::k)
      .def_readonly("n", &NetworkCode::n)
      .def_property_readonly("rate", [](const NetworkCode& c) { return fraction(rate(c)); })
      .def("serialize", [](const NetworkCode& c, const Network& net) { return serialize_code(net, c); });

  m.def("classify", [](const TargetFunction& f) { return classification(classify(f)); }, py::arg("function"));
  m.def("routing_capacity", [](const Network& n) { return fraction(routing_computing_capacity(n)); });
  m.def("routing_capacity_by_cuts", [](const Network& n) { return fraction(routing_capacity_by_cuts(n)); });
  m.def("min_cut_size", &min_cut_size);
  m.def("footprint_bound", [](const Network& n, const TargetFunction& f) {
    const FootprintBound b = footprint_cut_bound(n, f);
    py::dict d = log_ratio(b.value);
    d["cut"] = format_edge_set(n, b.cut.edges);
    d["footprint"] = b.footprint;
    return d;
  });
  m.def(
      "verify",
      [](const Network& n, const NetworkCode& c, const TargetFunction& f) { return verify_result(verify_code(n, c, f)); },
      py::arg("network"), py::arg("code"), py::arg("function"));
  m.def(
      "search",
      [](const Network& n, const TargetFunction& f, std::size_t k, std::size_t len, const std::string& kind,
         std::uint64_t budget, unsigned jobs) {
        const SearchOptions opts{.budget = budget, .jobs = jobs};
        if (kind == "linear") return search_result(search_linear(n, f, k, len, opts));
        if (kind == "general") return search_result(search_general(n, f, k, len, opts));
        throw py::value_error("kind must be 'linear' or 'general'");
      },
      py::arg("network"), py::arg("function"), py::arg("k") = 1, py::arg("n") = 1, py::arg("kind") = "linear",
      py::arg("budget") = kDefaultSearchBudget, py::arg("jobs") = 1);
  m.def(
      "km_construct",
      [](const Network& n, const Algebra& field, const std::vector<Element>& coeffs, std::uint64_t seed) {
        KMOptions opts;
        opts.seed = seed;
        const KMResult r = km_construct(n, field, coeffs, opts);
        py::dict d;
        d["code"] = r.code;
        d["degree"] = r.degree;
        d["draws"] = r.draws;
        d["exhaustive"] = r.exhaustive;
        d["verification"] = verify_result(r.verification);
        return d;
      },
      py::arg("network"), py::arg("field"), py::arg("coeffs"), py::arg("seed") = 0);
  m.def("butterfly_mod_code", &butterfly_mod_code, py::arg("q"));
  m.def("butterfly_arith_code", &butterfly_arith_code, py::arg("q"), py::arg("n"));
  m.def("butterfly_capacity", [](std::uint32_t q) { return log_ratio(butterfly_capacity(q)); }, py::arg("q"));
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
