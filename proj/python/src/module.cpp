#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ecw/cli.hpp"
#include "ecw/ecw.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace pybind11::detail {

// ecw::Rational <-> fractions.Fraction. Python ints are accepted as well.
template <>
struct type_caster<ecw::Rational> {
  PYBIND11_TYPE_CASTER(ecw::Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src) return false;
    if (PyLong_Check(src.ptr())) {
      value = ecw::Rational(src.cast<std::int64_t>());
      return true;
    }
    static const object fraction = module_::import("fractions").attr("Fraction");
    if (!isinstance(src, fraction)) return false;
    value = ecw::Rational(src.attr("numerator").cast<std::int64_t>(), src.attr("denominator").cast<std::int64_t>());
    return true;
  }

  static handle cast(const ecw::Rational& r, return_value_policy, handle) {
    static const object fraction = module_::import("fractions").attr("Fraction");
    return fraction(r.numerator(), r.denominator()).release();
  }
};

}  // namespace pybind11::detail

namespace {

using namespace ecw;

PartyMask subset_arg(const py::handle& key, int n) {
  if (py::isinstance<py::str>(key)) return parse_subset_label(key.cast<std::string>(), n);
  return key.cast<PartyMask>();
}

std::vector<Inequality> family_instances(const std::string& name, int n) {
  const auto f = family_from_name(name);
  if (!f) throw std::invalid_argument("unknown family: " + name);
  return instantiate_family(*f, n);
}

py::dict check_dict(const ContractionCheck& c, const ContractionInstance& inst) {
  return py::dict("ok"_a = c.ok(), "examined"_a = c.examined, "detail"_a = c.describe(inst.lhs_size(), inst.rhs_size()));
}

}  // namespace

PYBIND11_MODULE(_ecw, m) {
  m.doc() = "Entropy-cone workbench: hypergraph cuts, graph states, inequalities, contraction maps";

  static py::exception<BudgetExceeded> budget_error(m, "BudgetExceeded", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const BudgetExceeded& e) {
      py::set_error(budget_error, e.what());
    }
  });

  py::class_<EntropyVector>(m, "EntropyVector")
      .def(py::init<int>(), "parties"_a)
      .def(py::init<int, std::vector<Rational>>(), "parties"_a, "entries"_a)
      .def_static("parse", [](const std::string& text) { return parse_entropy_vector(text); })
      .def_property_readonly("parties", &EntropyVector::parties)
      .def_property_readonly("entries", &EntropyVector::entries)
      .def("__len__", &EntropyVector::size)
      .def("__getitem__", [](const EntropyVector& s, const py::handle& key) { return s[subset_arg(key, s.parties())]; })
      .def("__setitem__", [](EntropyVector& s, const py::handle& key, const Rational& v) {
        s.set(subset_arg(key, s.parties()), v);
      })
      .def("project", &EntropyVector::project, "k"_a)
      .def("permuted", [](const EntropyVector& s, std::vector<int> image) { return s.permuted(LabelPermutation(image)); })
      .def("__str__", &format_entropy_vector)
      .def("__repr__", [](const EntropyVector& s) { return "EntropyVector('" + format_entropy_vector(s) + "')"; })
      .def(py::self == py::self);

  py::class_<HypergraphModel>(m, "HypergraphModel")
      .def(py::init([](int parties, std::vector<std::string> vertices, std::map<std::string, int> boundary,
                       std::vector<std::pair<std::vector<std::string>, Rational>> edges) {
             std::vector<HyperedgeSpec> specs;
             for (auto& [vs, w] : edges) specs.push_back({std::move(vs), w});
             return HypergraphModel(parties, std::move(vertices), boundary, specs);
           }),
           "parties"_a, "vertices"_a, "boundary"_a, "hyperedges"_a)
      .def_static("from_json", [](const std::string& text) { return parse_hypergraph_json(text); })
      .def("to_json", [](const HypergraphModel& h) { return hypergraph_to_json(h); })
      .def_property_readonly("parties", &HypergraphModel::parties)
      .def_property_readonly("vertices", &HypergraphModel::vertex_ids)
      .def_property_readonly("weights", &HypergraphModel::weights)
      .def(py::self == py::self);

  m.def("min_cut", [](const HypergraphModel& h, const std::string& subset) {
    const auto r = min_cut(h, parse_subset_label(subset, h.parties()));
    return py::make_tuple(r.weight, h.cut_ids(r.witness));
  }, "model"_a, "subset"_a, "Minimum cut weight and lexicographically smallest witness (vertex ids).");
  m.def("min_cuts", [](const HypergraphModel& h, const std::string& subset) {
    std::vector<std::vector<std::string>> out;
    for (const auto& c : enumerate_min_cuts(h, parse_subset_label(subset, h.parties()))) out.push_back(h.cut_ids(c));
    return out;
  }, "model"_a, "subset"_a);
  m.def("entropy_vector", &entropy_vector, "model"_a);

  py::class_<GraphState>(m, "GraphState")
      .def(py::init<int>(), "qubits"_a)
      .def(py::init<int, const std::vector<std::pair<int, int>>&>(), "qubits"_a, "edges"_a)
      .def_static("from_code", &graph_from_code, "qubits"_a, "code"_a)
      .def_property_readonly("qubits", &GraphState::qubits)
      .def_property_readonly("edges", &GraphState::edges)
      .def(py::self == py::self);

  m.def("graph_state_entropy", [](const GraphState& g, const std::vector<int>& qubits) {
    QubitMask mask = 0;
    for (int q : qubits) {
      if (q < 0 || q >= g.qubits()) throw std::out_of_range("qubit index out of range");
      mask |= QubitMask{1} << q;
    }
    return graph_state_entropy(g, mask);
  }, "graph"_a, "qubits"_a);
  m.def("graph_state_entropy_vector", [](const GraphState& g, std::optional<std::vector<int>> labels) {
    if (!labels) return graph_state_entropy_vector(g, PartyAssignment::one_per_qubit(g.qubits()));
    const int parties = *std::max_element(labels->begin(), labels->end());
    return graph_state_entropy_vector(g, PartyAssignment(parties, *labels));
  }, "graph"_a, "labels"_a = py::none(),
        "labels[q] is the party of qubit q; the largest label is the purifier. Default: one party per qubit.");
  m.def("dense_oracle_entropy", [](const GraphState& g, const std::vector<int>& qubits) {
    QubitMask mask = 0;
    for (int q : qubits) mask |= QubitMask{1} << q;
    return dense_oracle_entropy(g, mask);
  }, "graph"_a, "qubits"_a);
  m.def("local_complement", &local_complement, "graph"_a, "vertex"_a);
  m.def("graph_census", [](const std::vector<EntropyVector>& targets, int qubits) {
    std::vector<std::optional<std::uint64_t>> codes;
    for (const auto& hit : graph_census(targets, qubits)) codes.push_back(hit ? std::optional(hit->code) : std::nullopt);
    return codes;
  }, "targets"_a, "qubits"_a = 6, "Lowest matching graph code per target, or None.");

  py::class_<Inequality>(m, "Inequality")
      .def_static("parse", [](const std::string& text, std::optional<int> n) { return parse_inequality(text, n); },
                  "text"_a, "parties"_a = py::none())
      .def_property_readonly("parties", &Inequality::parties)
      .def_property_readonly("name", &Inequality::name)
      .def_property_readonly("coefficients", &Inequality::coefficients)
      .def("coefficient", [](const Inequality& q, const std::string& s) {
        return q.coefficient(parse_subset_label(s, q.parties()));
      })
      .def("__call__", &evaluate, "vector"_a)
      .def("__str__", &format_inequality)
      .def("__repr__", [](const Inequality& q) { return "Inequality('" + format_inequality(q) + "')"; })
      .def(py::self == py::self);

  m.def("parse_inequality_file", &parse_inequality_file, "text"_a);
  m.def("parse_vector_file", [](const std::string& text) {
    std::vector<std::pair<std::string, EntropyVector>> out;
    for (auto& nv : parse_entropy_vector_file(text)) out.emplace_back(std::move(nv.name), std::move(nv.vector));
    return out;
  }, "text"_a, "List of (name, vector) pairs.");
  m.def("evaluate", &evaluate, "inequality"_a, "vector"_a);
  m.def("instantiate_family", &family_instances, "family"_a, "parties"_a);
  m.def("symmetry_orbit", &symmetry_orbit, "inequality"_a);
  m.def("canonical_form", &canonical_form, "inequality"_a);
  m.def("balance_check", &balance_check, "inequality"_a);
  m.def("unbalanced_parties", [](const Inequality& q) {
    std::vector<std::string> out;
    for (int p : unbalanced_parties(q)) out.push_back(subset_label(PartyMask{1} << p));
    return out;
  }, "inequality"_a);
  m.def("check_vector", [](const EntropyVector& s, const std::vector<Inequality>& qs) {
    const auto r = check_vector(s, qs);
    return py::dict("values"_a = r.values, "violated"_a = r.violated, "saturated"_a = r.saturated,
                    "strict"_a = r.strict);
  }, "vector"_a, "inequalities"_a);

  m.def("prove", [](const Inequality& q, const std::string& mode, const std::string& encoding,
                    std::uint64_t max_nodes) -> std::optional<std::string> {
    if (encoding != "repeated" && encoding != "weighted") throw std::invalid_argument("unknown encoding: " + encoding);
    const auto inst = build_instance(q, encoding == "weighted" ? CoefficientEncoding::weighted
                                                               : CoefficientEncoding::repeated);
    SearchOptions options;
    options.max_nodes = max_nodes;
    py::gil_scoped_release release;
    const auto r = search_contraction(inst, parse_mode(mode), options);
    if (!r.certificate) return std::nullopt;
    return certificate_to_json(*r.certificate);
  }, "inequality"_a, "mode"_a = "hypergraph", "encoding"_a = "repeated", "max_nodes"_a = 0,
        "Certificate JSON, or None when no contraction map exists for this encoding.");
  m.def("verify_certificate", [](const std::string& json) {
    const auto cert = parse_certificate_json(json);
    const auto inst = instance_for(cert);
    return check_dict(check_contraction(cert, inst), inst);
  }, "certificate_json"_a);

  m.def("verify_realization", [](const HypergraphModel& h, const EntropyVector& target) {
    py::list out;
    for (const auto& mm : verify_realization(h, target).mismatches) {
      out.append(py::make_tuple(subset_label(mm.subset), mm.expected, mm.actual));
    }
    return out;
  }, "model"_a, "target"_a, "List of (subset, expected, actual) mismatches; empty when the model realizes target.");
  m.def("search_realization", [](const EntropyVector& target, const std::string& budget, double max_space) {
    RealizationOptions options;
    options.max_space = max_space;
    const auto b = parse_budget(budget);
    py::gil_scoped_release release;
    return search_realization(target, b, options).model;
  }, "target"_a, "budget"_a = "1,6,3,1", "max_space"_a = 5e7);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, "args"_a, "Runs the ecw command line in-process; returns (exit_code, stdout, stderr).");
  m.def("data_dir", &cli::data_dir);
}
