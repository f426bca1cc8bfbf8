#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <sstream>

#include "forestdec/gadgets.hpp"
#include "forestdec/io.hpp"
#include "forestdec/oracle.hpp"
#include "forestdec/polysolve.hpp"
#include "forestdec/satmatch.hpp"

namespace py = pybind11;
using namespace forestdec;

namespace {

// Python side: a bound is a positive int or math.inf; parts are 1 and 2.
Bound to_bound(const py::object& o) {
  if (o.is_none()) return Bound::infinity();
  if (py::isinstance<py::str>(o)) return parse_bound(o.cast<std::string>());
  if (py::isinstance<py::float_>(o)) {
    double x = o.cast<double>();
    if (std::isinf(x) && x > 0) return Bound::infinity();
    if (x != std::floor(x)) throw Error(ErrorCode::BadParameter, "bound must be integral or inf");
    return Bound(static_cast<std::uint64_t>(x));
  }
  long long v = o.cast<long long>();
  if (v <= 0) throw Error(ErrorCode::BadParameter, "bound must be positive");
  return Bound(static_cast<std::uint64_t>(v));
}

py::object from_bound(Bound b) {
  if (b.is_infinite()) return py::float_(INFINITY);
  return py::int_(b.value());
}

Decomposition to_dec(const std::vector<int>& labels) {
  std::vector<Part> parts;
  parts.reserve(labels.size());
  for (int x : labels) {
    if (x != 1 && x != 2) throw Error(ErrorCode::BadParameter, "part labels are 1 or 2");
    parts.push_back(x == 1 ? Part::First : Part::Second);
  }
  return Decomposition(std::move(parts));
}

std::vector<int> from_dec(const Decomposition& d) {
  std::vector<int> out;
  for (Part p : d.labels()) out.push_back(p == Part::First ? 1 : 2);
  return out;
}

py::object maybe_dec(const std::optional<Decomposition>& d) {
  return d ? py::cast(from_dec(*d)) : py::none();
}

Digraph make_digraph(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& arcs) {
  std::vector<Arc> list;
  for (auto [u, v] : arcs) list.push_back({vertex(u), vertex(v)});
  return build_digraph(n, list);
}

SearchBudget budget_of(std::optional<std::uint64_t> max_nodes, std::optional<std::int64_t> time_limit_ms) {
  SearchBudget b;
  b.max_nodes = max_nodes;
  if (time_limit_ms) b.deadline = std::chrono::milliseconds(*time_limit_ms);
  return b;
}

Constraint constraint_of(const std::map<std::uint32_t, int>& fixed) {
  Constraint c;
  for (auto [a, p] : fixed) {
    if (p != 1 && p != 2) throw Error(ErrorCode::BadParameter, "part labels are 1 or 2");
    c[arc(a)] = p == 1 ? Part::First : Part::Second;
  }
  return c;
}

py::dict verdict_dict(const char* verdict, const std::optional<Decomposition>& cert, const std::string& reason,
                      std::uint64_t nodes) {
  py::dict r;
  r["verdict"] = verdict;
  r["certificate"] = maybe_dec(cert);
  r["reason"] = reason;
  r["nodes"] = nodes;
  return r;
}

UndirectedGraph make_graph(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  UndirectedGraph g;
  g.node_count = n;
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

CnfInstance cnf_of(const py::object& source) {
  if (py::isinstance<py::str>(source)) return parse_dimacs(source.cast<std::string>());
  auto clauses = source.cast<std::vector<std::vector<int>>>();
  CnfInstance inst;
  for (const auto& c : clauses) {
    Clause cl;
    for (int lit : c) {
      if (lit == 0) throw Error(ErrorCode::BadParameter, "literal 0");
      auto var = static_cast<std::uint32_t>(std::abs(lit) - 1);
      inst.variable_count = std::max<std::size_t>(inst.variable_count, var + 1);
      cl.push_back({var, lit > 0});
    }
    inst.clauses.push_back(cl);
  }
  return inst;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Digraph decomposition into two bounded forests";

  py::exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object type = py::module_::import("forestdec._core").attr("Error");
      py::object exc = type(e.what());
      exc.attr("code") = error_code_name(e.code());
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  py::class_<Digraph>(m, "Digraph")
      .def(py::init(&make_digraph), py::arg("vertex_count"), py::arg("arcs"))
      .def_property_readonly("vertex_count", &Digraph::vertex_count)
      .def_property_readonly("arc_count", &Digraph::arc_count)
      .def_property_readonly("arcs",
                             [](const Digraph& d) {
                               std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
                               for (const Arc& a : d.arcs()) out.emplace_back(index(a.tail), index(a.head));
                               return out;
                             })
      .def("degree", [](const Digraph& d, std::uint32_t v) { return d.degree(vertex(v)); })
      .def("in_degree", [](const Digraph& d, std::uint32_t v) { return d.degrees(vertex(v)).in; })
      .def("out_degree", [](const Digraph& d, std::uint32_t v) { return d.degrees(vertex(v)).out; })
      .def_property_readonly("max_degree", &Digraph::max_degree)
      .def("digest", [](const Digraph& d) { return instance_digest(d); })
      .def("__eq__", [](const Digraph& a, const Digraph& b) { return a == b; })
      .def("__repr__", [](const Digraph& d) {
        std::ostringstream s;
        s << "Digraph(" << d.vertex_count() << " vertices, " << d.arc_count() << " arcs)";
        return s.str();
      });

  py::class_<ProblemSpec>(m, "Spec")
      .def(py::init([](const std::string& family, const py::object& k, const py::object& l) {
             return ProblemSpec{parse_family(family), to_bound(k), to_bound(l)};
           }),
           py::arg("family"), py::arg("k"), py::arg("l"))
      .def_static("parse", [](const std::string& text) { return parse_spec(text); })
      .def_property_readonly("family", [](const ProblemSpec& s) { return family_name(s.family); })
      .def_property_readonly("k", [](const ProblemSpec& s) { return from_bound(s.first); })
      .def_property_readonly("l", [](const ProblemSpec& s) { return from_bound(s.second); })
      .def_property_readonly("is_polynomial", [](const ProblemSpec& s) { return is_polynomial(s); })
      .def("swapped", &ProblemSpec::swapped)
      .def("__eq__", [](const ProblemSpec& a, const ProblemSpec& b) { return a == b; })
      .def("__str__", &ProblemSpec::to_string)
      .def("__repr__", [](const ProblemSpec& s) { return "Spec." + s.to_string(); });

  m.def("verify", [](const Digraph& d, const std::vector<int>& labels, const ProblemSpec& spec) {
    return verify_decomposition(d, to_dec(labels), spec);
  }, py::arg("digraph"), py::arg("labels"), py::arg("spec"));

  m.def("find_violation", [](const Digraph& d, const std::vector<int>& labels, const ProblemSpec& spec) -> py::object {
    auto v = find_violation(d, to_dec(labels), spec);
    if (!v) return py::none();
    py::dict r;
    r["part"] = v->part == Part::First ? 1 : 2;
    std::vector<std::uint32_t> comp;
    for (ArcId a : v->component) comp.push_back(index(a));
    r["component"] = comp;
    r["reason"] = v->reason;
    return r;
  }, py::arg("digraph"), py::arg("labels"), py::arg("spec"));

  m.def("solve", [](const Digraph& d, const ProblemSpec& spec) {
    Verdict v = solve_polynomial(d, spec);
    return verdict_dict(v.yes() ? "Yes" : "No", v.certificate, v.reason, 0);
  }, py::arg("digraph"), py::arg("spec"));

  m.def("oracle", [](const Digraph& d, const ProblemSpec& spec, std::optional<std::uint64_t> max_nodes,
                     std::optional<std::int64_t> time_limit_ms, const std::map<std::uint32_t, int>& fixed) {
    OracleResult r;
    {
      py::gil_scoped_release release;
      r = oracle_decide(d, spec, budget_of(max_nodes, time_limit_ms), constraint_of(fixed));
    }
    return verdict_dict(outcome_name(r.outcome), r.decomposition, {}, r.nodes_visited);
  }, py::arg("digraph"), py::arg("spec"), py::arg("max_nodes") = py::none(), py::arg("time_limit_ms") = py::none(),
     py::arg("fixed") = std::map<std::uint32_t, int>{});

  m.def("enumerate", [](const Digraph& d, const ProblemSpec& spec, std::optional<std::uint64_t> max_nodes) {
    EnumerationResult r;
    {
      py::gil_scoped_release release;
      r = oracle_enumerate(d, spec, budget_of(max_nodes, std::nullopt));
    }
    std::vector<std::vector<int>> out;
    for (const auto& dec : r.decompositions) out.push_back(from_dec(dec));
    return py::make_tuple(out, r.budget_exceeded);
  }, py::arg("digraph"), py::arg("spec"), py::arg("max_nodes") = py::none());

  m.def("load", [](const std::string& text, const std::string& format) {
    InstanceFile f = parse_instance(text, parse_format(format));
    py::dict r;
    r["digraph"] = f.digraph;
    r["labels"] = maybe_dec(f.decomposition);
    r["spec"] = f.spec ? py::cast(*f.spec) : py::none();
    return r;
  }, py::arg("text"), py::arg("format") = "json");

  m.def("dump", [](const Digraph& d, std::optional<std::vector<int>> labels, std::optional<ProblemSpec> spec,
                   const std::string& format) {
    InstanceFile f{d, {}, spec, {}, {}};
    if (labels) f.decomposition = to_dec(*labels);
    return emit_instance(f, parse_format(format));
  }, py::arg("digraph"), py::arg("labels") = py::none(), py::arg("spec") = py::none(), py::arg("format") = "json");

  py::class_<ReductionOutput>(m, "Reduction")
      .def_property_readonly("name", [](const ReductionOutput& r) { return reduction_name(r.kind); })
      .def_readonly("instance", &ReductionOutput::instance)
      .def_readonly("spec", &ReductionOutput::spec)
      .def("encode", [](const ReductionOutput& r, const Assignment& phi) {
        return from_dec(assignment_to_decomposition(r, phi));
      }, py::arg("assignment"))
      .def("decode", [](const ReductionOutput& r, const std::vector<int>& labels) {
        return decomposition_to_assignment(r, to_dec(labels));
      }, py::arg("labels"))
      .def("encode_cycle", [](const ReductionOutput& r, const std::vector<std::uint32_t>& cycle) {
        std::vector<ArcId> arcs;
        for (auto a : cycle) arcs.push_back(arc(a));
        return from_dec(cycle_to_decomposition(r, arcs));
      }, py::arg("cycle"))
      .def("decode_cycle", [](const ReductionOutput& r, const std::vector<int>& labels) {
        std::vector<std::uint32_t> out;
        for (ArcId a : decomposition_to_cycle(r, to_dec(labels))) out.push_back(index(a));
        return out;
      }, py::arg("labels"));

  m.def("reduce", [](const std::string& name, const py::object& source, const py::object& k, const py::object& l) {
    auto small = [](const py::object& o, const char* what) {
      if (o.is_none()) throw Error(ErrorCode::BadParameter, std::string(what) + " is required");
      Bound b = to_bound(o);
      if (b.is_infinite()) throw Error(ErrorCode::BadParameter, std::string(what) + " must be finite");
      return static_cast<std::size_t>(b.value());
    };
    if (name == "hamiltonicity-bdlfd") return reduce_hamiltonicity_to_bdlfd(source.cast<Digraph>(), small(k, "k"));
    CnfInstance cnf = cnf_of(source);
    if (name == "3b2sat-bdlfd") return reduce_3b2sat_to_bdlfd(cnf, small(k, "k"));
    if (name == "me1sat-bdlfd") return reduce_me1sat_to_bdlfd(cnf, small(k, "k"), small(l, "l"));
    if (name == "meksat-bogd") return reduce_meksat_to_bogd_kk(cnf, small(k, "k"));
    if (name == "sat-bogd") return reduce_lplus1sat_to_bogd_kl(cnf, to_bound(k), small(l, "l"));
    throw Error(ErrorCode::BadParameter, "unknown reduction " + name);
  }, py::arg("name"), py::arg("source"), py::arg("k") = py::none(), py::arg("l") = py::none());

  m.def("solve_2sat", [](std::size_t n, const std::vector<std::pair<int, int>>& clauses) {
    TwoSatInstance inst;
    inst.variable_count = n;
    auto lit = [&](int x) {
      if (x == 0 || static_cast<std::size_t>(std::abs(x)) > n) throw Error(ErrorCode::BadParameter, "bad literal");
      return Literal{static_cast<std::uint32_t>(std::abs(x) - 1), x > 0};
    };
    for (auto [a, b] : clauses) inst.add(lit(a), lit(b));
    return solve_2sat(inst);
  }, py::arg("variable_count"), py::arg("clauses"));

  m.def("maximum_matching", [](std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
    return maximum_matching(make_graph(n, edges));
  }, py::arg("node_count"), py::arg("edges"));

  m.def("matching_covering", [](std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                                const std::vector<NodeId>& z) {
    return matching_covering(make_graph(n, edges), z);
  }, py::arg("node_count"), py::arg("edges"), py::arg("cover"));
}
