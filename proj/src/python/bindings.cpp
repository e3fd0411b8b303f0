#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <variant>

#include "lipcurve/lipcurve.hpp"

namespace py = pybind11;
using namespace lipcurve;

namespace {

Point to_point(const std::vector<double>& v) { return Point(v); }
std::vector<double> from_point(const Point& p) { return p.values(); }

std::vector<Point> to_points(const std::vector<std::vector<double>>& v) {
    std::vector<Point> out;
    out.reserve(v.size());
    for (const auto& p : v) out.push_back(to_point(p));
    return out;
}

// A canonical curve from either a Polyline on [0,1] or a Python callable
// t -> sequence of floats (dim taken from the value at t = 0).
Curve to_curve(const py::object& obj) {
    if (py::isinstance<Polyline>(obj)) return as_curve(obj.cast<const Polyline&>());
    if (!PyCallable_Check(obj.ptr())) throw py::type_error("curve must be a Polyline or a callable t -> point");
    auto fn = obj.cast<std::function<std::vector<double>(double)>>();
    const std::size_t dim = fn(0.0).size();
    if (dim == 0) throw py::value_error("curve callable returned an empty point");
    return Curve([fn](double t) { return Point(fn(t)); }, dim);
}

Query make_query(const std::string& kind, const std::string& error, double eps) {
    return {parse_kind(kind), parse_error_mode(error), eps};
}

py::dict metadata_dict(const InstanceMetadata& m) {
    py::dict d;
    d["family"] = m.family;
    d["epsilon"] = m.epsilon;
    d["d_min"] = m.d_min ? py::cast(*m.d_min) : py::none();
    d["d_max"] = m.d_max ? py::cast(*m.d_max) : py::none();
    d["opt_upper_bound"] = m.opt_upper_bound ? py::cast(*m.opt_upper_bound) : py::none();
    d["spike_parameters"] = m.spike_parameters;
    d["seed"] = m.seed;
    for (const auto& [k, v] : m.extra) d[py::str(k)] = v;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Adaptive nearest/farthest point queries on Lipschitz curves";

    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<OracleCapExceeded>(m, "OracleCapExceeded", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            py::set_error(PyExc_ValueError, e.what());
        }
    });

    py::class_<Polyline>(m, "Polyline")
        .def("__call__", [](const Polyline& p, double t) { return from_point(p.at(t)); })
        .def_property_readonly("knots", &Polyline::knots)
        .def_property_readonly("vertices",
                               [](const Polyline& p) {
                                   std::vector<std::vector<double>> out;
                                   for (const auto& v : p.vertices()) out.push_back(v.values());
                                   return out;
                               })
        .def_property_readonly("domain", [](const Polyline& p) { return std::pair{p.domain().lo, p.domain().hi}; })
        .def_property_readonly("length", &Polyline::length)
        .def_property_readonly("dim", &Polyline::dim)
        .def("rescaled_to_unit", &Polyline::rescaled_to_unit);

    m.def(
        "polyline",
        [](const std::vector<std::vector<double>>& vertices, std::optional<std::vector<double>> knots) {
            if (knots) return Polyline::with_knots(*knots, to_points(vertices));
            return Polyline::arc_length(to_points(vertices)).rescaled_to_unit();
        },
        py::arg("vertices"), py::arg("knots") = py::none(),
        "Polyline on [0,1]: unit-speed up to scale without knots, else the given knots.");

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("x_star", &SolveResult::x_star)
        .def_property_readonly("point", [](const SolveResult& r) { return from_point(r.point); })
        .def_readonly("distance", &SolveResult::distance)
        .def_readonly("certified_lower", &SolveResult::certified_lower)
        .def_readonly("certified_upper", &SolveResult::certified_upper)
        .def_readonly("samples_used", &SolveResult::samples_used)
        .def_readonly("sample_params", &SolveResult::sample_params)
        .def_property_readonly("trace",
                               [](const SolveResult& r) {
                                   std::vector<std::string> out;
                                   for (const auto& e : r.trace) out.push_back(format_event(e));
                                   return out;
                               })
        .def("__repr__", [](const SolveResult& r) {
            return "SolveResult(x_star=" + std::to_string(r.x_star) + ", distance=" + std::to_string(r.distance) +
                   ", samples_used=" + std::to_string(r.samples_used) + ")";
        });

    m.def(
        "solve",
        [](const py::object& curve, const std::string& kind, const std::string& error, double epsilon,
           std::optional<std::size_t> budget) {
            SolveOptions opt;
            opt.budget = budget;
            return solve(to_curve(curve), make_query(kind, error, epsilon), opt);
        },
        py::arg("curve"), py::arg("kind") = "nearest", py::arg("error") = "abs", py::arg("epsilon") = 0.1,
        py::arg("budget") = py::none());

    m.def(
        "uniform_baseline",
        [](const py::object& curve, const std::string& kind, double epsilon) {
            return uniform_baseline(to_curve(curve), make_query(kind, "abs", epsilon));
        },
        py::arg("curve"), py::arg("kind") = "nearest", py::arg("epsilon") = 0.1);

    m.def(
        "replay",
        [](const py::object& curve, const std::string& kind, const std::string& error, double epsilon) {
            const Query q = make_query(kind, error, epsilon);
            const ReplayReport r = replay(solve(to_curve(curve), q).trace, q);
            return py::make_tuple(r.ok, r.check, r.message);
        },
        py::arg("curve"), py::arg("kind") = "nearest", py::arg("error") = "abs", py::arg("epsilon") = 0.1,
        "Solve, then replay the trace; returns (ok, failed_check, message).");

    m.def(
        "closest_possible",
        [](const std::vector<double>& f1, const std::vector<double>& f2, double s) {
            return closest_possible({to_point(f1), to_point(f2), s});
        },
        py::arg("f1"), py::arg("f2"), py::arg("string_length"));
    m.def(
        "farthest_possible",
        [](const std::vector<double>& f1, const std::vector<double>& f2, double s) {
            return farthest_possible({to_point(f1), to_point(f2), s});
        },
        py::arg("f1"), py::arg("f2"), py::arg("string_length"));

    m.def(
        "check_proofset",
        [](const std::vector<double>& params, const std::vector<std::vector<double>>& points, const std::string& kind,
           const std::string& error, double epsilon) {
            const ProofVerdict v = check(make_proofset(params, to_points(points), make_query(kind, error, epsilon)));
            py::dict d;
            d["pass"] = v.pass;
            d["margin"] = v.margin;
            d["lower"] = v.lower();
            d["upper"] = v.upper();
            return d;
        },
        py::arg("params"), py::arg("points"), py::arg("kind") = "nearest", py::arg("error") = "abs",
        py::arg("epsilon") = 0.1);

    m.def(
        "min_proofset_grid",
        [](const py::object& curve, const std::string& kind, const std::string& error, double epsilon,
           std::optional<double> delta, std::size_t cap) {
            const Query q = make_query(kind, error, epsilon);
            const OptEstimate e = min_proofset_grid(to_curve(curve), q, delta.value_or(epsilon / 8.0), cap);
            return py::make_tuple(e.value, e.witness);
        },
        py::arg("curve"), py::arg("kind") = "nearest", py::arg("error") = "abs", py::arg("epsilon") = 0.1,
        py::arg("delta") = py::none(), py::arg("cap") = kDefaultOracleCap,
        "Grid-restricted minimum proof set; returns (value, witness).");

    py::class_<InstanceBundle>(m, "InstanceBundle")
        .def_readonly("curve", &InstanceBundle::curve)
        .def_readonly("epsilon", &InstanceBundle::epsilon)
        .def_property_readonly("metadata", [](const InstanceBundle& b) { return metadata_dict(b.metadata); });

    m.def(
        "constant_instance", [](const std::vector<double>& p, double eps) { return constant_instance(to_point(p), eps); },
        py::arg("point"), py::arg("epsilon"));
    m.def("spike_family", &spike_family, py::arg("k"), py::arg("epsilon"), py::arg("down_index"), py::arg("seed") = 0);
    m.def("hidden_spike_instance", &hidden_spike_instance, py::arg("epsilon"), py::arg("slot"));
    m.def(
        "relative_segment_family",
        [](std::size_t k, double eps, std::size_t down, std::uint64_t seed, const std::string& kind,
           std::optional<double> ratio) { return relative_segment_family(k, eps, down, seed, parse_kind(kind), ratio); },
        py::arg("k"), py::arg("epsilon"), py::arg("down_index"), py::arg("seed") = 0, py::arg("kind") = "nearest",
        py::arg("spike_ratio") = py::none());
    m.def("random_polyline", &random_polyline, py::arg("n_vertices"), py::arg("dim"), py::arg("seed"),
          py::arg("clearance") = 0.5);
}
