#include "sandlab/electro.hpp"
#include "sandlab/harness.hpp"
#include "sandlab/sandpile.hpp"
#include "sandlab/walks.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;

namespace {

using namespace sandlab;

py::int_ to_py_int(const BigInt& x) {
    const std::string digits = x.str();
    PyObject* obj = PyLong_FromString(digits.c_str(), nullptr, 10);
    if (!obj) throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(obj);
}

py::object to_py_fraction(const Rational& q) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_py_int(boost::multiprecision::numerator(q)),
                    to_py_int(boost::multiprecision::denominator(q)));
}

py::dict json_to_dict(const Json& j) {
    py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "sandpile transience laboratory core";

    py::class_<GridShape>(m, "GridShape")
        .def(py::init<int, int>(), py::arg("n"), py::arg("d"))
        .def_readonly("n", &GridShape::n)
        .def_readonly("d", &GridShape::d)
        .def("num_vertices", &GridShape::num_vertices)
        .def("degree", &GridShape::degree)
        .def("sink_edges", &GridShape::sink_edges, py::arg("vertex"))
        .def("index", &GridShape::index, py::arg("vertex"))
        .def("vertex_at", &GridShape::vertex_at, py::arg("index"))
        .def("__repr__", &GridShape::to_string);

    py::class_<sandpile::Config>(m, "Config")
        .def(py::init<const GridShape&>(), py::arg("shape"))
        .def_readonly("shape", &sandpile::Config::shape)
        .def_readwrite("grains", &sandpile::Config::grains)
        .def("stable", &sandpile::Config::stable)
        .def("total_grains", &sandpile::Config::total_grains)
        .def("__eq__", [](const sandpile::Config& a, const sandpile::Config& b) { return a == b; });

    py::class_<sandpile::Odometer>(m, "Odometer")
        .def_readonly("shape", &sandpile::Odometer::shape)
        .def_readonly("topples", &sandpile::Odometer::topples)
        .def("total", &sandpile::Odometer::total);

    py::class_<sandpile::DriveReport>(m, "DriveReport")
        .def_readonly("site", &sandpile::DriveReport::site)
        .def_readonly("grains_added", &sandpile::DriveReport::grains_added)
        .def_readonly("recurrent_at", &sandpile::DriveReport::recurrent_at)
        .def_readonly("total_topplings", &sandpile::DriveReport::total_topplings)
        .def_readonly("wall_time", &sandpile::DriveReport::wall_time)
        .def("to_dict",
             [](const sandpile::DriveReport& r) { return json_to_dict(r.to_json()); });

    m.def("new_config", &sandpile::new_config, py::arg("shape"));
    m.def(
        "stabilize",
        [](const sandpile::Config& c) { return sandpile::stabilize(c); },
        py::arg("config"));
    m.def("add_and_stabilize", &sandpile::add_and_stabilize, py::arg("config"), py::arg("site"),
          py::arg("k"));
    m.def("burning_test", &sandpile::burning_test, py::arg("config"));
    m.def("drive_to_recurrence", &sandpile::drive_to_recurrence, py::arg("shape"),
          py::arg("site"), py::call_guard<py::gil_scoped_release>());
    m.def("tcl_exact", &sandpile::tcl_exact, py::arg("shape"),
          py::arg("state_cap") = (1ull << 20), py::call_guard<py::gil_scoped_release>());
    m.def("render_frames", &sandpile::render_frames, py::arg("shape"), py::arg("site"),
          py::arg("checkpoints"), py::arg("out_dir"));

    m.def(
        "potentials",
        [](const GridShape& shape, const Vertex& source, const std::string& backend) {
            const auto field = electro::potentials(
                shape, source,
                backend == "exact" ? electro::Backend::Exact : electro::Backend::Float);
            if (field.backend == electro::Backend::Exact) {
                py::list out;
                for (const auto& q : field.exact) out.append(to_py_fraction(q));
                return py::object(out);
            }
            return py::object(py::cast(field.values));
        },
        py::arg("shape"), py::arg("source"), py::arg("backend") = "float");
    m.def(
        "effective_resistance",
        [](const GridShape& shape, const Vertex& u, const std::string& backend) {
            const auto r = electro::effective_resistance(
                shape, u, backend == "exact" ? electro::Backend::Exact : electro::Backend::Float);
            return r.exact ? to_py_fraction(*r.exact) : py::object(py::float_(r.ohms));
        },
        py::arg("shape"), py::arg("u"), py::arg("backend") = "float");
    m.def(
        "path_potential",
        [](int n, int u1, int v1) { return to_py_fraction(electro::path_potential(n, u1, v1)); },
        py::arg("n"), py::arg("u1"), py::arg("v1"));
    m.def(
        "monte_carlo_escape",
        [](const GridShape& shape, const Vertex& start, const Vertex& target,
           std::uint64_t trials, std::uint64_t seed) {
            electro::EscapeEstimate est;
            {
                py::gil_scoped_release release;
                est = electro::monte_carlo_escape(shape, start, target, trials, seed);
            }
            return py::make_tuple(est.p_hat, est.stderr_);
        },
        py::arg("shape"), py::arg("start"), py::arg("target"), py::arg("trials"),
        py::arg("seed") = 0);
    m.def(
        "corner_to_corner_resistance",
        [](int n) { return electro::corner_to_corner_resistance(n); }, py::arg("n"));

    m.def(
        "count_end", [](long t, long k) { return to_py_int(walks::count_end(t, k)); },
        py::arg("t"), py::arg("k"));
    m.def(
        "count_end_max",
        [](long t, long k, long mx) { return to_py_int(walks::count_end_max(t, k, mx)); },
        py::arg("t"), py::arg("k"), py::arg("m"));
    m.def(
        "corridor_count",
        [](int i, int n, long t) {
            return to_py_int(walks::corridor_count(walks::CorridorQuery{i, n, t}));
        },
        py::arg("i"), py::arg("n"), py::arg("t"));
    m.def(
        "prob_corridor",
        [](int i, int n, long t) {
            return to_py_fraction(walks::prob_corridor(walks::CorridorQuery{i, n, t}));
        },
        py::arg("i"), py::arg("n"), py::arg("t"));
    m.def("neg_binom_sum", &walks::neg_binom_sum, py::arg("t1"), py::arg("d"), py::arg("cap"));
    m.def(
        "corner_potential_series",
        [](int n, int u1, int u2, long t_cap) {
            Rational value;
            {
                py::gil_scoped_release release;
                value = walks::corner_potential_series(n, u1, u2, t_cap);
            }
            return to_py_fraction(value);
        },
        py::arg("n"), py::arg("u1"), py::arg("u2"), py::arg("t_cap"));

    m.def(
        "run_suite",
        [](const std::string& suite, const std::vector<int>& n_grid, int d, std::uint64_t seed,
           std::uint64_t trials, int jobs) {
            harness::SuiteConfig cfg;
            cfg.suite = suite;
            cfg.n_grid = n_grid;
            cfg.d = d;
            cfg.seed = seed;
            cfg.trials = trials;
            cfg.jobs = jobs;
            Json result;
            {
                py::gil_scoped_release release;
                result = harness::run_suite(cfg);
            }
            return json_to_dict(result);
        },
        py::arg("suite"), py::arg("n_grid"), py::arg("d") = 2, py::arg("seed") = 0,
        py::arg("trials") = 200000, py::arg("jobs") = 0);

    m.attr("__version__") = "0.1.0";
}
