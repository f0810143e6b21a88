#include <optional>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "varmax/circum.hpp"
#include "varmax/errors.hpp"
#include "varmax/jung.hpp"
#include "varmax/minimax.hpp"
#include "varmax/scenario.hpp"
#include "varmax/spaces.hpp"

namespace py = pybind11;
using namespace varmax;

namespace {

PointCloud cloud_of(const ModelSpace& space, const Eigen::MatrixXd& rows) {
    std::vector<Point> pts;
    for (Eigen::Index i = 0; i < rows.rows(); ++i) pts.emplace_back(Eigen::VectorXd(rows.row(i).transpose()));
    return PointCloud(space, std::move(pts));
}

JungOrder order_of(std::optional<int> n) { return n ? JungOrder::finite(*n) : JungOrder::infinity(); }

py::dict solution_dict(const SaddleSolution& s) {
    py::dict d;
    d["value"] = s.value;
    d["mu"] = s.mu.weights();
    d["nu"] = s.nu.weights();
    d["primal_residual"] = s.primal_residual;
    d["dual_residual"] = s.dual_residual;
    d["gap"] = s.gap;
    d["method"] = to_string(s.method);
    d["iterations"] = s.iterations;
    return d;
}

}  // namespace

PYBIND11_MODULE(_varmax, m) {
    m.doc() = "Variance maximization, Wasserstein circumradii and Jung certificates";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
    py::register_exception<HypothesisError>(m, "HypothesisError", base.ptr());
    py::register_exception<SolverError>(m, "SolverError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());

    py::class_<ModelSpace>(m, "ModelSpace")
        .def_static("euclidean", &ModelSpace::euclidean, py::arg("dim"))
        .def_static("sphere", &ModelSpace::sphere, py::arg("curvature"), py::arg("dim"))
        .def_static("hyperbolic", &ModelSpace::hyperbolic, py::arg("curvature"), py::arg("dim"))
        .def_static("finite", &ModelSpace::finite, py::arg("distances"))
        .def_property_readonly("kind", [](const ModelSpace& s) { return to_string(s.kind()); })
        .def_property_readonly("dim", &ModelSpace::dim)
        .def_property_readonly("curvature", &ModelSpace::curvature)
        .def("__repr__", &ModelSpace::describe);

    m.def(
        "distance",
        [](const ModelSpace& s, const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
            return distance(s, Point(p), Point(q));
        },
        py::arg("space"), py::arg("p"), py::arg("q"));

    m.def(
        "solve_lp", [](const Eigen::MatrixXd& v) { return solution_dict(solve_lp(PayoffMatrix(v))); },
        py::arg("payoff"), "Exact optimal strategies of max_mu min_nu mu'V nu.");
    m.def(
        "solve_fictitious",
        [](const Eigen::MatrixXd& v, std::size_t max_iters, double target_gap) {
            return solution_dict(solve_fictitious(PayoffMatrix(v), max_iters, target_gap));
        },
        py::arg("payoff"), py::arg("max_iters") = 100000, py::arg("target_gap") = 1e-3);
    m.def(
        "certify_saddle",
        [](const Eigen::MatrixXd& v, const std::vector<double>& mu, const std::vector<double>& nu, double tol) {
            const SaddleCertificate c = certify_saddle(PayoffMatrix(v), DiscreteMeasure(mu), DiscreteMeasure(nu), tol);
            py::dict d;
            d["pass"] = c.pass();
            d["value"] = c.value;
            d["column_min"] = c.column_min;
            d["row_max"] = c.row_max;
            d["barycenter_violation"] = c.barycenter_violation;
            d["anti_barycenter_violation"] = c.anti_barycenter_violation;
            return d;
        },
        py::arg("payoff"), py::arg("mu"), py::arg("nu"), py::arg("tol") = 1e-7);

    m.def(
        "squared_distance_payoff",
        [](const ModelSpace& s, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
            return assemble_payoff(cloud_of(s, x), cloud_of(s, y), PayoffKind::squared_distance).entries();
        },
        py::arg("space"), py::arg("x"), py::arg("y"));

    m.def(
        "welzl_meb",
        [](const Eigen::MatrixXd& points) {
            const CircumballResult r = welzl_meb(cloud_of(ModelSpace::euclidean(static_cast<int>(points.cols())), points));
            return py::make_tuple(std::get<Point>(r.center).coords, r.radius);
        },
        py::arg("points"), "Exact minimal enclosing ball (center, radius) of Euclidean points, one per row.");

    m.def(
        "jung_bound", [](double r, std::optional<int> n, double k) { return jung_bound(r, order_of(n), k); },
        py::arg("radius"), py::arg("n"), py::arg("k"), "S(R, n, k); n=None is the infinite-order bound.");
    m.def(
        "jung_identity_check",
        [](double r, std::optional<int> n, double k) {
            const IdentityCheck c = jung_identity_check(r, order_of(n), k);
            return py::make_tuple(c.lhs, c.rhs, c.relative_error);
        },
        py::arg("radius"), py::arg("n"), py::arg("k"));

    m.def(
        "run_scenario_json",
        [](const std::string& text) { return dump(run_scenario(parse_scenario_text(text)).json); },
        py::arg("scenario"), "Runs a scenario given as JSON text; returns the result JSON text.");
    m.def(
        "demo_json", [](const std::string& name) { return dump(run_scenario(demo_scenario(name)).json); },
        py::arg("name"));
    m.def("demo_names", &demo_names);
}
