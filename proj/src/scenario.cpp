#include "varmax/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <regex>
#include <sstream>

#include "varmax/errors.hpp"

namespace varmax {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

void check_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(where, "expected an object");
    for (const auto& [key, _] : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
            fail(where, "unknown field '" + key + "'");
        }
    }
}

const Json& require(const Json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) fail(where, std::string("missing field '") + key + "'");
    return obj.at(key);
}

double number(const Json& v, const std::string& where) {
    if (!v.is_number()) fail(where, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(where, "expected a finite number");
    return d;
}

long long integer(const Json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where, "expected an integer");
    return v.get<long long>();
}

int positive_int(const Json& v, const std::string& where, long long max = 1000000) {
    const long long n = integer(v, where);
    if (n < 1 || n > max) fail(where, "expected an integer in [1, " + std::to_string(max) + "]");
    return static_cast<int>(n);
}

std::string text(const Json& v, const std::string& where) {
    if (!v.is_string()) fail(where, "expected a string");
    return v.get<std::string>();
}

std::vector<double> numbers(const Json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

Eigen::MatrixXd matrix(const Json& v, const std::string& where) {
    if (!v.is_array() || v.empty()) fail(where, "expected a nonempty array of rows");
    const auto first = numbers(v[0], where + "[0]");
    if (first.empty()) fail(where, "rows must be nonempty");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(first.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto row = numbers(v[i], where + "[" + std::to_string(i) + "]");
        if (row.size() != first.size()) fail(where, "rows have different lengths");
        for (std::size_t j = 0; j < row.size(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
        }
    }
    return m;
}

// Library validation errors raised while building parsed objects are parse errors.
template <class F>
auto guarded(const std::string& where, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const InvalidArgument& e) {
        fail(where, e.what());
    }
}

double circle_curvature(double circumference) {
    const double r = circumference / (2.0 * std::numbers::pi);
    return 1.0 / (r * r);
}

ModelSpace parse_space(const Json& v) {
    const std::string where = "space";
    check_keys(v, where, {"kind", "dim", "curvature", "distances"});
    const std::string kind = text(require(v, "kind", where), where + ".kind");
    return guarded(where, [&] {
        if (kind == "euclidean") {
            check_keys(v, where, {"kind", "dim"});
            return ModelSpace::euclidean(positive_int(require(v, "dim", where), where + ".dim", 64));
        }
        if (kind == "sphere" || kind == "hyperbolic") {
            check_keys(v, where, {"kind", "dim", "curvature"});
            const int dim = positive_int(require(v, "dim", where), where + ".dim", 64);
            const double k = number(require(v, "curvature", where), where + ".curvature");
            return kind == "sphere" ? ModelSpace::sphere(k, dim) : ModelSpace::hyperbolic(k, dim);
        }
        if (kind == "finite") {
            check_keys(v, where, {"kind", "distances"});
            return ModelSpace::finite(matrix(require(v, "distances", where), where + ".distances"));
        }
        fail(where + ".kind", "unknown space kind '" + kind + "'");
    });
}

Point parse_point(const ModelSpace& space, const Json& v, const std::string& where) {
    return guarded(where, [&] {
        if (space.kind() == SpaceKind::finite) {
            const long long i = integer(v.is_array() && v.size() == 1 ? v[0] : v, where);
            if (i < 0) fail(where, "finite point indices are nonnegative");
            return finite_point(space, static_cast<std::size_t>(i));
        }
        const auto c = numbers(v, where);
        if (static_cast<int>(c.size()) != space.ambient_dim()) {
            fail(where, "expected " + std::to_string(space.ambient_dim()) + " ambient coordinates");
        }
        Point p(Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size())));
        validate_point(space, p);
        return make_point(space, p.coords);
    });
}

std::vector<std::string> parse_labels(const Json& v, std::size_t n, const std::string& where) {
    if (!v.is_array() || v.size() != n) fail(where, "expected one label per point");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(text(v[i], where));
    return out;
}

PointCloud regular_simplex(int n) {
    // Vertex 0 at the origin, the others with pairwise dot products 1/2, then centered.
    Eigen::MatrixXd gram = Eigen::MatrixXd::Constant(n, n, 0.5);
    gram.diagonal().setOnes();
    const Eigen::MatrixXd l = gram.llt().matrixL();
    std::vector<Eigen::VectorXd> v(static_cast<std::size_t>(n + 1), Eigen::VectorXd::Zero(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i + 1)] = l.row(i).transpose();
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    for (const auto& p : v) c += p;
    c /= static_cast<double>(n + 1);
    std::vector<Point> pts;
    for (const auto& p : v) pts.emplace_back(p - c);
    return PointCloud(ModelSpace::euclidean(n), std::move(pts));
}

// Uniform doubles from the top 53 bits of mt19937_64, identical on every platform.
double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

PointCloud parse_generator(const Json& v, const std::optional<ModelSpace>& declared) {
    const std::string where = "X";
    const std::string gen = text(require(v, "generator", where), where + ".generator");
    auto with_space = [&](const ModelSpace& implied) {
        if (declared && !(*declared == implied)) {
            fail(where, "generator '" + gen + "' produces " + implied.describe() +
                            " but the scenario declares " + declared->describe());
        }
        return implied;
    };
    return guarded(where, [&]() -> PointCloud {
        if (gen == "simplex") {
            check_keys(v, where, {"generator", "n"});
            const int n = positive_int(require(v, "n", where), where + ".n", 64);
            const PointCloud c = regular_simplex(n);
            with_space(c.space());
            return c;
        }
        if (gen == "circle") {
            check_keys(v, where, {"generator", "N", "circumference"});
            const int n = positive_int(require(v, "N", where), where + ".N");
            const double len = v.contains("circumference")
                                   ? number(v["circumference"], where + ".circumference")
                                   : 2.0;
            if (!(len > 0.0)) fail(where + ".circumference", "must be positive");
            const ModelSpace s = with_space(ModelSpace::sphere(circle_curvature(len), 1));
            return sample_grid(s, WholeSphere{}, n);
        }
        if (gen == "cap") {
            check_keys(v, where, {"generator", "k", "r", "N"});
            const double k = number(require(v, "k", where), where + ".k");
            const double r = number(require(v, "r", where), where + ".r");
            const int n = positive_int(require(v, "N", where), where + ".N");
            const ModelSpace s = with_space(ModelSpace::sphere(k, 2));
            return sample_grid(s, Ball{std::nullopt, r}, n);
        }
        if (gen == "random") {
            check_keys(v, where, {"generator", "seed", "count", "box"});
            const long long seed = integer(require(v, "seed", where), where + ".seed");
            const int count = positive_int(require(v, "count", where), where + ".count");
            const Eigen::MatrixXd box = matrix(require(v, "box", where), where + ".box");
            if (box.cols() != 2) fail(where + ".box", "expected [lower, upper] per axis");
            for (Eigen::Index a = 0; a < box.rows(); ++a) {
                if (!(box(a, 0) <= box(a, 1))) fail(where + ".box", "lower bound exceeds upper bound");
            }
            const ModelSpace s = with_space(ModelSpace::euclidean(static_cast<int>(box.rows())));
            std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
            std::vector<Point> pts;
            for (int i = 0; i < count; ++i) {
                Eigen::VectorXd p(box.rows());
                for (Eigen::Index a = 0; a < box.rows(); ++a) {
                    p[a] = box(a, 0) + (box(a, 1) - box(a, 0)) * unit_draw(rng);
                }
                pts.emplace_back(std::move(p));
            }
            return PointCloud(s, std::move(pts));
        }
        if (gen == "all") {
            check_keys(v, where, {"generator"});
            if (!declared || declared->kind() != SpaceKind::finite) {
                fail(where, "generator 'all' needs a finite space");
            }
            return PointCloud::all_of(*declared);
        }
        fail(where + ".generator", "unknown generator '" + gen + "'");
    });
}

PointCloud parse_points(const Json& v, const ModelSpace& space, const std::string& where) {
    const Json& pts = require(v, "points", where);
    if (!pts.is_array() || pts.empty()) fail(where + ".points", "expected a nonempty array");
    std::vector<Point> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out.push_back(parse_point(space, pts[i], where + ".points[" + std::to_string(i) + "]"));
    }
    std::vector<std::string> labels;
    if (v.contains("labels")) labels = parse_labels(v["labels"], out.size(), where + ".labels");
    return guarded(where, [&] { return PointCloud(space, std::move(out), std::move(labels)); });
}

Region parse_region(const Json& v, const ModelSpace& space, const std::string& where) {
    check_keys(v, where, {"box", "whole_sphere", "ball"});
    if (v.size() != 1) fail(where, "expected exactly one of box, whole_sphere, ball");
    if (v.contains("box")) {
        const Json& b = v["box"];
        check_keys(b, where + ".box", {"lower", "upper"});
        Box box{numbers(require(b, "lower", where), where + ".box.lower"),
                numbers(require(b, "upper", where), where + ".box.upper")};
        if (space.kind() != SpaceKind::euclidean || static_cast<int>(box.lower.size()) != space.dim() ||
            box.upper.size() != box.lower.size()) {
            fail(where, "box regions need a euclidean space and one bound per axis");
        }
        return box;
    }
    if (v.contains("whole_sphere")) {
        if (!v["whole_sphere"].is_boolean() || !v["whole_sphere"].get<bool>()) {
            fail(where + ".whole_sphere", "expected true");
        }
        if (space.kind() != SpaceKind::sphere) fail(where, "whole_sphere needs a sphere");
        return WholeSphere{};
    }
    const Json& b = v["ball"];
    check_keys(b, where + ".ball", {"center", "radius"});
    Ball ball;
    ball.radius = number(require(b, "radius", where), where + ".ball.radius");
    if (b.contains("center")) ball.center = parse_point(space, b["center"], where + ".ball.center");
    return ball;
}

RefinementConfig parse_refinement(const Json& v, RefinementConfig cfg, const std::string& where) {
    if (v.contains("max_rounds")) cfg.max_rounds = positive_int(v["max_rounds"], where + ".max_rounds", 10000);
    if (v.contains("value_tol")) cfg.value_tol = number(v["value_tol"], where + ".value_tol");
    if (v.contains("descent_steps")) {
        cfg.descent_steps = positive_int(v["descent_steps"], where + ".descent_steps");
    }
    guarded(where, [&] {
        cfg.validate();
        return 0;
    });
    return cfg;
}

YSpec parse_y(const Json& v, const ModelSpace& space) {
    const std::string where = "Y";
    const std::string mode = text(require(v, "mode", where), where + ".mode");
    if (mode == "explicit") {
        check_keys(v, where, {"mode", "points", "labels"});
        return ExplicitY{parse_points(v, space, where)};
    }
    if (mode == "same_as_x") {
        check_keys(v, where, {"mode"});
        return SameAsX{};
    }
    if (mode == "grid") {
        check_keys(v, where, {"mode", "resolution", "region"});
        GridY g;
        if (v.contains("resolution")) g.resolution = positive_int(v["resolution"], where + ".resolution");
        if (v.contains("region")) g.region = parse_region(v["region"], space, where + ".region");
        return g;
    }
    if (mode == "auto_refine") {
        check_keys(v, where,
                   {"mode", "resolution", "region", "max_rounds", "value_tol", "descent_steps"});
        AutoRefineY a;
        if (v.contains("resolution")) {
            const long long r = integer(v["resolution"], where + ".resolution");
            if (r < 0 || r > 1000000) fail(where + ".resolution", "expected an integer >= 0");
            a.resolution = static_cast<int>(r);
        }
        if (v.contains("region")) a.region = parse_region(v["region"], space, where + ".region");
        a.config = parse_refinement(v, a.config, where);
        return a;
    }
    fail(where + ".mode", "unknown mode '" + mode + "'");
}

Output parse_output(const Json& v, const std::string& where) {
    const std::string s = text(v, where);
    if (s == "solution") return Output::solution;
    if (s == "circumradius") return Output::circumradius;
    if (s == "jung") return Output::jung;
    if (s == "certificate") return Output::certificate;
    fail(where, "unknown output '" + s + "'");
}

// Default candidate region covering the convex hull of X.
Region default_region(const PointCloud& x) {
    const ModelSpace& space = x.space();
    switch (space.kind()) {
        case SpaceKind::euclidean: {
            Box box;
            for (int a = 0; a < space.dim(); ++a) {
                double lo = x[0][a], hi = x[0][a];
                for (const auto& p : x.points()) {
                    lo = std::min(lo, p[a]);
                    hi = std::max(hi, p[a]);
                }
                box.lower.push_back(lo);
                box.upper.push_back(hi);
            }
            return box;
        }
        case SpaceKind::sphere:
            return WholeSphere{};
        case SpaceKind::hyperbolic:
            return Ball{x[0], std::max(diameter(x), 1e-12)};
        case SpaceKind::finite:
            break;
    }
    throw InvalidArgument("finite spaces have no candidate region");
}

PointCloud grid_candidates(const PointCloud& x, const std::optional<Region>& region, int resolution) {
    if (x.space().kind() == SpaceKind::finite) return PointCloud::all_of(x.space());
    return sample_grid(x.space(), region ? *region : default_region(x), resolution);
}

PointCloud concat(const PointCloud& a, const PointCloud& b) {
    PointCloud out = a;
    for (std::size_t i = 0; i < b.size(); ++i) {
        out.push_back(b[i], b.labels().empty() ? std::string{} : b.labels()[i]);
    }
    return out;
}

PointCloud initial_candidates(const Scenario& s) {
    return std::visit(
        [&](const auto& y) -> PointCloud {
            using T = std::decay_t<decltype(y)>;
            if constexpr (std::is_same_v<T, ExplicitY>) {
                return y.points;
            } else if constexpr (std::is_same_v<T, SameAsX>) {
                return s.x;
            } else if constexpr (std::is_same_v<T, GridY>) {
                return grid_candidates(s.x, y.region, y.resolution);
            } else {
                if (y.resolution == 0 || s.space().kind() == SpaceKind::finite) return s.x;
                return concat(s.x, grid_candidates(s.x, y.region, y.resolution));
            }
        },
        s.y);
}

PayoffMatrix build_payoff(const Scenario& s, const PointCloud& y) {
    if (s.payoff == PayoffKind::custom) {
        const Eigen::MatrixXd& m = *s.custom_matrix;
        if (static_cast<std::size_t>(m.rows()) != s.x.size() ||
            static_cast<std::size_t>(m.cols()) != y.size()) {
            throw ParseError("payoff.matrix: expected " + std::to_string(s.x.size()) + " x " +
                             std::to_string(y.size()) + " entries");
        }
        return assemble_payoff(s.x, y, m);
    }
    return assemble_payoff(s.x, y, s.payoff);
}

Json vec(const std::vector<double>& v) { return Json(v); }

Json vec(const Eigen::VectorXd& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

Json points_json(const PointCloud& c) {
    Json out = Json::array();
    for (const auto& p : c.points()) out.push_back(vec(p.coords));
    return out;
}

Json solution_json(const PayoffMatrix& v, const SaddleSolution& s, const std::vector<double>& history,
                   std::optional<double> certified_gap) {
    Json j;
    j["value"] = s.value;
    j["method"] = to_string(s.method);
    j["iterations"] = s.iterations;
    j["primal_residual"] = s.primal_residual;
    j["dual_residual"] = s.dual_residual;
    j["gap"] = s.gap;
    j["mu"] = s.mu.weights();
    j["nu"] = s.nu.weights();
    j["support_mu"] = support(s.mu);
    j["support_nu"] = support(s.nu);
    j["sphere_condition_violation"] = sphere_condition_violation(v, s.mu, s.nu, s.value);
    j["history"] = history;
    if (certified_gap) j["certified_gap"] = *certified_gap;
    j["x_size"] = v.rows();
    j["y_size"] = v.cols();
    if (v.y_cloud()) j["Y"] = points_json(*v.y_cloud());
    return j;
}

Json radii_json(const RadiiReport& r) {
    Json j;
    j["wasserstein_sq"] = r.wasserstein_sq;
    j["metric_sq"] = r.metric_sq;
    j["welzl_sq"] = r.welzl_sq ? Json(*r.welzl_sq) : Json(nullptr);
    j["gap"] = r.gap;
    j["unique_barycenter_regime"] = r.unique_barycenter_regime;
    j["refined"] = r.refined;
    j["pass_one_sided"] = r.pass_one_sided;
    j["pass_equality"] = r.pass_equality ? Json(*r.pass_equality) : Json(nullptr);
    j["tol"] = r.tol;
    return j;
}

Json jung_json(const JungReport& r) {
    Json j;
    j["D"] = r.diameter;
    j["R"] = r.radius;
    j["k"] = r.curvature;
    j["m"] = r.support_size;
    j["S_inf"] = r.bound_infinity;
    j["S_support"] = r.bound_support ? Json(*r.bound_support) : Json(nullptr);
    j["pass_inf"] = r.pass_infinity;
    j["pass_support"] = to_string(r.pass_support);
    j["unique_barycenter"] = r.unique_barycenter;
    j["refinement_converged"] = r.refinement_converged;
    j["support_indices"] = r.support_indices;
    j["support_weights"] = r.support_weights;
    j["history"] = r.history;
    if (r.angles) {
        Json a;
        a["circumcenter"] = vec(r.angles->circumcenter.coords);
        a["apex"] = r.support_indices[r.angles->apex];
        a["cosines"] = r.angles->cosines;
        a["weighted_sum"] = r.angles->weighted_sum;
        a["C"] = r.angles->min_cosine;
        a["n_bound"] = r.angles->n_bound ? Json(*r.angles->n_bound) : Json(nullptr);
        j["angles"] = a;
    } else {
        j["angles"] = nullptr;
    }
    return j;
}

Json space_json(const ModelSpace& s) {
    Json j;
    j["kind"] = to_string(s.kind());
    if (s.kind() == SpaceKind::finite) {
        j["size"] = s.finite_size();
    } else {
        j["dim"] = s.dim();
        j["curvature"] = s.curvature();
    }
    return j;
}

std::string fmt17(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::ofstream open_csv(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    return out;
}

// Parses "name", "name(n)" or "name:n".
std::pair<std::string, std::optional<int>> split_demo(const std::string& name) {
    static const std::regex pattern(R"(^([a-z_]+)(?:\((\d+)\)|:(\d+))?$)");
    std::smatch m;
    if (!std::regex_match(name, m, pattern)) throw InvalidArgument("unknown demo '" + name + "'");
    std::optional<int> n;
    const std::string digits = m[2].matched ? m[2].str() : m[3].str();
    if (!digits.empty()) {
        if (digits.size() > 6) throw InvalidArgument("demo parameter too large");
        n = std::stoi(digits);
    }
    return {m[1].str(), n};
}

}  // namespace

std::string to_string(Output o) {
    switch (o) {
        case Output::solution: return "solution";
        case Output::circumradius: return "circumradius";
        case Output::jung: return "jung";
        case Output::certificate: return "certificate";
    }
    return "unknown";
}

bool Scenario::wants(Output o) const {
    return std::find(outputs.begin(), outputs.end(), o) != outputs.end();
}

Scenario parse_scenario(const Json& doc) {
    check_keys(doc, "scenario", {"name", "space", "X", "Y", "payoff", "solver", "outputs", "jung"});
    std::optional<ModelSpace> space;
    if (doc.contains("space")) space = parse_space(doc["space"]);

    const Json& xj = require(doc, "X", "scenario");
    std::optional<PointCloud> x;
    if (xj.is_object() && xj.contains("generator")) {
        x = parse_generator(xj, space);
    } else {
        check_keys(xj, "X", {"points", "labels"});
        if (!space) fail("scenario", "explicit points need a 'space'");
        x = parse_points(xj, *space, "X");
    }

    Scenario s{.name = doc.contains("name") ? text(doc["name"], "name") : "scenario",
               .x = *x,
               .y = SameAsX{}};
    if (doc.contains("Y")) {
        s.y = parse_y(doc["Y"], s.space());
    } else if (s.space().kind() != SpaceKind::finite) {
        s.y = AutoRefineY{};
    }

    if (doc.contains("payoff")) {
        const Json& p = doc["payoff"];
        check_keys(p, "payoff", {"kind", "matrix"});
        const std::string kind = text(require(p, "kind", "payoff"), "payoff.kind");
        s.payoff = guarded("payoff.kind", [&] { return payoff_kind_from_string(kind); });
        if (s.payoff == PayoffKind::custom) {
            s.custom_matrix = matrix(require(p, "matrix", "payoff"), "payoff.matrix");
            if (!s.custom_matrix->allFinite()) fail("payoff.matrix", "entries must be finite");
        } else if (p.contains("matrix")) {
            fail("payoff.matrix", "only custom payoffs take a matrix");
        }
    }

    if (doc.contains("solver")) {
        const Json& v = doc["solver"];
        check_keys(v, "solver", {"method", "tol", "max_iters"});
        if (v.contains("method")) {
            const std::string m = text(v["method"], "solver.method");
            if (m == "lp") {
                s.solver.method = SolveMethod::lp;
            } else if (m == "fictitious") {
                s.solver.method = SolveMethod::fictitious;
                s.solver.tol = 1e-3;
            } else {
                fail("solver.method", "expected 'lp' or 'fictitious'");
            }
        }
        if (v.contains("tol")) {
            s.solver.tol = number(v["tol"], "solver.tol");
            if (!(s.solver.tol > 0.0)) fail("solver.tol", "must be positive");
        }
        if (v.contains("max_iters")) {
            s.solver.max_iters = static_cast<std::size_t>(positive_int(v["max_iters"], "solver.max_iters", 100000000));
        }
    }

    if (doc.contains("outputs")) {
        const Json& o = doc["outputs"];
        if (!o.is_array() || o.empty()) fail("outputs", "expected a nonempty array");
        s.outputs.clear();
        for (std::size_t i = 0; i < o.size(); ++i) {
            const Output out = parse_output(o[i], "outputs[" + std::to_string(i) + "]");
            if (!s.wants(out)) s.outputs.push_back(out);
        }
    }

    if (doc.contains("jung")) {
        const Json& j = doc["jung"];
        check_keys(j, "jung", {"grid_resolution", "max_rounds", "value_tol", "descent_steps"});
        if (j.contains("grid_resolution")) {
            s.jung.grid_resolution = positive_int(j["grid_resolution"], "jung.grid_resolution", 1000);
        }
        s.jung.refinement = parse_refinement(j, s.jung.refinement, "jung");
    }

    // Cross-field checks.
    const bool refine = std::holds_alternative<AutoRefineY>(s.y);
    if (refine && s.payoff != PayoffKind::squared_distance) {
        fail("Y", "auto_refine needs a squared_distance payoff");
    }
    if (refine && s.solver.method != SolveMethod::lp) {
        fail("Y", "auto_refine solves with the lp method");
    }
    if (s.wants(Output::circumradius) && s.payoff != PayoffKind::squared_distance) {
        fail("outputs", "circumradius needs a squared_distance payoff");
    }
    if (s.wants(Output::jung) && s.space().kind() == SpaceKind::finite) {
        fail("outputs", "jung needs a euclidean, sphere or hyperbolic space");
    }
    if (s.payoff == PayoffKind::custom) {
        const PointCloud y = guarded("Y", [&] { return initial_candidates(s); });
        build_payoff(s, y);
    }
    return s;
}

Scenario parse_scenario_text(const std::string& body) {
    Json doc;
    try {
        doc = Json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return parse_scenario(doc);
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path.string());
    std::ostringstream body;
    body << in.rdbuf();
    return parse_scenario_text(body.str());
}

std::vector<std::string> demo_names() {
    return {"popoviciu", "simplex(n)", "circle(N)", "sphere_gap", "jung_euclidean", "jung_spherical"};
}

Scenario demo_scenario(const std::string& name) {
    const auto [base, n] = split_demo(name);
    Json doc;
    if (base == "popoviciu") {
        if (n) throw InvalidArgument("demo popoviciu takes no parameter");
        doc = {{"name", "popoviciu"},
               {"space", {{"kind", "euclidean"}, {"dim", 1}}},
               {"X", {{"points", {{0.0}, {1.0}}}}},
               {"Y", {{"mode", "auto_refine"}, {"max_rounds", 100}, {"value_tol", 1e-13}}},
               {"outputs", {"solution", "circumradius", "certificate"}}};
    } else if (base == "simplex") {
        const int dim = n.value_or(2);
        if (dim < 1 || dim > 8) throw InvalidArgument("demo simplex(n) needs 1 <= n <= 8");
        doc = {{"name", "simplex(" + std::to_string(dim) + ")"},
               {"X", {{"generator", "simplex"}, {"n", dim}}},
               {"Y", {{"mode", "auto_refine"}, {"max_rounds", 200}, {"value_tol", 1e-13}}},
               {"outputs", {"solution", "circumradius", "certificate"}}};
    } else if (base == "circle" || base == "sphere_gap") {
        if (base == "sphere_gap" && n) throw InvalidArgument("demo sphere_gap takes no parameter");
        const int count = n.value_or(200);
        if (count < 2 || count > 2000) throw InvalidArgument("demo circle(N) needs 2 <= N <= 2000");
        doc = {{"name", base == "circle" ? "circle(" + std::to_string(count) + ")" : "sphere_gap"},
               {"X", {{"generator", "circle"}, {"N", count}, {"circumference", 2.0}}},
               {"Y", {{"mode", "same_as_x"}}},
               {"solver", {{"tol", 1e-9}}},
               {"outputs", {"solution", "circumradius", "certificate"}}};
    } else if (base == "jung_euclidean") {
        if (n && (*n < 1 || *n > 6)) throw InvalidArgument("demo jung_euclidean(n) needs 1 <= n <= 6");
        doc = {{"name", "jung_euclidean(" + std::to_string(n.value_or(3)) + ")"},
               {"X", {{"generator", "simplex"}, {"n", n.value_or(3)}}},
               {"Y", {{"mode", "auto_refine"}, {"max_rounds", 200}, {"value_tol", 1e-13}}},
               {"jung", {{"max_rounds", 200}, {"value_tol", 1e-12}}},
               {"outputs", {"solution", "circumradius", "jung"}}};
    } else if (base == "jung_spherical") {
        const int count = n.value_or(12);
        if (count < 2 || count > 400) throw InvalidArgument("demo jung_spherical(N) needs 2 <= N <= 400");
        doc = {{"name", "jung_spherical"},
               {"X", {{"generator", "cap"}, {"k", 1.0}, {"r", 0.5}, {"N", count}}},
               {"Y", {{"mode", "auto_refine"}, {"resolution", 64}, {"max_rounds", 100}, {"value_tol", 1e-12}}},
               {"jung", {{"max_rounds", 100}, {"value_tol", 1e-12}}},
               {"outputs", {"solution", "jung"}}};
    } else {
        throw InvalidArgument("unknown demo '" + name + "'");
    }
    return parse_scenario(doc);
}

PayoffMatrix scenario_payoff(const Scenario& s) {
    if (std::holds_alternative<AutoRefineY>(s.y)) {
        throw InvalidArgument("certify needs a fixed candidate set (explicit, same_as_x or grid)");
    }
    return build_payoff(s, initial_candidates(s));
}

ScenarioResult run_scenario(const Scenario& s) {
    ScenarioResult r;
    r.json["scenario"] = s.name;
    r.json["space"] = space_json(s.space());
    r.json["X"] = points_json(s.x);

    const bool solve = s.wants(Output::solution) || s.wants(Output::circumradius) ||
                       s.wants(Output::certificate);
    std::optional<double> certified_gap;
    bool refined = false;
    if (solve) {
        const PointCloud y0 = initial_candidates(s);
        if (const auto* a = std::get_if<AutoRefineY>(&s.y)) {
            RefinementResult rr = refine_candidates(s.x, y0, s.payoff, a->config);
            r.payoff = std::move(rr.payoff);
            r.solution = std::move(rr.solution);
            r.history = std::move(rr.history);
            refined = s.space().kind() != SpaceKind::finite;
            if (refined) certified_gap = rr.certified_gap;
        } else {
            r.payoff = build_payoff(s, y0);
            r.solution = s.solver.method == SolveMethod::lp
                             ? solve_lp(*r.payoff)
                             : solve_fictitious(*r.payoff, s.solver.max_iters, s.solver.tol);
            if (r.solution->gap > s.solver.tol) {
                std::ostringstream msg;
                msg << "fictitious play reached gap " << r.solution->gap << " after " << r.solution->iterations
                    << " iterations, above the target " << s.solver.tol;
                throw SolverError(msg.str());
            }
            r.history = {r.solution->value};
        }
        r.certificate = certify_saddle(*r.payoff, r.solution->mu, r.solution->nu, s.solver.tol);
        if (s.wants(Output::solution)) {
            r.json["solution"] = solution_json(*r.payoff, *r.solution, r.history, certified_gap);
        }
    }
    if (s.wants(Output::circumradius)) {
        r.radii = radii_report(*r.payoff, *r.solution, refined);
        r.json["circumradius"] = radii_json(*r.radii);
    }
    if (s.wants(Output::jung)) {
        r.jung = jung_check(s.x, s.jung);
        r.json["jung"] = jung_json(*r.jung);
        if (!solve) r.history = r.jung->history;
    }
    if (s.wants(Output::certificate)) r.json["certificate"] = certificate_json(*r.certificate);
    return r;
}

DiscreteMeasure load_measure(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path.string());
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": malformed JSON: " + e.what());
    }
    const std::string where = path.string();
    if (doc.is_object()) {
        check_keys(doc, where, {"weights"});
        doc = require(doc, "weights", where);
    }
    const auto w = numbers(doc, where);
    return guarded(where, [&] { return DiscreteMeasure(w); });
}

Json certificate_json(const SaddleCertificate& c) {
    Json j;
    j["pass"] = c.pass();
    j["value"] = c.value;
    j["column_min"] = c.column_min;
    j["row_max"] = c.row_max;
    j["barycenter_condition"] = c.barycenter_condition;
    j["anti_barycenter_condition"] = c.anti_barycenter_condition;
    j["barycenter_violation"] = c.barycenter_violation;
    j["anti_barycenter_violation"] = c.anti_barycenter_violation;
    j["worst_column"] = c.worst_column;
    j["worst_row"] = c.worst_row;
    j["tol"] = c.tol;
    return j;
}

std::string summarize(const Scenario& s, const ScenarioResult& r) {
    std::ostringstream os;
    os << std::setprecision(10);
    os << "scenario " << s.name << " on " << s.space().describe() << ", |X| = " << s.x.size() << "\n";
    if (r.solution) {
        os << "  value " << r.solution->value << " (" << to_string(r.solution->method) << ", |Y| = "
           << r.payoff->cols() << ", rounds " << r.history.size() << ", gap " << r.solution->gap << ")\n";
        os << "  support(mu) = " << support(r.solution->mu).size()
           << ", support(nu) = " << support(r.solution->nu).size() << "\n";
    }
    if (r.radii) {
        os << "  W2 circumradius^2 " << r.radii->wasserstein_sq << ", metric " << r.radii->metric_sq;
        if (r.radii->welzl_sq) os << ", exact " << *r.radii->welzl_sq;
        os << ", gap " << r.radii->gap << (r.radii->gap > 1e-6 ? " (strict)" : "") << "\n";
    }
    if (r.jung) {
        os << "  Jung: D " << r.jung->diameter << ", R " << r.jung->radius << ", m "
           << r.jung->support_size << ", S_inf " << r.jung->bound_infinity;
        if (r.jung->bound_support) os << ", S_m " << *r.jung->bound_support;
        os << ", pass_inf " << (r.jung->pass_infinity ? "yes" : "no") << ", pass_support "
           << to_string(r.jung->pass_support) << "\n";
        if (r.jung->angles) os << "  min cosine C " << r.jung->angles->min_cosine << "\n";
    }
    if (r.certificate && s.wants(Output::certificate)) {
        os << "  certificate " << (r.certificate->pass() ? "pass" : "fail") << " at tol "
           << r.certificate->tol << "\n";
    }
    return os.str();
}

void export_csv(const ScenarioResult& r, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());

    const PointCloud* x = r.payoff && r.payoff->x_cloud() ? &*r.payoff->x_cloud() : nullptr;
    const PointCloud* y = r.payoff && r.payoff->y_cloud() ? &*r.payoff->y_cloud() : nullptr;
    int width = 0;
    if (x) width = static_cast<int>(x->space().ambient_dim());

    {
        auto out = open_csv(dir / "measures.csv");
        out << "set,index";
        for (int a = 0; a < width; ++a) out << ",x" << a;
        out << ",mu_weight,nu_weight\n";
        auto rows = [&](const char* set, const PointCloud* c, std::size_t n, const DiscreteMeasure* mu,
                        const DiscreteMeasure* nu) {
            for (std::size_t i = 0; i < n; ++i) {
                out << set << ',' << i;
                for (int a = 0; a < width; ++a) out << ',' << (c ? fmt17((*c)[i][a]) : "");
                out << ',' << (mu ? fmt17((*mu)[i]) : "") << ',' << (nu ? fmt17((*nu)[i]) : "") << '\n';
            }
        };
        if (r.solution) {
            rows("X", x, r.payoff->rows(), &r.solution->mu, nullptr);
            rows("Y", y, r.payoff->cols(), nullptr, &r.solution->nu);
        }
    }
    {
        auto out = open_csv(dir / "certificate.csv");
        out << "kind,index,slack\n";
        if (r.certificate) {
            for (std::size_t i = 0; i < r.certificate->row_slack.size(); ++i) {
                out << "row," << i << ',' << fmt17(r.certificate->row_slack[i]) << '\n';
            }
            for (std::size_t j = 0; j < r.certificate->column_slack.size(); ++j) {
                out << "column," << j << ',' << fmt17(r.certificate->column_slack[j]) << '\n';
            }
        }
    }
    {
        auto out = open_csv(dir / "history.csv");
        out << "round,value\n";
        for (std::size_t k = 0; k < r.history.size(); ++k) out << k << ',' << fmt17(r.history[k]) << '\n';
    }
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace varmax
