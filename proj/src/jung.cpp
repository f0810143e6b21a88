#include "varmax/jung.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "varmax/errors.hpp"
#include "varmax/minimax.hpp"

namespace varmax {

namespace {

constexpr double kJungTol = 1e-9;
constexpr std::size_t kMaxEuclideanGrid = 4096;

double factor(JungOrder n) {
    if (n.is_infinite()) return 1.0 / std::numbers::sqrt2;
    const double v = n.value();
    return std::sqrt((v + 1.0) / (2.0 * v));
}

// Ambient mean projected back onto the space; a point of the convex hull
// region used to center candidate grids and small-ball checks.
Point projected_mean(const PointCloud& x) {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(x.space().ambient_dim());
    for (const auto& p : x.points()) m += p.coords;
    m /= static_cast<double>(x.size());
    if (x.space().kind() == SpaceKind::sphere && m.norm() < 1e-12 * x.space().radius()) {
        throw HypothesisError("cloud is not contained in an open hemisphere");
    }
    return x.space().kind() == SpaceKind::euclidean ? Point(m) : make_point(x.space(), m);
}

double max_distance(const PointCloud& x, const Point& from) {
    double r = 0.0;
    for (const auto& p : x.points()) r = std::max(r, distance(x.space(), from, p));
    return r;
}

// Newton iteration for the point equidistant from the support points,
// moving only within the span of the log vectors (the affine hull in
// Euclidean space, where one step is exact). Returns nullopt if it wanders
// more than `max_shift` from the start.
std::optional<Point> equidistant_point(const ModelSpace& space, const PointCloud& pts,
                                       const Point& start, double max_shift) {
    if (pts.size() < 2) return std::nullopt;
    Point y = start;
    const auto s = static_cast<Eigen::Index>(pts.size() - 1);
    for (int iter = 0; iter < 30; ++iter) {
        const Eigen::VectorXd l0 = log_map(space, y, pts[0]);
        Eigen::MatrixXd q(l0.size(), s);
        Eigen::VectorXd f(s);
        const double d0 = tangent_dot(space, l0, l0);
        for (Eigen::Index k = 0; k < s; ++k) {
            const Eigen::VectorXd lk = log_map(space, y, pts[static_cast<std::size_t>(k + 1)]);
            q.col(k) = lk - l0;
            f[k] = tangent_dot(space, lk, lk) - d0;
        }
        Eigen::MatrixXd gram(s, s);
        for (Eigen::Index a = 0; a < s; ++a) {
            for (Eigen::Index b = 0; b < s; ++b) gram(a, b) = tangent_dot(space, q.col(a), q.col(b));
        }
        const Eigen::VectorXd alpha = gram.completeOrthogonalDecomposition().solve(0.5 * f);
        const Eigen::VectorXd step = q * alpha;
        y = space.kind() == SpaceKind::euclidean ? Point(y.coords + step) : exp_map(space, y, step);
        if (!(distance(space, y, start) <= max_shift)) return std::nullopt;
        if (tangent_norm(space, step) <= 1e-15 * std::max(1.0, std::sqrt(d0))) break;
    }
    return y;
}

// Minimal-norm correction of `prior` to the weights whose log vectors at y
// balance: sum w_i log_y(x_i) = 0, sum w_i = 1. Returns nullopt if the
// correction is not small or leaves the simplex.
std::optional<std::vector<double>> balanced_weights(const ModelSpace& space, const PointCloud& pts,
                                                    const Point& y, const std::vector<double>& prior,
                                                    double radius) {
    const auto m = static_cast<Eigen::Index>(pts.size());
    const Eigen::Index dim = y.size();
    Eigen::MatrixXd a(dim + 1, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        a.col(i).head(dim) = log_map(space, y, pts[static_cast<std::size_t>(i)]) / radius;
        a(dim, i) = 1.0;
    }
    Eigen::VectorXd b = Eigen::VectorXd::Zero(dim + 1);
    b[dim] = 1.0;
    const Eigen::VectorXd w0 = Eigen::Map<const Eigen::VectorXd>(prior.data(), m);
    const Eigen::VectorXd w = w0 + a.completeOrthogonalDecomposition().solve(b - a * w0);
    if (!((w - w0).cwiseAbs().maxCoeff() <= 1e-4) || (a * w - b).norm() > 1e-12 || w.minCoeff() < 0.0) {
        return std::nullopt;
    }
    return std::vector<double>(w.data(), w.data() + m);
}

}  // namespace

JungOrder JungOrder::finite(int n) {
    if (n < 1) throw InvalidArgument("Jung order n must be >= 1");
    return JungOrder(n);
}

int JungOrder::value() const {
    if (!n_) throw InvalidArgument("Jung order is infinite");
    return *n_;
}

std::string JungOrder::to_string() const { return n_ ? std::to_string(*n_) : "inf"; }

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::not_applicable: return "not_applicable";
    }
    return "unknown";
}

double jung_bound(double radius, JungOrder n, double k) {
    if (!std::isfinite(radius) || radius < 0.0 || !std::isfinite(k)) {
        throw InvalidArgument("jung_bound: need finite R >= 0 and finite k");
    }
    const double f = factor(n);
    if (k == 0.0) return 2.0 * radius * f;
    const double s = std::sqrt(std::abs(k));
    if (k < 0.0) return 2.0 * std::asinh(f * std::sinh(s * radius)) / s;
    if (radius > std::numbers::pi / (2.0 * s) * (1.0 + 1e-12)) {
        throw HypothesisError("jung_bound: R must not exceed pi / (2 sqrt k)");
    }
    return 2.0 * std::asin(std::min(1.0, f * std::sin(s * radius))) / s;
}

IdentityCheck jung_identity_check(double radius, JungOrder n, double k) {
    const double alpha =
        n.is_infinite() ? std::numbers::pi / 2.0 : std::acos(-1.0 / static_cast<double>(n.value()));
    IdentityCheck c;
    c.rhs = jung_bound(radius, n, k);
    c.lhs = model_side(k, radius, radius, alpha);
    const double scale = std::max(std::abs(c.lhs), std::abs(c.rhs));
    c.relative_error = scale == 0.0 ? 0.0 : std::abs(c.lhs - c.rhs) / scale;
    return c;
}

AngleCertificate angle_certificate(const ModelSpace& space, const Point& y,
                                   const PointCloud& support_points, const DiscreteMeasure& lambda,
                                   std::size_t apex_index) {
    lambda.require_size(support_points.size(), "angle_certificate");
    if (apex_index >= support_points.size()) throw InvalidArgument("apex index out of range");
    if (space.kind() == SpaceKind::sphere) {
        const double limit = std::numbers::pi / (2.0 * std::sqrt(space.curvature()));
        for (const auto& p : support_points.points()) {
            if (!(distance(space, y, p) < limit)) {
                throw HypothesisError("angle_certificate: support point outside the small ball around y");
            }
        }
    }
    AngleCertificate cert;
    cert.circumcenter = y;
    cert.apex = apex_index;
    const Point& apex = support_points[apex_index];
    cert.min_cosine = 1.0;
    for (std::size_t i = 0; i < support_points.size(); ++i) {
        const double c = i == apex_index ? 1.0 : angle_cosine(space, y, apex, support_points[i]);
        cert.cosines.push_back(c);
        cert.weighted_sum += lambda[i] * c;
        cert.min_cosine = std::min(cert.min_cosine, c);
    }
    if (cert.min_cosine < 0.0) {
        cert.n_bound = static_cast<int>(std::floor(-1.0 / cert.min_cosine + 1e-9));
    }
    return cert;
}

PointCloud jung_candidates(const PointCloud& x, int grid_resolution) {
    const ModelSpace& space = x.space();
    if (grid_resolution < 1) throw InvalidArgument("grid resolution must be positive");
    std::vector<Point> pts = x.points();
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
            int res = grid_resolution;
            while (res > 1 && std::pow(static_cast<double>(res), space.dim()) > kMaxEuclideanGrid) --res;
            const PointCloud grid = sample_grid(space, box, res);
            pts.insert(pts.end(), grid.points().begin(), grid.points().end());
            break;
        }
        case SpaceKind::sphere:
        case SpaceKind::hyperbolic: {
            const Point center = projected_mean(x);
            const double radius = max_distance(x, center);
            const int count = space.kind() == SpaceKind::sphere
                                  ? (space.dim() == 1 ? 4 * grid_resolution + 1
                                                      : 8 * grid_resolution * grid_resolution)
                                  : grid_resolution;
            const PointCloud grid = sample_grid(space, Ball{center, radius}, count);
            pts.insert(pts.end(), grid.points().begin(), grid.points().end());
            break;
        }
        case SpaceKind::finite:
            throw InvalidArgument("Jung certification needs a geodesic space");
    }
    return PointCloud(space, std::move(pts));
}

JungReport jung_check(const PointCloud& x, const JungOptions& options) {
    const ModelSpace& space = x.space();
    if (space.kind() == SpaceKind::finite) {
        throw InvalidArgument("Jung certification needs a geodesic space");
    }
    if (space.kind() == SpaceKind::sphere) {
        const double limit = std::numbers::pi / (2.0 * std::sqrt(space.curvature()));
        if (!(max_distance(x, projected_mean(x)) < limit)) {
            throw HypothesisError(
                "Jung certification on the sphere needs X inside a ball of radius < pi/(2 sqrt k)");
        }
    }

    const PointCloud candidates = jung_candidates(x, options.grid_resolution);
    const RefinementResult refined =
        refine_candidates(x, candidates, PayoffKind::squared_distance, options.refinement);
    const SaddleSolution& sol = refined.solution;

    JungReport rep;
    rep.curvature = space.curvature();
    rep.history = refined.history;
    rep.refinement_converged = refined.converged;
    rep.radius = std::sqrt(std::max(0.0, sol.value));
    rep.diameter = diameter(x);
    rep.support_indices = support(sol.mu);
    rep.support_size = rep.support_indices.size();
    for (std::size_t i : rep.support_indices) rep.support_weights.push_back(sol.mu[i]);
    rep.bound_infinity = jung_bound(rep.radius, JungOrder::infinity(), rep.curvature);
    rep.pass_infinity = rep.diameter >= rep.bound_infinity - kJungTol;
    rep.unique_barycenter = barycenter_is_unique(refined.payoff, sol.mu);

    if (rep.support_size >= 2) {
        rep.bound_support = jung_bound(
            rep.radius, JungOrder::finite(static_cast<int>(rep.support_size) - 1), rep.curvature);
        if (rep.unique_barycenter) {
            rep.pass_support =
                rep.diameter >= *rep.bound_support - kJungTol ? Verdict::pass : Verdict::fail;
        }

        const auto best = v_barycenter_set(refined.payoff, sol.mu, 0.0);
        const Point& init = (*refined.payoff.y_cloud())[best.front()];
        const FrechetResult center = frechet_mean(space, x, sol.mu, init, options.refinement);

        std::vector<Point> spt;
        for (std::size_t i : rep.support_indices) spt.push_back(x[i]);
        const PointCloud support_cloud(space, std::move(spt));
        const Point y = equidistant_point(space, support_cloud, center.point, 1e-3 * std::max(rep.radius, 1e-12))
                            .value_or(center.point);
        if (auto w = balanced_weights(space, support_cloud, y, rep.support_weights, rep.radius)) {
            rep.support_weights = std::move(*w);
        }
        const DiscreteMeasure lambda(rep.support_weights);
        const auto heaviest = static_cast<std::size_t>(
            std::max_element(rep.support_weights.begin(), rep.support_weights.end()) -
            rep.support_weights.begin());
        rep.angles = angle_certificate(space, y, support_cloud, lambda, heaviest);
    }
    return rep;
}

}  // namespace varmax
