#include "varmax/circum.hpp"

#include <algorithm>
#include <cmath>
#include <list>
#include <numeric>
#include <random>

#include "varmax/barycenter.hpp"
#include "varmax/errors.hpp"

namespace varmax {

namespace {

constexpr double kAttainTol = 1e-9;
constexpr int kMaxWelzlDim = 6;
constexpr std::uint32_t kWelzlSeed = 0x5eed1u;

std::vector<std::size_t> attaining(const std::vector<double>& dist, double radius) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (std::abs(dist[i] - radius) <= kAttainTol) out.push_back(i);
    }
    return out;
}

struct WelzlBall {
    Eigen::VectorXd center;
    double radius_sq = -1.0;  // negative: empty ball
    std::vector<std::size_t> support;
};

class Welzl {
public:
    Welzl(const std::vector<Eigen::VectorXd>& pts, int dim) : pts_(pts), dim_(dim) {}

    WelzlBall run(std::list<std::size_t>& order) {
        std::vector<std::size_t> boundary;
        return move_to_front(order, order.end(), boundary);
    }

private:
    bool contains(const WelzlBall& b, const Eigen::VectorXd& p) const {
        if (b.radius_sq < 0.0) return false;
        const double r = std::sqrt(b.radius_sq);
        const double d = (p - b.center).norm();
        return d <= r * (1.0 + 1e-12) + 1e-15;
    }

    // Smallest ball with every boundary point on its sphere: the circumcenter
    // within their affine hull. Rank-deficient systems take the minimum-norm
    // solution from a complete orthogonal decomposition.
    WelzlBall ball_through(const std::vector<std::size_t>& boundary) const {
        WelzlBall b;
        b.support = boundary;
        if (boundary.empty()) return b;
        const Eigen::VectorXd& p0 = pts_[boundary[0]];
        b.center = p0;
        b.radius_sq = 0.0;
        if (boundary.size() == 1) return b;
        const auto s = static_cast<Eigen::Index>(boundary.size() - 1);
        Eigen::MatrixXd q(p0.size(), s);
        for (Eigen::Index k = 0; k < s; ++k) {
            q.col(k) = pts_[boundary[static_cast<std::size_t>(k + 1)]] - p0;
        }
        const Eigen::MatrixXd gram = q.transpose() * q;
        const Eigen::VectorXd rhs = 0.5 * gram.diagonal();
        const Eigen::VectorXd alpha = gram.completeOrthogonalDecomposition().solve(rhs);
        b.center = p0 + q * alpha;
        for (std::size_t k : boundary) {
            b.radius_sq = std::max(b.radius_sq, (pts_[k] - b.center).squaredNorm());
        }
        return b;
    }

    WelzlBall move_to_front(std::list<std::size_t>& order, std::list<std::size_t>::iterator end,
                            std::vector<std::size_t>& boundary) {
        WelzlBall ball = ball_through(boundary);
        if (static_cast<int>(boundary.size()) == dim_ + 1) return ball;
        for (auto it = order.begin(); it != end;) {
            auto current = it++;
            if (!contains(ball, pts_[*current])) {
                boundary.push_back(*current);
                ball = move_to_front(order, current, boundary);
                boundary.pop_back();
                order.splice(order.begin(), order, current);
            }
        }
        return ball;
    }

    const std::vector<Eigen::VectorXd>& pts_;
    int dim_;
};

}  // namespace

CircumballResult discrete_circumball(const PointCloud& x, const PointCloud& y) {
    if (!(x.space() == y.space())) throw InvalidArgument("X and Y live in different spaces");
    std::size_t best = 0;
    double best_radius = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < y.size(); ++j) {
        double worst = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            worst = std::max(worst, distance(x.space(), x[i], y[j]));
            if (worst >= best_radius) break;
        }
        if (worst < best_radius) {
            best_radius = worst;
            best = j;
        }
    }
    std::vector<double> dist(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) dist[i] = distance(x.space(), x[i], y[best]);
    CircumballResult r{.center = y[best], .radius = best_radius,
                       .radius_sq = best_radius * best_radius};
    r.attaining_indices = attaining(dist, best_radius);
    return r;
}

CircumballResult welzl_meb(const PointCloud& points) {
    const ModelSpace& space = points.space();
    if (space.kind() != SpaceKind::euclidean) throw InvalidArgument("welzl_meb needs a euclidean cloud");
    if (space.dim() > kMaxWelzlDim) throw InvalidArgument("welzl_meb supports dimension <= 6");

    std::vector<Eigen::VectorXd> pts;
    for (const auto& p : points.points()) pts.push_back(p.coords);
    std::vector<std::size_t> perm(pts.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::mt19937 rng(kWelzlSeed);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::list<std::size_t> order(perm.begin(), perm.end());

    Welzl solver(pts, space.dim());
    const WelzlBall ball = solver.run(order);

    std::vector<double> dist(pts.size());
    double radius = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        dist[i] = (pts[i] - ball.center).norm();
        radius = std::max(radius, dist[i]);
    }
    CircumballResult r{.center = Point(ball.center), .radius = radius, .radius_sq = radius * radius};
    r.attaining_indices = attaining(dist, radius);
    r.support_indices = ball.support;
    std::sort(r.support_indices.begin(), r.support_indices.end());
    return r;
}

CircumballResult wasserstein_circumradius(const PayoffMatrix& v, const SaddleSolution& solution) {
    if (v.kind() != PayoffKind::squared_distance) {
        throw InvalidArgument("wasserstein_circumradius needs a squared-distance payoff");
    }
    solution.nu.require_size(v.cols(), "wasserstein_circumradius");
    const Eigen::VectorXd rows = v.entries() * solution.nu.vector();
    const double value = solution.value;
    if (rows.maxCoeff() > value + 1e-8) {
        throw SolverError("Wasserstein circumcenter does not enclose the Dirac embedding of X");
    }
    CircumballResult r{.center = solution.nu, .radius = std::sqrt(std::max(0.0, value)),
                       .radius_sq = value};
    const double top = rows.maxCoeff();
    for (Eigen::Index i = 0; i < rows.size(); ++i) {
        if (rows[i] >= top - kAttainTol) r.attaining_indices.push_back(static_cast<std::size_t>(i));
    }
    return r;
}

CircumballResult wasserstein_circumradius(const PayoffMatrix& v) {
    if (v.kind() != PayoffKind::squared_distance) {
        throw InvalidArgument("wasserstein_circumradius needs a squared-distance payoff");
    }
    return wasserstein_circumradius(v, solve_lp(v));
}

RadiiReport radii_report(const PayoffMatrix& v, const SaddleSolution& solution, bool refined,
                         double tol) {
    if (v.kind() != PayoffKind::squared_distance || !v.x_cloud() || !v.y_cloud()) {
        throw InvalidArgument("radii_report needs a squared-distance payoff over point clouds");
    }
    const PointCloud& x = *v.x_cloud();
    const PointCloud& y = *v.y_cloud();
    RadiiReport rep;
    rep.tol = tol;
    rep.refined = refined;
    rep.wasserstein_sq = solution.value;
    rep.metric_sq = discrete_circumball(x, y).radius_sq;
    double reference = rep.metric_sq;
    if (x.space().kind() == SpaceKind::euclidean && x.space().dim() <= kMaxWelzlDim) {
        rep.welzl_sq = welzl_meb(x).radius_sq;
        reference = *rep.welzl_sq;
    }
    rep.gap = reference - rep.wasserstein_sq;
    rep.unique_barycenter_regime = barycenter_is_unique(v, solution.mu);
    rep.pass_one_sided = rep.wasserstein_sq <= rep.metric_sq + 1e-8;
    if (rep.unique_barycenter_regime && refined) {
        rep.pass_equality = std::abs(rep.wasserstein_sq - reference) <= tol;
    }
    return rep;
}

}  // namespace varmax
