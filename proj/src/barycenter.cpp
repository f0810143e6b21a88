#include "varmax/barycenter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "varmax/errors.hpp"

namespace varmax {

namespace {

constexpr double kGradientTol = 1e-9;

double frechet_objective(const ModelSpace& space, const PointCloud& cloud,
                         const DiscreteMeasure& mu, const Point& z) {
    double f = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (mu[i] == 0.0) continue;
        const double d = distance(space, cloud[i], z);
        f += mu[i] * d * d;
    }
    return f;
}

// Half the negative Riemannian gradient: sum_i mu_i log_z(x_i).
Eigen::VectorXd descent_direction(const ModelSpace& space, const PointCloud& cloud,
                                  const DiscreteMeasure& mu, const Point& z) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(z.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (mu[i] == 0.0) continue;
        g += mu[i] * log_map(space, z, cloud[i]);
    }
    return g;
}

}  // namespace

void RefinementConfig::validate() const {
    if (max_rounds < 1) throw InvalidArgument("refinement needs max_rounds >= 1");
    if (!(value_tol > 0.0)) throw InvalidArgument("refinement needs value_tol > 0");
    if (descent_steps < 1) throw InvalidArgument("refinement needs descent_steps >= 1");
}

std::vector<std::size_t> v_barycenter_set(const PayoffMatrix& v, const DiscreteMeasure& mu,
                                          double tol) {
    mu.require_size(v.rows(), "v_barycenter_set");
    const Eigen::VectorXd cols = v.entries().transpose() * mu.vector();
    const double best = cols.minCoeff();
    std::vector<std::size_t> out;
    for (Eigen::Index j = 0; j < cols.size(); ++j) {
        if (cols[j] <= best + tol) out.push_back(static_cast<std::size_t>(j));
    }
    return out;
}

DiscreteMeasure generalized_barycenter(const PayoffMatrix& v, const DiscreteMeasure& mu) {
    const auto set = v_barycenter_set(v, mu, kSupportEps);
    return DiscreteMeasure::uniform_on(v.cols(), set);
}

bool barycenter_is_unique(const PayoffMatrix& v, const DiscreteMeasure& mu) {
    const auto set = v_barycenter_set(v, mu, kSupportEps);
    if (set.size() == 1) return true;
    if (v.kind() == PayoffKind::custom || !v.y_cloud() || !v.x_cloud() ||
        v.y_cloud()->space().kind() == SpaceKind::finite) {
        return false;
    }
    const PointCloud& y = *v.y_cloud();
    const double radius = 4.0 * std::sqrt(kSupportEps) * std::max(1.0, diameter(*v.x_cloud()));
    for (std::size_t a = 0; a < set.size(); ++a) {
        for (std::size_t b = a + 1; b < set.size(); ++b) {
            if (distance(y.space(), y[set[a]], y[set[b]]) > 2.0 * radius) return false;
        }
    }
    return true;
}

std::vector<std::size_t> anti_barycenter_set(const PayoffMatrix& v, const DiscreteMeasure& nu,
                                             double tol) {
    nu.require_size(v.cols(), "anti_barycenter_set");
    const Eigen::VectorXd rows = v.entries() * nu.vector();
    const double best = rows.maxCoeff();
    std::vector<std::size_t> out;
    for (Eigen::Index i = 0; i < rows.size(); ++i) {
        if (rows[i] >= best - tol) out.push_back(static_cast<std::size_t>(i));
    }
    return out;
}

FrechetResult frechet_mean(const ModelSpace& space, const PointCloud& cloud,
                           const DiscreteMeasure& mu, const Point& init,
                           const RefinementConfig& config) {
    config.validate();
    mu.require_size(cloud.size(), "frechet_mean");
    if (space.kind() == SpaceKind::finite) {
        throw InvalidArgument("frechet_mean is not available on finite metric spaces");
    }
    if (!(cloud.space() == space)) throw InvalidArgument("frechet_mean: cloud lives in another space");
    validate_point(space, init);

    FrechetResult out;
    if (space.kind() == SpaceKind::euclidean) {
        Eigen::VectorXd m = Eigen::VectorXd::Zero(space.ambient_dim());
        for (std::size_t i = 0; i < cloud.size(); ++i) m += mu[i] * cloud[i].coords;
        out.point = Point(m);
        out.gradient_norm = descent_direction(space, cloud, mu, out.point).norm();
        out.objective = frechet_objective(space, cloud, mu, out.point);
        out.converged = true;
        return out;
    }

    if (space.kind() == SpaceKind::sphere) {
        const double limit = std::numbers::pi / (2.0 * std::sqrt(space.curvature()));
        for (std::size_t i : support(mu, 0.0)) {
            if (!(distance(space, init, cloud[i]) < limit)) {
                throw HypothesisError(
                    "frechet_mean: cloud is not inside the ball of radius pi/(2 sqrt k) around "
                    "the initial point");
            }
        }
    }

    Point z = init;
    double f = frechet_objective(space, cloud, mu, z);
    Eigen::VectorXd g = descent_direction(space, cloud, mu, z);
    double gnorm = tangent_norm(space, g);
    double step = 1.0;  // exp_z(step * g) is a gradient step of size step/2 on f
    int steps = 0;
    const double round_off = 8.0 * std::numeric_limits<double>::epsilon();
    while (gnorm > kGradientTol && steps < config.descent_steps) {
        ++steps;
        const Point candidate = exp_map(space, z, step * g);
        const double fc = frechet_objective(space, cloud, mu, candidate);
        const Eigen::VectorXd gc = descent_direction(space, cloud, mu, candidate);
        const double gc_norm = tangent_norm(space, gc);
        // Once objective differences are at round-off level, fall back to the
        // gradient norm as the descent test.
        const bool accept =
            fc < f || (fc - f <= round_off * std::max(1.0, f) && gc_norm < gnorm);
        if (accept) {
            z = candidate;
            f = fc;
            g = gc;
            gnorm = gc_norm;
        } else {
            step *= 0.5;
            if (step < 1e-12) break;
        }
    }
    out.point = z;
    out.gradient_norm = gnorm;
    out.objective = f;
    out.steps = steps;
    out.converged = gnorm <= kGradientTol;
    return out;
}

RefinementResult refine_candidates(const PointCloud& x, const PointCloud& y, PayoffKind kind,
                                   const RefinementConfig& config) {
    config.validate();
    if (kind != PayoffKind::squared_distance) {
        throw InvalidArgument("candidate refinement uses Frechet means and needs a squared-distance payoff");
    }
    PayoffMatrix payoff = assemble_payoff(x, y, kind);
    SaddleSolution solution = solve_lp(payoff);
    RefinementResult out{.payoff = payoff, .solution = solution, .history = {solution.value}};
    const ModelSpace& space = x.space();
    if (space.kind() == SpaceKind::finite) {
        out.converged = true;
        return out;
    }

    for (int round = 0;; ++round) {
        // The Frechet mean z of mu* is the best response over the whole space,
        // so value - V(mu*, z) bounds how far the restricted game is from the
        // continuous one.
        const auto best = v_barycenter_set(out.payoff, out.solution.mu, 0.0);
        const Point& init = (*out.payoff.y_cloud())[best.front()];
        const FrechetResult mean = frechet_mean(space, x, out.solution.mu, init, config);
        out.certified_gap = std::max(0.0, out.solution.value - mean.objective);
        if (out.certified_gap <= config.value_tol) {
            out.converged = true;
            break;
        }
        if (round == config.max_rounds) break;

        const PointCloud& cands = *out.payoff.y_cloud();
        const double scale = std::max(1.0, space.radius());
        const bool repeated = std::any_of(cands.points().begin(), cands.points().end(),
                                          [&](const Point& c) {
                                              return distance(space, c, mean.point) <= 1e-12 * scale;
                                          });
        if (repeated) break;

        out.payoff.append_column(mean.point, "refined-" + std::to_string(round + 1));
        ++out.appended;
        out.solution = solve_lp(out.payoff);
        out.history.push_back(out.solution.value);
    }
    return out;
}

}  // namespace varmax
