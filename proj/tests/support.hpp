#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "varmax/spaces.hpp"

namespace testing_support {

using namespace varmax;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline Eigen::MatrixXd random_matrix(std::mt19937_64& g, int rows, int cols) {
    Eigen::MatrixXd a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a(i, j) = uniform(g, 0.0, 1.0);
    return a;
}

inline PointCloud random_euclidean(std::mt19937_64& g, int dim, int count, double lo = 0.0,
                                   double hi = 1.0) {
    std::vector<Point> pts;
    for (int i = 0; i < count; ++i) {
        Eigen::VectorXd p(dim);
        for (int a = 0; a < dim; ++a) p[a] = uniform(g, lo, hi);
        pts.emplace_back(p);
    }
    return PointCloud(ModelSpace::euclidean(dim), std::move(pts));
}

/// Random point at geodesic distance <= max_dist from `center`.
inline Point random_near(std::mt19937_64& g, const ModelSpace& space, const Point& center,
                         double max_dist) {
    const auto basis = tangent_basis(space, center);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(center.size());
    for (const auto& b : basis) v += std::normal_distribution<double>(0.0, 1.0)(g) * b;
    const double norm = tangent_norm(space, v);
    const double r = max_dist * std::cbrt(uniform(g, 0.0, 1.0));
    if (space.kind() == SpaceKind::euclidean) return Point(center.coords + v * (r / norm));
    return exp_map(space, center, v * (r / norm));
}

/// Equilateral triangle with side 1: (0,0), (1,0), (1/2, sqrt3/2).
inline PointCloud triangle() {
    return PointCloud(ModelSpace::euclidean(2),
                      {Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.5, std::sqrt(3.0) / 2.0}});
}

/// Regular tetrahedron with side 1.
inline PointCloud tetrahedron() {
    const double s = 1.0 / std::sqrt(8.0);
    return PointCloud(ModelSpace::euclidean(3), {Point{s, s, s}, Point{s, -s, -s}, Point{-s, s, -s},
                                                 Point{-s, -s, s}});
}

/// Circle of circumference 2 (curvature pi^2) sampled at n equally spaced points.
inline PointCloud circle(int n) {
    const ModelSpace s = ModelSpace::sphere(std::acos(-1.0) * std::acos(-1.0), 1);
    return sample_grid(s, WholeSphere{}, n);
}

/// Point on the sphere of curvature k given polar angle theta (from the north
/// pole) and longitude phi.
inline Point polar(double k, double theta, double phi) {
    const double r = 1.0 / std::sqrt(k);
    return Point{r * std::sin(theta) * std::cos(phi), r * std::sin(theta) * std::sin(phi),
                 r * std::cos(theta)};
}

/// Central difference of t -> d^2(x(t), p) along the unit-speed geodesic from
/// x0 toward z, minus the analytic derivative.
inline double first_variation_error(const ModelSpace& space, const Point& x0, const Point& z,
                                    const Point& p, double h) {
    const Eigen::VectorXd dir = log_map(space, x0, z);
    const Eigen::VectorXd unit = dir / tangent_norm(space, dir);
    auto f = [&](double t) {
        const Point xt = space.kind() == SpaceKind::euclidean ? Point(x0.coords + t * unit)
                                                               : exp_map(space, x0, t * unit);
        const double d = distance(space, xt, p);
        return d * d;
    };
    const double fd = (f(h) - f(-h)) / (2.0 * h);
    return std::abs(fd - squared_distance_derivative(space, x0, z, p));
}

/// Random (x0, z, p) inside a ball of radius `spread` around the base point.
struct VariationInstance {
    Point x0, z, p;
};

inline VariationInstance random_variation(std::mt19937_64& g, const ModelSpace& space, double spread) {
    const Point o = base_point(space);
    while (true) {
        VariationInstance v{random_near(g, space, o, spread), random_near(g, space, o, spread),
                            random_near(g, space, o, spread)};
        if (distance(space, v.x0, v.z) > 1e-2 && distance(space, v.x0, v.p) > 1e-2) return v;
    }
}

/// Brute-force minimax circumradius over a lattice: min over grid nodes of
/// the max distance to X, and the lattice spacing.
struct GridRadius {
    double radius;
    double spacing;
};

inline GridRadius grid_circumradius(const PointCloud& x, int nodes) {
    const int dim = x.space().dim();
    Eigen::VectorXd lo = x[0].coords, hi = x[0].coords;
    for (const auto& p : x.points()) {
        lo = lo.cwiseMin(p.coords);
        hi = hi.cwiseMax(p.coords);
    }
    double spacing = 0.0;
    for (int a = 0; a < dim; ++a) spacing = std::max(spacing, (hi[a] - lo[a]) / (nodes - 1));
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> idx(static_cast<std::size_t>(dim), 0);
    while (true) {
        Eigen::VectorXd y(dim);
        for (int a = 0; a < dim; ++a) y[a] = lo[a] + (hi[a] - lo[a]) * idx[static_cast<std::size_t>(a)] / (nodes - 1);
        double worst = 0.0;
        for (const auto& p : x.points()) worst = std::max(worst, (p.coords - y).norm());
        best = std::min(best, worst);
        int a = dim - 1;
        while (a >= 0 && ++idx[static_cast<std::size_t>(a)] == nodes) idx[static_cast<std::size_t>(a--)] = 0;
        if (a < 0) break;
    }
    return {best, spacing};
}

}  // namespace testing_support
