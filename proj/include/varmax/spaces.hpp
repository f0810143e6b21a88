#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace varmax {

enum class SpaceKind { euclidean, sphere, hyperbolic, finite };

std::string to_string(SpaceKind kind);

/// A model metric space: Euclidean space, the sphere of curvature k > 0
/// (radius 1/sqrt(k), embedded in R^{n+1}), hyperbolic space of curvature
/// k < 0 (hyperboloid model in R^{1,n}), or an explicit finite metric.
class ModelSpace {
public:
    static ModelSpace euclidean(int dim);
    static ModelSpace sphere(double curvature, int dim);
    static ModelSpace hyperbolic(double curvature, int dim);
    /// Validates symmetry, zero diagonal, nonnegativity and the triangle
    /// inequality (tolerance 1e-9 relative to the largest entry).
    static ModelSpace finite(Eigen::MatrixXd distances);

    SpaceKind kind() const { return kind_; }
    double curvature() const { return curvature_; }
    /// Intrinsic dimension; 0 for finite spaces.
    int dim() const { return dim_; }
    /// Number of stored coordinates per point.
    int ambient_dim() const;
    /// 1/sqrt(|k|) for curved spaces, 0 otherwise.
    double radius() const;
    /// Number of points of a finite space, 0 otherwise.
    std::size_t finite_size() const;
    const Eigen::MatrixXd& distance_table() const;

    bool is_curved() const {
        return kind_ == SpaceKind::sphere || kind_ == SpaceKind::hyperbolic;
    }

    std::string describe() const;

    friend bool operator==(const ModelSpace& a, const ModelSpace& b);

private:
    ModelSpace(SpaceKind kind, double curvature, int dim)
        : kind_(kind), curvature_(curvature), dim_(dim) {}

    SpaceKind kind_;
    double curvature_;
    int dim_;
    std::shared_ptr<const Eigen::MatrixXd> table_;
};

/// Ambient coordinates of a point. Euclidean: Cartesian; sphere: vector of
/// norm 1/sqrt(k); hyperbolic: (time, space...) with Minkowski form -1/|k|;
/// finite: a single index.
struct Point {
    Eigen::VectorXd coords;

    Point() = default;
    explicit Point(Eigen::VectorXd c) : coords(std::move(c)) {}
    Point(std::initializer_list<double> c);

    Eigen::Index size() const { return coords.size(); }
    double operator[](Eigen::Index i) const { return coords[i]; }
};

/// Throws InvalidArgument when `p` is not a valid point of `space`.
void validate_point(const ModelSpace& space, const Point& p);

/// Projects raw ambient coordinates onto the space (sphere: rescale to radius;
/// hyperboloid: recompute the time coordinate) and validates the result.
Point make_point(const ModelSpace& space, std::vector<double> coords);
Point make_point(const ModelSpace& space, const Eigen::VectorXd& coords);

/// Point with index i of a finite space.
Point finite_point(const ModelSpace& space, std::size_t index);

/// Ordered, nonempty list of points of one space. Indices are identities.
class PointCloud {
public:
    PointCloud(ModelSpace space, std::vector<Point> points,
               std::vector<std::string> labels = {});

    const ModelSpace& space() const { return space_; }
    const std::vector<Point>& points() const { return points_; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t size() const { return points_.size(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }

    /// Appends a validated point (used by candidate refinement).
    void push_back(Point p, std::string label = {});

    /// Cloud of every index of a finite space.
    static PointCloud all_of(const ModelSpace& finite_space);

private:
    ModelSpace space_;
    std::vector<Point> points_;
    std::vector<std::string> labels_;
};

// -- metric operations ------------------------------------------------------

double distance(const ModelSpace& space, const Point& p, const Point& q);

/// Tangent-space inner product at a point (Minkowski form on the hyperboloid).
double tangent_dot(const ModelSpace& space, const Eigen::VectorXd& u,
                   const Eigen::VectorXd& v);
double tangent_norm(const ModelSpace& space, const Eigen::VectorXd& u);

/// Riemannian logarithm: tangent vector at `base` pointing to `target` with
/// length distance(base, target). Rejects antipodal sphere pairs.
Eigen::VectorXd log_map(const ModelSpace& space, const Point& base,
                        const Point& target);

/// Riemannian exponential of an ambient tangent vector at `base`.
Point exp_map(const ModelSpace& space, const Point& base,
              const Eigen::VectorXd& tangent);

/// Point at fraction s in [0,1] along the minimizing geodesic from p to q.
Point geodesic_point(const ModelSpace& space, const Point& p, const Point& q,
                     double s);

/// Cosine of the angle at `vertex` between the geodesics to p and q.
double angle_cosine(const ModelSpace& space, const Point& vertex,
                    const Point& p, const Point& q);

/// Angle in [0, pi] at `vertex` between the geodesics to p and q.
double angle(const ModelSpace& space, const Point& vertex, const Point& p,
             const Point& q);

/// Third side of a model-space triangle of curvature k with sides l1, l2
/// enclosing the angle alpha. Evaluated in haversine form, which is exact
/// in the small-side regime where the plain law of cosines cancels.
double model_side(double k, double l1, double l2, double alpha);

/// d/dt d^2(x(t), p) at t = 0 along the unit-speed geodesic from x0 toward
/// direction_target, i.e. -2 d(x0,p) cos(alpha).
double squared_distance_derivative(const ModelSpace& space, const Point& x0,
                                   const Point& direction_target,
                                   const Point& p);

// -- discretization ---------------------------------------------------------

/// Axis-aligned box in Euclidean space.
struct Box {
    std::vector<double> lower;
    std::vector<double> upper;
};

/// The whole sphere.
struct WholeSphere {};

/// Geodesic ball: a spherical cap or a hyperbolic metric ball. A missing
/// center means the north pole (sphere) or the hyperboloid origin.
struct Ball {
    std::optional<Point> center;
    double radius = 0.0;
};

using Region = std::variant<Box, WholeSphere, Ball>;

/// Canonical base point: north pole (0,..,0,r) on the sphere, (r,0,..,0) on
/// the hyperboloid, the origin in Euclidean space.
Point base_point(const ModelSpace& space);

/// Orthonormal basis (ambient coordinates) of the tangent space at `at`.
std::vector<Eigen::VectorXd> tangent_basis(const ModelSpace& space,
                                           const Point& at);

/// Deterministic candidate grid over a region.
/// euclidean: uniform lattice with `resolution` nodes per axis;
/// circle: equally spaced angles; 2-sphere: Fibonacci lattice of
/// `resolution` points spread over the cap; hyperbolic: `resolution` rings
/// of a geodesic polar lattice around the center.
PointCloud sample_grid(const ModelSpace& space, const Region& region,
                       int resolution);

double diameter(const PointCloud& cloud);

}  // namespace varmax
