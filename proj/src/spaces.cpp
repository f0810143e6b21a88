#include "varmax/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "varmax/errors.hpp"

namespace varmax {

namespace {

constexpr double kPointTol = 1e-9;
constexpr double kCoincideTol = 1e-12;
constexpr double kAntipodalTol = 1e-9;

double minkowski(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    return -u[0] * v[0] + u.tail(u.size() - 1).dot(v.tail(v.size() - 1));
}

void require_geometric(const ModelSpace& space, const char* what) {
    if (space.kind() == SpaceKind::finite) {
        throw InvalidArgument(std::string(what) +
                              ": not available on finite metric spaces");
    }
}

void require_not_antipodal(const ModelSpace& space, const Point& p,
                           const Point& q) {
    if (space.kind() != SpaceKind::sphere) return;
    if ((p.coords + q.coords).norm() <= kAntipodalTol * space.radius()) {
        throw HypothesisError("antipodal points: minimizing geodesic is not unique");
    }
}

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

std::string to_string(SpaceKind kind) {
    switch (kind) {
        case SpaceKind::euclidean: return "euclidean";
        case SpaceKind::sphere: return "sphere";
        case SpaceKind::hyperbolic: return "hyperbolic";
        case SpaceKind::finite: return "finite";
    }
    return "unknown";
}

// -- ModelSpace --------------------------------------------------------------

ModelSpace ModelSpace::euclidean(int dim) {
    if (dim < 1) throw InvalidArgument("euclidean space needs dim >= 1");
    return ModelSpace(SpaceKind::euclidean, 0.0, dim);
}

ModelSpace ModelSpace::sphere(double curvature, int dim) {
    if (!(curvature > 0.0) || !std::isfinite(curvature)) {
        throw InvalidArgument("sphere requires curvature k > 0");
    }
    if (dim < 1) throw InvalidArgument("sphere needs dim >= 1");
    return ModelSpace(SpaceKind::sphere, curvature, dim);
}

ModelSpace ModelSpace::hyperbolic(double curvature, int dim) {
    if (!(curvature < 0.0) || !std::isfinite(curvature)) {
        throw InvalidArgument("hyperbolic space requires curvature k < 0");
    }
    if (dim < 1) throw InvalidArgument("hyperbolic space needs dim >= 1");
    return ModelSpace(SpaceKind::hyperbolic, curvature, dim);
}

ModelSpace ModelSpace::finite(Eigen::MatrixXd d) {
    const auto n = d.rows();
    if (n == 0 || d.cols() != n) {
        throw InvalidArgument("distance table must be a nonempty square matrix");
    }
    if (!d.allFinite()) throw InvalidArgument("distance table has non-finite entries");
    const double scale = std::max(1.0, d.cwiseAbs().maxCoeff());
    const double tol = 1e-9 * scale;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (d(i, i) != 0.0) throw InvalidArgument("distance table diagonal must be zero");
        for (Eigen::Index j = 0; j < n; ++j) {
            if (d(i, j) < 0.0) throw InvalidArgument("distance table has negative entries");
            if (std::abs(d(i, j) - d(j, i)) > tol) {
                throw InvalidArgument("distance table is not symmetric");
            }
        }
    }
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index l = 0; l < n; ++l)
                if (d(i, j) > d(i, l) + d(l, j) + tol) {
                    std::ostringstream os;
                    os << "distance table violates the triangle inequality at (" << i
                       << ", " << l << ", " << j << ")";
                    throw InvalidArgument(os.str());
                }
    ModelSpace s(SpaceKind::finite, 0.0, 0);
    s.table_ = std::make_shared<const Eigen::MatrixXd>(std::move(d));
    return s;
}

int ModelSpace::ambient_dim() const {
    switch (kind_) {
        case SpaceKind::euclidean: return dim_;
        case SpaceKind::sphere:
        case SpaceKind::hyperbolic: return dim_ + 1;
        case SpaceKind::finite: return 1;
    }
    return 0;
}

double ModelSpace::radius() const {
    return is_curved() ? 1.0 / std::sqrt(std::abs(curvature_)) : 0.0;
}

std::size_t ModelSpace::finite_size() const {
    return table_ ? static_cast<std::size_t>(table_->rows()) : 0;
}

const Eigen::MatrixXd& ModelSpace::distance_table() const {
    if (!table_) throw InvalidArgument("space has no distance table");
    return *table_;
}

std::string ModelSpace::describe() const {
    std::ostringstream os;
    os << to_string(kind_);
    if (kind_ == SpaceKind::finite) {
        os << "(" << finite_size() << " points)";
    } else {
        os << "(dim=" << dim_ << ", k=" << curvature_ << ")";
    }
    return os.str();
}

bool operator==(const ModelSpace& a, const ModelSpace& b) {
    if (a.kind_ != b.kind_ || a.curvature_ != b.curvature_ || a.dim_ != b.dim_) {
        return false;
    }
    if (a.kind_ != SpaceKind::finite) return true;
    return a.table_ == b.table_ || *a.table_ == *b.table_;
}

// -- points ----------------------------------------------------------------

Point::Point(std::initializer_list<double> c) : coords(static_cast<Eigen::Index>(c.size())) {
    Eigen::Index i = 0;
    for (double v : c) coords[i++] = v;
}

void validate_point(const ModelSpace& space, const Point& p) {
    if (p.size() != space.ambient_dim()) {
        std::ostringstream os;
        os << "dimension mismatch: point has " << p.size() << " coordinates, "
           << space.describe() << " expects " << space.ambient_dim();
        throw InvalidArgument(os.str());
    }
    if (!p.coords.allFinite()) throw InvalidArgument("point has non-finite coordinates");
    switch (space.kind()) {
        case SpaceKind::euclidean: return;
        case SpaceKind::sphere: {
            const double r = space.radius();
            if (std::abs(p.coords.norm() - r) > kPointTol * std::max(1.0, r)) {
                throw InvalidArgument("point is not on the sphere of radius 1/sqrt(k)");
            }
            return;
        }
        case SpaceKind::hyperbolic: {
            const double r2 = space.radius() * space.radius();
            const double scale = std::max(1.0, p.coords[0] * p.coords[0]);
            if (p.coords[0] <= 0.0 ||
                std::abs(minkowski(p.coords, p.coords) + r2) > kPointTol * scale) {
                throw InvalidArgument("point is not on the upper hyperboloid sheet");
            }
            return;
        }
        case SpaceKind::finite: {
            const double idx = p.coords[0];
            if (idx < 0 || idx != std::floor(idx) ||
                idx >= static_cast<double>(space.finite_size())) {
                throw InvalidArgument("finite-space point must be a valid integer index");
            }
            return;
        }
    }
}

Point make_point(const ModelSpace& space, const Eigen::VectorXd& raw) {
    if (raw.size() != space.ambient_dim()) {
        std::ostringstream os;
        os << "dimension mismatch: got " << raw.size() << " coordinates, "
           << space.describe() << " expects " << space.ambient_dim();
        throw InvalidArgument(os.str());
    }
    Point p(raw);
    if (space.kind() == SpaceKind::sphere) {
        const double n = raw.norm();
        if (!(n > 0.0)) throw InvalidArgument("cannot normalize the zero vector onto the sphere");
        p.coords *= space.radius() / n;
    } else if (space.kind() == SpaceKind::hyperbolic) {
        const double r = space.radius();
        p.coords[0] = std::sqrt(r * r + raw.tail(raw.size() - 1).squaredNorm());
    }
    validate_point(space, p);
    return p;
}

Point make_point(const ModelSpace& space, std::vector<double> coords) {
    return make_point(space, Eigen::Map<const Eigen::VectorXd>(
                                 coords.data(), static_cast<Eigen::Index>(coords.size())));
}

Point finite_point(const ModelSpace& space, std::size_t index) {
    Point p{static_cast<double>(index)};
    validate_point(space, p);
    return p;
}

// -- PointCloud ----------------------------------------------------------------

PointCloud::PointCloud(ModelSpace space, std::vector<Point> points,
                       std::vector<std::string> labels)
    : space_(std::move(space)), points_(std::move(points)), labels_(std::move(labels)) {
    if (points_.empty()) throw InvalidArgument("point cloud must be nonempty");
    if (!labels_.empty() && labels_.size() != points_.size()) {
        throw InvalidArgument("label count does not match point count");
    }
    for (const auto& p : points_) validate_point(space_, p);
}

void PointCloud::push_back(Point p, std::string label) {
    validate_point(space_, p);
    points_.push_back(std::move(p));
    if (!labels_.empty() || !label.empty()) {
        labels_.resize(points_.size() - 1);
        labels_.push_back(std::move(label));
    }
}

PointCloud PointCloud::all_of(const ModelSpace& finite_space) {
    if (finite_space.kind() != SpaceKind::finite) {
        throw InvalidArgument("all_of requires a finite space");
    }
    std::vector<Point> pts;
    for (std::size_t i = 0; i < finite_space.finite_size(); ++i) {
        pts.push_back(Point{static_cast<double>(i)});
    }
    return PointCloud(finite_space, std::move(pts));
}

// -- metric ----------------------------------------------------------------

double distance(const ModelSpace& space, const Point& p, const Point& q) {
    validate_point(space, p);
    validate_point(space, q);
    switch (space.kind()) {
        case SpaceKind::euclidean: return (p.coords - q.coords).norm();
        case SpaceKind::sphere: {
            // 2 atan2(|p-q|, |p+q|) equals the clamped arccos of the normalized
            // inner product and stays accurate near 0 and pi.
            const double r = space.radius();
            return r * 2.0 * std::atan2((p.coords - q.coords).norm(),
                                        (p.coords + q.coords).norm());
        }
        case SpaceKind::hyperbolic: {
            // |p-q|_L^2 = 4 r^2 sinh^2(d / 2r), the arccosh form without cancellation.
            const double r = space.radius();
            const Eigen::VectorXd diff = p.coords - q.coords;
            const double chord = std::sqrt(std::max(0.0, minkowski(diff, diff)));
            return r * 2.0 * std::asinh(chord / (2.0 * r));
        }
        case SpaceKind::finite: {
            const auto i = static_cast<Eigen::Index>(p.coords[0]);
            const auto j = static_cast<Eigen::Index>(q.coords[0]);
            return space.distance_table()(i, j);
        }
    }
    return 0.0;
}

double tangent_dot(const ModelSpace& space, const Eigen::VectorXd& u,
                   const Eigen::VectorXd& v) {
    return space.kind() == SpaceKind::hyperbolic ? minkowski(u, v) : u.dot(v);
}

double tangent_norm(const ModelSpace& space, const Eigen::VectorXd& u) {
    return std::sqrt(std::max(0.0, tangent_dot(space, u, u)));
}

Eigen::VectorXd log_map(const ModelSpace& space, const Point& base, const Point& target) {
    require_geometric(space, "log_map");
    const double d = distance(space, base, target);
    switch (space.kind()) {
        case SpaceKind::euclidean: return target.coords - base.coords;
        case SpaceKind::sphere: {
            require_not_antipodal(space, base, target);
            const double r2 = space.radius() * space.radius();
            Eigen::VectorXd u = target.coords - (base.coords.dot(target.coords) / r2) * base.coords;
            const double nu = u.norm();
            if (nu == 0.0 || d == 0.0) return Eigen::VectorXd::Zero(base.size());
            return (d / nu) * u;
        }
        case SpaceKind::hyperbolic: {
            const double r2 = space.radius() * space.radius();
            Eigen::VectorXd u = target.coords + (minkowski(base.coords, target.coords) / r2) * base.coords;
            const double nu = tangent_norm(space, u);
            if (nu == 0.0 || d == 0.0) return Eigen::VectorXd::Zero(base.size());
            return (d / nu) * u;
        }
        case SpaceKind::finite: break;
    }
    return {};
}

Point exp_map(const ModelSpace& space, const Point& base, const Eigen::VectorXd& v) {
    require_geometric(space, "exp_map");
    validate_point(space, base);
    if (v.size() != base.size()) throw InvalidArgument("tangent vector dimension mismatch");
    switch (space.kind()) {
        case SpaceKind::euclidean: return Point(base.coords + v);
        case SpaceKind::sphere: {
            const double r = space.radius();
            const double t = v.norm();
            if (t == 0.0) return base;
            Eigen::VectorXd x = std::cos(t / r) * base.coords + (r * std::sin(t / r) / t) * v;
            return make_point(space, x);
        }
        case SpaceKind::hyperbolic: {
            const double r = space.radius();
            const double t = tangent_norm(space, v);
            if (t == 0.0) return base;
            Eigen::VectorXd x = std::cosh(t / r) * base.coords + (r * std::sinh(t / r) / t) * v;
            return make_point(space, x);
        }
        case SpaceKind::finite: break;
    }
    return base;
}

Point geodesic_point(const ModelSpace& space, const Point& p, const Point& q, double s) {
    require_geometric(space, "geodesic_point");
    if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("geodesic fraction must lie in [0, 1]");
    validate_point(space, p);
    validate_point(space, q);
    require_not_antipodal(space, p, q);
    if (s == 0.0) return p;
    if (s == 1.0) return q;
    if (space.kind() == SpaceKind::euclidean) {
        return Point((1.0 - s) * p.coords + s * q.coords);
    }
    return exp_map(space, p, s * log_map(space, p, q));
}

double angle_cosine(const ModelSpace& space, const Point& vertex, const Point& p,
                    const Point& q) {
    require_geometric(space, "angle");
    const double dp = distance(space, vertex, p);
    const double dq = distance(space, vertex, q);
    const double scale = std::max(1.0, space.radius());
    if (dp <= kCoincideTol * scale || dq <= kCoincideTol * scale) {
        throw InvalidArgument("angle: vertex coincides with an endpoint");
    }
    require_not_antipodal(space, vertex, p);
    require_not_antipodal(space, vertex, q);
    const Eigen::VectorXd u = log_map(space, vertex, p);
    const Eigen::VectorXd w = log_map(space, vertex, q);
    const double nu = tangent_norm(space, u);
    const double nw = tangent_norm(space, w);
    return clamp_unit(tangent_dot(space, u, w) / (nu * nw));
}

double angle(const ModelSpace& space, const Point& vertex, const Point& p, const Point& q) {
    return std::acos(angle_cosine(space, vertex, p, q));
}

double model_side(double k, double l1, double l2, double alpha) {
    if (!std::isfinite(k) || !std::isfinite(l1) || !std::isfinite(l2) || !std::isfinite(alpha)) {
        throw InvalidArgument("model_side: non-finite argument");
    }
    if (l1 < 0.0 || l2 < 0.0) throw InvalidArgument("model_side: side lengths must be nonnegative");
    if (alpha < -1e-12 || alpha > std::numbers::pi + 1e-12) {
        throw InvalidArgument("model_side: angle must lie in [0, pi]");
    }
    alpha = std::clamp(alpha, 0.0, std::numbers::pi);
    const double half_sin = std::sin(alpha / 2.0);
    const double hav_alpha = half_sin * half_sin;
    if (k == 0.0) {
        const double h = (l1 - l2) / 2.0;
        return 2.0 * std::sqrt(h * h + l1 * l2 * hav_alpha);
    }
    const double s = std::sqrt(std::abs(k));
    if (k > 0.0) {
        const double limit = std::numbers::pi / s;
        if (l1 > limit * (1 + 1e-12) || l2 > limit * (1 + 1e-12)) {
            throw HypothesisError("model_side: side longer than pi/sqrt(k)");
        }
        const double h = std::sin(s * (l1 - l2) / 2.0);
        const double x = h * h + std::sin(s * l1) * std::sin(s * l2) * hav_alpha;
        return 2.0 * std::asin(std::sqrt(std::clamp(x, 0.0, 1.0))) / s;
    }
    const double h = std::sinh(s * (l1 - l2) / 2.0);
    const double x = h * h + std::sinh(s * l1) * std::sinh(s * l2) * hav_alpha;
    return 2.0 * std::asinh(std::sqrt(std::max(0.0, x))) / s;
}

double squared_distance_derivative(const ModelSpace& space, const Point& x0,
                                   const Point& direction_target, const Point& p) {
    require_geometric(space, "squared_distance_derivative");
    const double d = distance(space, x0, p);
    if (space.kind() == SpaceKind::sphere &&
        !(d < std::numbers::pi / (2.0 * std::sqrt(space.curvature())))) {
        throw HypothesisError("first variation needs d(x0, p) < pi / (2 sqrt(k))");
    }
    return -2.0 * d * angle_cosine(space, x0, direction_target, p);
}

// -- grids -----------------------------------------------------------------

Point base_point(const ModelSpace& space) {
    require_geometric(space, "base_point");
    Eigen::VectorXd x = Eigen::VectorXd::Zero(space.ambient_dim());
    if (space.kind() == SpaceKind::sphere) x[x.size() - 1] = space.radius();
    if (space.kind() == SpaceKind::hyperbolic) x[0] = space.radius();
    return Point(x);
}

std::vector<Eigen::VectorXd> tangent_basis(const ModelSpace& space, const Point& at) {
    require_geometric(space, "tangent_basis");
    validate_point(space, at);
    const int n = space.ambient_dim();
    const double r2 = space.radius() * space.radius();
    std::vector<Eigen::VectorXd> basis;
    for (int i = 0; i < n && static_cast<int>(basis.size()) < space.dim(); ++i) {
        Eigen::VectorXd v = Eigen::VectorXd::Unit(n, i);
        if (space.kind() == SpaceKind::sphere) {
            v -= (at.coords.dot(v) / r2) * at.coords;
        } else if (space.kind() == SpaceKind::hyperbolic) {
            v += (minkowski(at.coords, v) / r2) * at.coords;
        }
        for (const auto& b : basis) v -= tangent_dot(space, b, v) * b;
        // re-orthogonalize once against the base point for sphere round-off
        if (space.kind() == SpaceKind::sphere) v -= (at.coords.dot(v) / r2) * at.coords;
        const double nv = tangent_norm(space, v);
        if (nv > 1e-8) basis.push_back(v / nv);
    }
    return basis;
}

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
    if (count == 1 || lo == hi) return {0.5 * (lo + hi)};
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        out[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    }
    return out;
}

PointCloud euclidean_grid(const ModelSpace& space, const Box& box, int resolution) {
    const auto dim = static_cast<std::size_t>(space.dim());
    if (box.lower.size() != dim || box.upper.size() != dim) {
        throw InvalidArgument("box dimension does not match the space");
    }
    std::vector<std::vector<double>> axes;
    for (std::size_t a = 0; a < dim; ++a) {
        if (!(box.lower[a] <= box.upper[a])) throw InvalidArgument("empty box region");
        axes.push_back(linspace(box.lower[a], box.upper[a], resolution));
    }
    std::vector<Point> pts;
    std::vector<std::size_t> idx(dim, 0);
    while (true) {
        Eigen::VectorXd x(static_cast<Eigen::Index>(dim));
        for (std::size_t a = 0; a < dim; ++a) x[static_cast<Eigen::Index>(a)] = axes[a][idx[a]];
        pts.emplace_back(x);
        // last axis varies fastest
        std::size_t a = dim;
        while (a > 0) {
            --a;
            if (++idx[a] < axes[a].size()) break;
            idx[a] = 0;
            if (a == 0) return PointCloud(space, std::move(pts));
        }
    }
}

// Points at geodesic distance rho from `center` along unit tangent directions.
Point along(const ModelSpace& space, const Point& center, const Eigen::VectorXd& dir, double rho) {
    if (rho == 0.0) return center;
    return exp_map(space, center, rho * dir);
}

PointCloud sphere_grid(const ModelSpace& space, const Region& region, int resolution) {
    const double r = space.radius();
    Point center = base_point(space);
    double cap = std::numbers::pi * r;
    if (const auto* ball = std::get_if<Ball>(&region)) {
        if (!(ball->radius >= 0.0)) throw InvalidArgument("empty cap region");
        if (ball->center) center = *ball->center;
        cap = std::min(ball->radius, std::numbers::pi * r);
    } else if (std::holds_alternative<Box>(region)) {
        throw InvalidArgument("sphere grids take a whole-sphere or cap region");
    }
    validate_point(space, center);
    const auto basis = tangent_basis(space, center);
    std::vector<Point> pts;
    const bool whole = cap >= std::numbers::pi * r;
    if (space.dim() == 1) {
        if (whole) {
            for (int i = 0; i < resolution; ++i) {
                const double t = 2.0 * std::numbers::pi * i / resolution;
                pts.emplace_back(Eigen::VectorXd(std::cos(t) * center.coords + std::sin(t) * r * basis[0]));
            }
        } else {
            for (double t : linspace(-cap, cap, resolution)) {
                pts.push_back(along(space, center, basis[0], t));
            }
        }
        for (auto& p : pts) p = make_point(space, p.coords);
        return PointCloud(space, std::move(pts));
    }
    if (space.dim() != 2) {
        throw InvalidArgument("sphere grids are available for dim 1 and 2 only");
    }
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    const double z_min = std::cos(cap / r);
    for (int i = 0; i < resolution; ++i) {
        const double z = 1.0 - (1.0 - z_min) * (i + 0.5) / resolution;
        const double polar = std::acos(std::clamp(z, -1.0, 1.0));
        const double az = golden * i;
        Eigen::VectorXd dir = std::cos(az) * basis[0] + std::sin(az) * basis[1];
        pts.push_back(along(space, center, dir, r * polar));
    }
    return PointCloud(space, std::move(pts));
}

std::vector<Eigen::VectorXd> ring_directions(const std::vector<Eigen::VectorXd>& basis,
                                             int dim, int ring) {
    std::vector<Eigen::VectorXd> dirs;
    if (dim == 1) {
        dirs.push_back(basis[0]);
        dirs.push_back(-basis[0]);
    } else if (dim == 2) {
        const int count = 6 * ring;
        for (int j = 0; j < count; ++j) {
            const double t = 2.0 * std::numbers::pi * j / count;
            dirs.push_back(std::cos(t) * basis[0] + std::sin(t) * basis[1]);
        }
    } else {
        const int count = 12 * ring * ring;
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int j = 0; j < count; ++j) {
            const double z = 1.0 - 2.0 * (j + 0.5) / count;
            const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double az = golden * j;
            dirs.push_back(s * std::cos(az) * basis[0] + s * std::sin(az) * basis[1] + z * basis[2]);
        }
    }
    return dirs;
}

PointCloud hyperbolic_grid(const ModelSpace& space, const Region& region, int resolution) {
    const auto* ball = std::get_if<Ball>(&region);
    if (!ball) throw InvalidArgument("hyperbolic grids take a metric-ball region");
    if (!(ball->radius >= 0.0)) throw InvalidArgument("empty ball region");
    if (space.dim() > 3) throw InvalidArgument("hyperbolic grids are available for dim <= 3");
    const Point center = ball->center ? *ball->center : base_point(space);
    validate_point(space, center);
    const auto basis = tangent_basis(space, center);
    std::vector<Point> pts{center};
    if (ball->radius > 0.0) {
        for (int ring = 1; ring <= resolution; ++ring) {
            const double rho = ball->radius * ring / resolution;
            for (const auto& dir : ring_directions(basis, space.dim(), ring)) {
                pts.push_back(along(space, center, dir, rho));
            }
        }
    }
    return PointCloud(space, std::move(pts));
}

}  // namespace

PointCloud sample_grid(const ModelSpace& space, const Region& region, int resolution) {
    if (resolution < 1) throw InvalidArgument("grid resolution must be positive");
    switch (space.kind()) {
        case SpaceKind::euclidean: {
            const auto* box = std::get_if<Box>(&region);
            if (!box) throw InvalidArgument("euclidean grids take a box region");
            return euclidean_grid(space, *box, resolution);
        }
        case SpaceKind::sphere: return sphere_grid(space, region, resolution);
        case SpaceKind::hyperbolic: return hyperbolic_grid(space, region, resolution);
        case SpaceKind::finite: break;
    }
    throw InvalidArgument("finite spaces have no grids; use PointCloud::all_of");
}

double diameter(const PointCloud& cloud) {
    double best = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        for (std::size_t j = i + 1; j < cloud.size(); ++j) {
            best = std::max(best, distance(cloud.space(), cloud[i], cloud[j]));
        }
    }
    return best;
}

}  // namespace varmax
