#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "varmax/barycenter.hpp"
#include "varmax/measures.hpp"
#include "varmax/spaces.hpp"

namespace varmax {

/// Number of support points minus one in the Jung bound, or infinity.
class JungOrder {
public:
    static JungOrder finite(int n);
    static JungOrder infinity() { return JungOrder(); }

    bool is_infinite() const { return !n_.has_value(); }
    int value() const;  ///< throws on infinity
    std::string to_string() const;

private:
    JungOrder() = default;
    explicit JungOrder(int n) : n_(n) {}
    std::optional<int> n_;
};

/// Diameter lower bound S(R, n, k): the third side of a model-space triangle
/// with two sides R enclosing the angle arccos(-1/n) (pi/2 for n = infinity).
/// For k > 0 requires R <= pi / (2 sqrt k).
double jung_bound(double radius, JungOrder n, double k);

struct IdentityCheck {
    double lhs = 0.0;  ///< model_side(k, R, R, arccos(-1/n))
    double rhs = 0.0;  ///< jung_bound(R, n, k)
    double relative_error = 0.0;
};

IdentityCheck jung_identity_check(double radius, JungOrder n, double k);

struct AngleCertificate {
    Point circumcenter;
    std::vector<double> cosines;  ///< cos of the angle at y between apex and each support point
    double weighted_sum = 0.0;    ///< sum_i lambda_i cos(alpha_i)
    double min_cosine = 0.0;      ///< C
    std::optional<int> n_bound;   ///< largest n with C <= -1/n, when C < 0
    std::size_t apex = 0;
};

/// Cosines at y of the angles between the geodesic toward support point
/// `apex_index` and the geodesics toward every support point.
AngleCertificate angle_certificate(const ModelSpace& space, const Point& y,
                                   const PointCloud& support_points, const DiscreteMeasure& lambda,
                                   std::size_t apex_index);

enum class Verdict { pass, fail, not_applicable };
std::string to_string(Verdict v);

struct JungOptions {
    RefinementConfig refinement{.max_rounds = 40, .value_tol = 1e-12, .descent_steps = 500};
    /// Grid resolution for the initial candidate set (per axis / point count / rings).
    int grid_resolution = 5;
};

struct JungReport {
    double diameter = 0.0;
    double radius = 0.0;
    double curvature = 0.0;
    std::size_t support_size = 0;  ///< m = |support(mu*)|
    double bound_infinity = 0.0;
    std::optional<double> bound_support;  ///< S(R, m-1, k) when m >= 2
    bool pass_infinity = false;
    Verdict pass_support = Verdict::not_applicable;
    bool unique_barycenter = false;
    bool refinement_converged = false;
    std::vector<double> history;
    std::optional<AngleCertificate> angles;
    std::vector<std::size_t> support_indices;  ///< indices of X in support(mu*)
    /// mu* on its support, corrected (by at most 1e-4) so that the log
    /// vectors at the circumcenter balance exactly when that is possible.
    std::vector<double> support_weights;
};

/// Full certification: candidate grid plus refinement, squared-distance game,
/// Frechet mean of mu* as circumcenter, diameter, Jung bounds, and the angle
/// certificate at the circumcenter with apex at the heaviest support point.
/// The circumcenter is polished to the nearby point equidistant from the
/// support of mu* when one exists within 1e-3 R.
JungReport jung_check(const PointCloud& x, const JungOptions& options = {});

/// Initial candidate cloud used by jung_check: X plus a grid over a region
/// containing its barycenters.
PointCloud jung_candidates(const PointCloud& x, int grid_resolution);

}  // namespace varmax
