#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "varmax/measures.hpp"
#include "varmax/minimax.hpp"
#include "varmax/spaces.hpp"

namespace varmax {

/// Circumball of X: a center (a point, or a measure in Wasserstein space),
/// the radius, and the indices of X at distance radius (within 1e-9).
struct CircumballResult {
    std::variant<Point, DiscreteMeasure> center;
    double radius = 0.0;
    double radius_sq = 0.0;
    std::vector<std::size_t> attaining_indices;
    /// Welzl only: indices of X on the boundary that determine the ball.
    std::vector<std::size_t> support_indices;
};

/// argmin over y in Y of max over x in X of d(x, y); ties go to the lowest index.
CircumballResult discrete_circumball(const PointCloud& x, const PointCloud& y);

/// Exact minimal enclosing ball of a Euclidean cloud (dim <= 6) by Welzl's
/// move-to-front recursion over a fixed-seed shuffle of the input.
CircumballResult welzl_meb(const PointCloud& points);

/// Circumcenter of the Dirac embedding of X in Wasserstein space: the
/// minimal anti-variance measure of the squared-distance game, with
/// radius_sq equal to the game value.
CircumballResult wasserstein_circumradius(const PayoffMatrix& v);
/// Same, reusing an existing exact solution of the game.
CircumballResult wasserstein_circumradius(const PayoffMatrix& v, const SaddleSolution& solution);

struct RadiiReport {
    double wasserstein_sq = 0.0;  ///< game value: squared circumradius of i(X)
    double metric_sq = 0.0;       ///< discrete circumradius^2 of X over the same Y
    std::optional<double> welzl_sq;  ///< exact Euclidean circumradius^2
    double gap = 0.0;             ///< reference metric_sq - wasserstein_sq
    bool unique_barycenter_regime = false;
    bool refined = false;
    bool pass_one_sided = false;  ///< wasserstein_sq <= metric_sq + 1e-8
    /// |wasserstein_sq - reference| <= tol; only evaluated in the uniqueness
    /// regime on refined candidates.
    std::optional<bool> pass_equality;
    double tol = 0.0;
};

/// Compares the Wasserstein and metric circumradii of X for a solved
/// squared-distance game. The reference metric radius for `gap` and the
/// equality check is Welzl's when the space is Euclidean, else the discrete one.
RadiiReport radii_report(const PayoffMatrix& v, const SaddleSolution& solution, bool refined,
                         double tol = 1e-6);

}  // namespace varmax
