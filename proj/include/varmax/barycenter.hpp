#pragma once

#include <cstddef>
#include <vector>

#include "varmax/measures.hpp"
#include "varmax/minimax.hpp"
#include "varmax/spaces.hpp"

namespace varmax {

struct RefinementConfig {
    int max_rounds = 20;
    double value_tol = 1e-6;
    int descent_steps = 200;

    /// Throws InvalidArgument on max_rounds < 1, value_tol <= 0 or descent_steps < 1.
    void validate() const;
};

/// Columns within tol of min_j (mu'V)_j: the discrete V-barycenters of mu.
std::vector<std::size_t> v_barycenter_set(const PayoffMatrix& v, const DiscreteMeasure& mu,
                                          double tol = kSupportEps);

/// Canonical generalized barycenter: uniform over v_barycenter_set(v, mu, 1e-9).
DiscreteMeasure generalized_barycenter(const PayoffMatrix& v, const DiscreteMeasure& mu);

/// Rows within tol of max_i (V nu)_i: the discrete V-anti-barycenters of nu.
std::vector<std::size_t> anti_barycenter_set(const PayoffMatrix& v, const DiscreteMeasure& nu,
                                             double tol = kSupportEps);

/// True when the near-minimal columns (within 1e-9 of the V-variance of mu)
/// all describe one barycenter. For geometric payoffs the candidates may be
/// several nearby points of Y: they count as one barycenter when they fit in a
/// ball of radius 4 sqrt(1e-9) * max(1, diam X). Custom or finite payoffs need
/// a single such column.
bool barycenter_is_unique(const PayoffMatrix& v, const DiscreteMeasure& mu);

struct FrechetResult {
    Point point;
    double gradient_norm = 0.0;  ///< |sum_i mu_i log_z(x_i)| at the returned point
    double objective = 0.0;      ///< sum_i mu_i d^2(x_i, z)
    int steps = 0;
    bool converged = false;
};

/// Weighted Frechet mean. Euclidean: the weighted coordinate mean.
/// Sphere / hyperbolic: Riemannian gradient descent from `init` with step
/// 1/2 (halved whenever the objective fails to decrease) until the tangent
/// gradient norm is <= 1e-9 or config.descent_steps is reached.
/// On the sphere every point of the cloud must lie within pi/(2 sqrt k) of
/// `init` (HypothesisError otherwise).
FrechetResult frechet_mean(const ModelSpace& space, const PointCloud& cloud,
                           const DiscreteMeasure& mu, const Point& init,
                           const RefinementConfig& config = {});

struct RefinementResult {
    PayoffMatrix payoff;          ///< final payoff over (X, Y')
    SaddleSolution solution;      ///< final LP saddle point
    std::vector<double> history;  ///< game value after each round, round 0 first
    std::size_t appended = 0;     ///< number of Frechet-mean columns added
    /// value - sum_i mu*_i d^2(x_i, z) with z the Frechet mean of mu*: an
    /// upper bound on how much the value can still drop as Y grows.
    double certified_gap = 0.0;
    bool converged = false;       ///< certified_gap <= value_tol
};

/// Candidate refinement: solve the squared-distance game on (X, Y), compute
/// the Frechet mean z of the optimal mu (started at its best column), and
/// stop once value - V(mu, z) <= value_tol. Otherwise append z to Y and
/// re-solve, for at most max_rounds appended columns. The value history is
/// nonincreasing. Finite spaces are solved once without refinement.
RefinementResult refine_candidates(const PointCloud& x, const PointCloud& y,
                                   PayoffKind kind, const RefinementConfig& config = {});

}  // namespace varmax
