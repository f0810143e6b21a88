#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "varmax/measures.hpp"
#include "varmax/spaces.hpp"

namespace varmax {

enum class PayoffKind { squared_distance, distance, custom };

std::string to_string(PayoffKind kind);
PayoffKind payoff_kind_from_string(const std::string& name);

/// V[i][j] = V(x_i, y_j). Rows belong to the maximizing player (measures on
/// X), columns to the minimizing player (measures on Y).
class PayoffMatrix {
public:
    /// Custom matrix without geometric clouds.
    explicit PayoffMatrix(Eigen::MatrixXd entries);
    PayoffMatrix(Eigen::MatrixXd entries, PayoffKind kind, std::optional<PointCloud> x_cloud,
                 std::optional<PointCloud> y_cloud);

    std::size_t rows() const { return static_cast<std::size_t>(entries_.rows()); }
    std::size_t cols() const { return static_cast<std::size_t>(entries_.cols()); }
    const Eigen::MatrixXd& entries() const { return entries_; }
    double operator()(std::size_t i, std::size_t j) const {
        return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    PayoffKind kind() const { return kind_; }
    const std::optional<PointCloud>& x_cloud() const { return x_cloud_; }
    const std::optional<PointCloud>& y_cloud() const { return y_cloud_; }

    /// Appends the column of a new candidate point y (geometric kinds only).
    void append_column(const Point& y, std::string label = {});

private:
    Eigen::MatrixXd entries_;
    PayoffKind kind_;
    std::optional<PointCloud> x_cloud_;
    std::optional<PointCloud> y_cloud_;
};

using ValuationRule = std::function<double(const Point& x, const Point& y)>;

/// Squared-distance or distance payoff between two clouds of one space.
PayoffMatrix assemble_payoff(const PointCloud& x, const PointCloud& y, PayoffKind kind);
/// Custom payoff from an explicit |X| x |Y| matrix.
PayoffMatrix assemble_payoff(const PointCloud& x, const PointCloud& y,
                             const Eigen::MatrixXd& custom);
/// Custom payoff from a valuation rule V(x, y).
PayoffMatrix assemble_payoff(const PointCloud& x, const PointCloud& y, const ValuationRule& rule);

/// mu' V nu.
double bilinear_value(const PayoffMatrix& v, const DiscreteMeasure& mu, const DiscreteMeasure& nu);

struct VarianceResult {
    double value = 0.0;
    std::vector<std::size_t> indices;  ///< attaining columns (variance) or rows (anti-variance)
};

/// V-variance: min over columns of mu'V, with every column within 1e-9 of it.
VarianceResult v_variance(const PayoffMatrix& v, const DiscreteMeasure& mu);
/// V-anti-variance: max over rows of V nu, with every row within 1e-9 of it.
VarianceResult v_anti_variance(const PayoffMatrix& v, const DiscreteMeasure& nu);

enum class SolveMethod { lp, fictitious };
std::string to_string(SolveMethod method);

struct SaddleSolution {
    double value = 0.0;
    DiscreteMeasure mu;
    DiscreteMeasure nu;
    double primal_residual = 0.0;  ///< value - min_j (mu'V)_j
    double dual_residual = 0.0;    ///< max_i (V nu)_i - value
    double gap = 0.0;              ///< primal_residual + dual_residual
    SolveMethod method = SolveMethod::lp;
    std::size_t iterations = 0;
};

/// Exact optimal strategies of the matrix game max_mu min_nu mu'V nu. The
/// payoff is affinely rescaled into [1, 2], the column player's packing LP is
/// solved by the Bland simplex, and both vertices are read off the optimal
/// basis. Throws SolverError if residuals exceed 1e-8.
SaddleSolution solve_lp(const PayoffMatrix& v, std::size_t max_iterations = 0);

enum class FictitiousUpdate { alternating, simultaneous };

/// Fictitious play from uniform beliefs; lowest index wins best-response
/// ties. Returns the best time-averaged strategies seen, so the reported gap
/// never increases with max_iters. Stops once gap <= target_gap.
SaddleSolution solve_fictitious(const PayoffMatrix& v, std::size_t max_iters, double target_gap,
                                FictitiousUpdate update = FictitiousUpdate::alternating);

struct SaddleCertificate {
    double value = 0.0;       ///< mu'V nu
    double column_min = 0.0;  ///< min_j (mu'V)_j, the V-variance of mu
    double row_max = 0.0;     ///< max_i (V nu)_i, the V-anti-variance of nu
    /// (mu'V)_j - column_min per column; nu-a.e. column must have slack <= tol.
    std::vector<double> column_slack;
    /// row_max - (V nu)_i per row; mu-a.e. row must have slack <= tol.
    std::vector<double> row_slack;
    double barycenter_violation = 0.0;       ///< worst column slack on support(nu)
    double anti_barycenter_violation = 0.0;  ///< worst row slack on support(mu)
    std::size_t worst_column = 0;
    std::size_t worst_row = 0;
    bool barycenter_condition = false;       ///< nu-a.e. y is a V-barycenter of mu
    bool anti_barycenter_condition = false;  ///< mu-a.e. x is a V-anti-barycenter of nu
    double tol = 0.0;

    bool pass() const { return barycenter_condition && anti_barycenter_condition; }
};

SaddleCertificate certify_saddle(const PayoffMatrix& v, const DiscreteMeasure& mu,
                                 const DiscreteMeasure& nu, double tol);

/// max over i in support(mu) of |(V nu)_i - value|.
double sphere_condition_violation(const PayoffMatrix& v, const DiscreteMeasure& mu,
                                  const DiscreteMeasure& nu, double value);

}  // namespace varmax
