#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace varmax {

class PointCloud;

/// Default threshold below which a weight is treated as outside the support.
inline constexpr double kSupportEps = 1e-9;

/// Probability vector over the indices of a point cloud (or of the rows or
/// columns of a payoff matrix). Immutable once constructed.
class DiscreteMeasure {
public:
    /// Validates and renormalizes. Weights in (-1e-12, 0) are clipped to
    /// zero; more negative weights, non-finite weights and zero total mass are
    /// rejected. Construction is idempotent bit-for-bit.
    explicit DiscreteMeasure(std::vector<double> weights);
    DiscreteMeasure(const PointCloud& cloud, std::vector<double> weights);

    static DiscreteMeasure uniform(std::size_t n);
    static DiscreteMeasure uniform(const PointCloud& cloud);
    static DiscreteMeasure dirac(std::size_t n, std::size_t index);
    static DiscreteMeasure dirac(const PointCloud& cloud, std::size_t index);
    /// Uniform over the given indices of an n-point set.
    static DiscreteMeasure uniform_on(std::size_t n, std::span<const std::size_t> indices);

    std::size_t size() const { return weights_.size(); }
    const std::vector<double>& weights() const { return weights_; }
    double operator[](std::size_t i) const { return weights_[i]; }
    Eigen::Map<const Eigen::VectorXd> vector() const {
        return {weights_.data(), static_cast<Eigen::Index>(weights_.size())};
    }

    /// Throws InvalidArgument unless the measure lives on n points.
    void require_size(std::size_t n, const char* what) const;

private:
    std::vector<double> weights_;
};

/// Indices with weight > eps, ascending.
std::vector<std::size_t> support(const DiscreteMeasure& mu, double eps = kSupportEps);

}  // namespace varmax
