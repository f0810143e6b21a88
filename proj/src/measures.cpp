#include "varmax/measures.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "varmax/errors.hpp"
#include "varmax/spaces.hpp"

namespace varmax {

namespace {

constexpr double kClipTol = 1e-12;

double sequential_sum(const std::vector<double>& w) {
    double s = 0.0;
    for (double v : w) s += v;
    return s;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw InvalidArgument("measure needs at least one weight");
    for (double& w : weights_) {
        if (!std::isfinite(w)) throw InvalidArgument("measure weights must be finite");
        if (w < -kClipTol) {
            std::ostringstream os;
            os << "negative measure weight " << w;
            throw InvalidArgument(os.str());
        }
        if (w < 0.0) w = 0.0;
    }
    const double total = sequential_sum(weights_);
    if (!(total > 0.0)) throw InvalidArgument("measure has zero total mass");
    // A second division could move the last bits, so sums already within the
    // rounding bound of one pass are left alone. This makes construction
    // idempotent.
    const double bound = 4.0 * static_cast<double>(weights_.size() + 1) *
                         std::numeric_limits<double>::epsilon();
    if (std::abs(total - 1.0) > bound) {
        for (double& w : weights_) w /= total;
    }
}

DiscreteMeasure::DiscreteMeasure(const PointCloud& cloud, std::vector<double> weights)
    : DiscreteMeasure(std::move(weights)) {
    require_size(cloud.size(), "measure");
}

DiscreteMeasure DiscreteMeasure::uniform(std::size_t n) {
    if (n == 0) throw InvalidArgument("uniform measure on an empty set");
    return DiscreteMeasure(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DiscreteMeasure DiscreteMeasure::uniform(const PointCloud& cloud) { return uniform(cloud.size()); }

DiscreteMeasure DiscreteMeasure::dirac(std::size_t n, std::size_t index) {
    if (index >= n) throw InvalidArgument("dirac index out of range");
    std::vector<double> w(n, 0.0);
    w[index] = 1.0;
    return DiscreteMeasure(std::move(w));
}

DiscreteMeasure DiscreteMeasure::dirac(const PointCloud& cloud, std::size_t index) {
    return dirac(cloud.size(), index);
}

DiscreteMeasure DiscreteMeasure::uniform_on(std::size_t n, std::span<const std::size_t> indices) {
    if (indices.empty()) throw InvalidArgument("uniform_on needs a nonempty index set");
    std::vector<double> w(n, 0.0);
    const double each = 1.0 / static_cast<double>(indices.size());
    for (std::size_t i : indices) {
        if (i >= n) throw InvalidArgument("uniform_on index out of range");
        w[i] = each;
    }
    return DiscreteMeasure(std::move(w));
}

void DiscreteMeasure::require_size(std::size_t n, const char* what) const {
    if (weights_.size() != n) {
        std::ostringstream os;
        os << what << ": measure has " << weights_.size() << " weights, expected " << n;
        throw InvalidArgument(os.str());
    }
}

std::vector<std::size_t> support(const DiscreteMeasure& mu, double eps) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu[i] > eps) out.push_back(i);
    }
    return out;
}

}  // namespace varmax
