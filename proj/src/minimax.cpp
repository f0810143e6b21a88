#include "varmax/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "varmax/errors.hpp"
#include "varmax/simplex.hpp"

namespace varmax {

namespace {

constexpr double kTieTol = 1e-9;
constexpr double kLpResidualTol = 1e-8;

void require_finite(const Eigen::MatrixXd& m) {
    if (m.size() == 0) throw InvalidArgument("payoff matrix is empty");
    if (!m.allFinite()) throw InvalidArgument("payoff matrix has non-finite entries");
}

double entry(const ModelSpace& space, PayoffKind kind, const Point& x, const Point& y) {
    const double d = distance(space, x, y);
    return kind == PayoffKind::squared_distance ? d * d : d;
}

Eigen::VectorXd column_values(const PayoffMatrix& v, const DiscreteMeasure& mu) {
    mu.require_size(v.rows(), "column values");
    return v.entries().transpose() * mu.vector();
}

Eigen::VectorXd row_values(const PayoffMatrix& v, const DiscreteMeasure& nu) {
    nu.require_size(v.cols(), "row values");
    return v.entries() * nu.vector();
}

// Clips LU round-off and renormalizes a nonnegative strategy vector.
DiscreteMeasure strategy_from(const Eigen::VectorXd& raw) {
    std::vector<double> w(static_cast<std::size_t>(raw.size()));
    const double scale = std::max(1.0, raw.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < raw.size(); ++i) {
        double x = raw[i];
        if (x < 0.0) {
            if (x < -1e-9 * scale) throw SolverError("simplex returned a negative strategy weight");
            x = 0.0;
        }
        w[static_cast<std::size_t>(i)] = x;
    }
    return DiscreteMeasure(std::move(w));
}

SaddleSolution finish(const PayoffMatrix& v, DiscreteMeasure mu, DiscreteMeasure nu, double value,
                      SolveMethod method, std::size_t iterations) {
    const Eigen::VectorXd cols = column_values(v, mu);
    const Eigen::VectorXd rows = row_values(v, nu);
    SaddleSolution s{.value = value, .mu = std::move(mu), .nu = std::move(nu)};
    s.primal_residual = value - cols.minCoeff();
    s.dual_residual = rows.maxCoeff() - value;
    s.gap = s.primal_residual + s.dual_residual;
    s.method = method;
    s.iterations = iterations;
    return s;
}

}  // namespace

std::string to_string(PayoffKind kind) {
    switch (kind) {
        case PayoffKind::squared_distance: return "squared_distance";
        case PayoffKind::distance: return "distance";
        case PayoffKind::custom: return "custom";
    }
    return "unknown";
}

PayoffKind payoff_kind_from_string(const std::string& name) {
    if (name == "squared_distance") return PayoffKind::squared_distance;
    if (name == "distance") return PayoffKind::distance;
    if (name == "custom") return PayoffKind::custom;
    throw InvalidArgument("unknown payoff kind '" + name + "'");
}

std::string to_string(SolveMethod method) {
    return method == SolveMethod::lp ? "lp" : "fictitious";
}

// -- PayoffMatrix --------------------------------------------------------------

PayoffMatrix::PayoffMatrix(Eigen::MatrixXd entries)
    : PayoffMatrix(std::move(entries), PayoffKind::custom, std::nullopt, std::nullopt) {}

PayoffMatrix::PayoffMatrix(Eigen::MatrixXd entries, PayoffKind kind,
                           std::optional<PointCloud> x_cloud, std::optional<PointCloud> y_cloud)
    : entries_(std::move(entries)), kind_(kind), x_cloud_(std::move(x_cloud)),
      y_cloud_(std::move(y_cloud)) {
    require_finite(entries_);
    if (x_cloud_ && x_cloud_->size() != rows()) throw InvalidArgument("payoff rows do not match X");
    if (y_cloud_ && y_cloud_->size() != cols()) throw InvalidArgument("payoff columns do not match Y");
    if (kind_ != PayoffKind::custom) {
        if (!x_cloud_ || !y_cloud_) throw InvalidArgument("geometric payoff needs both clouds");
        if ((entries_.array() < 0.0).any()) throw InvalidArgument("distance payoff has negative entries");
    }
}

void PayoffMatrix::append_column(const Point& y, std::string label) {
    if (kind_ == PayoffKind::custom || !x_cloud_ || !y_cloud_) {
        throw InvalidArgument("append_column needs a geometric payoff");
    }
    y_cloud_->push_back(y, std::move(label));
    const Eigen::Index j = entries_.cols();
    entries_.conservativeResize(Eigen::NoChange, j + 1);
    for (std::size_t i = 0; i < x_cloud_->size(); ++i) {
        entries_(static_cast<Eigen::Index>(i), j) =
            entry(x_cloud_->space(), kind_, (*x_cloud_)[i], y);
    }
}

// -- assembly ----------------------------------------------------------------

PayoffMatrix assemble_payoff(const PointCloud& x, const PointCloud& y, PayoffKind kind) {
    if (kind == PayoffKind::custom) {
        throw InvalidArgument("custom payoff needs an explicit matrix or valuation rule");
    }
    if (!(x.space() == y.space())) throw InvalidArgument("X and Y live in different spaces");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(x.size()), static_cast<Eigen::Index>(y.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < y.size(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                entry(x.space(), kind, x[i], y[j]);
        }
    }
    return PayoffMatrix(std::move(m), kind, x, y);
}

PayoffMatrix assemble_payoff(const PointCloud& x, const PointCloud& y,
                             const Eigen::MatrixXd& custom) {
    if (custom.rows() != static_cast<Eigen::Index>(x.size()) ||
        custom.cols() != static_cast<Eigen::Index>(y.size())) {
        std::ostringstream os;
        os << "custom payoff is " << custom.rows() << "x" << custom.cols() << ", expected "
           << x.size() << "x" << y.size();
        throw InvalidArgument(os.str());
    }
    return PayoffMatrix(custom, PayoffKind::custom, x, y);
}

PayoffMatrix assemble_payoff(const PointCloud& x, const PointCloud& y, const ValuationRule& rule) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(x.size()), static_cast<Eigen::Index>(y.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < y.size(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rule(x[i], y[j]);
        }
    }
    return PayoffMatrix(std::move(m), PayoffKind::custom, x, y);
}

// -- evaluation ----------------------------------------------------------------

double bilinear_value(const PayoffMatrix& v, const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    return column_values(v, mu).dot(nu.vector());
}

VarianceResult v_variance(const PayoffMatrix& v, const DiscreteMeasure& mu) {
    const Eigen::VectorXd cols = column_values(v, mu);
    VarianceResult r{.value = cols.minCoeff()};
    for (Eigen::Index j = 0; j < cols.size(); ++j) {
        if (cols[j] <= r.value + kTieTol) r.indices.push_back(static_cast<std::size_t>(j));
    }
    return r;
}

VarianceResult v_anti_variance(const PayoffMatrix& v, const DiscreteMeasure& nu) {
    const Eigen::VectorXd rows = row_values(v, nu);
    VarianceResult r{.value = rows.maxCoeff()};
    for (Eigen::Index i = 0; i < rows.size(); ++i) {
        if (rows[i] >= r.value - kTieTol) r.indices.push_back(static_cast<std::size_t>(i));
    }
    return r;
}

// -- solvers -----------------------------------------------------------------

SaddleSolution solve_lp(const PayoffMatrix& v, std::size_t max_iterations) {
    const Eigen::MatrixXd& a = v.entries();
    const double lo = a.minCoeff();
    const double span = a.maxCoeff() - lo;
    const std::size_t m = v.rows();
    const std::size_t n = v.cols();
    if (span == 0.0) {
        // Constant game: every pair is a saddle point.
        return finish(v, DiscreteMeasure::uniform(m), DiscreteMeasure::uniform(n), lo,
                      SolveMethod::lp, 0);
    }
    // Shift and scale into [1, 2]; the game value transforms the same way.
    const Eigen::MatrixXd shifted = ((a.array() - lo) / span + 1.0).matrix();
    // Column player: max 1'w  s.t.  shifted w <= 1, w >= 0.  Value = 1 / 1'w.
    const LinearProgramResult lp =
        solve_packing_lp(shifted, Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m)),
                         Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n)), max_iterations);
    if (!(lp.objective > 0.0)) throw SolverError("simplex returned a non-positive game objective");
    const double scaled_value = 1.0 / lp.objective;
    DiscreteMeasure mu = strategy_from(lp.dual * scaled_value);
    DiscreteMeasure nu = strategy_from(lp.primal * scaled_value);
    const double value = (scaled_value - 1.0) * span + lo;
    SaddleSolution s = finish(v, std::move(mu), std::move(nu), value, SolveMethod::lp, lp.iterations);
    const double tol = kLpResidualTol * std::max(1.0, std::abs(lo) + span);
    if (s.primal_residual > tol || s.dual_residual > tol) {
        std::ostringstream os;
        os << "simplex solution failed certification: primal residual " << s.primal_residual
           << ", dual residual " << s.dual_residual;
        throw SolverError(os.str());
    }
    return s;
}

SaddleSolution solve_fictitious(const PayoffMatrix& v, std::size_t max_iters, double target_gap,
                                FictitiousUpdate update) {
    if (max_iters < 1) throw InvalidArgument("fictitious play needs max_iters >= 1");
    const Eigen::MatrixXd& a = v.entries();
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();

    // Beliefs start uniform; afterwards they are the empirical play frequencies.
    Eigen::VectorXd row_pay = a.rowwise().mean();  // payoff of each row vs. nu belief
    Eigen::VectorXd col_pay = a.colwise().mean().transpose();
    Eigen::VectorXd row_sum = Eigen::VectorXd::Zero(n);  // sum of played rows of a
    Eigen::VectorXd col_sum = Eigen::VectorXd::Zero(m);  // sum of played columns of a
    Eigen::VectorXd mu_count = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd nu_count = Eigen::VectorXd::Zero(n);

    double best_lo = -std::numeric_limits<double>::infinity();
    double best_hi = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_mu;
    Eigen::VectorXd best_nu;

    auto row_response = [&] {
        Eigen::Index i = 0;
        for (Eigen::Index k = 1; k < m; ++k) if (row_pay[k] > row_pay[i]) i = k;
        return i;
    };
    auto col_response = [&] {
        Eigen::Index j = 0;
        for (Eigen::Index k = 1; k < n; ++k) if (col_pay[k] < col_pay[j]) j = k;
        return j;
    };

    std::size_t it = 0;
    while (it < max_iters) {
        ++it;
        const double plays = static_cast<double>(it);
        if (update == FictitiousUpdate::simultaneous) {
            const Eigen::Index i = row_response();
            const Eigen::Index j = col_response();
            mu_count[i] += 1.0;
            nu_count[j] += 1.0;
            row_sum += a.row(i).transpose();
            col_sum += a.col(j);
        } else {
            const Eigen::Index i = row_response();
            mu_count[i] += 1.0;
            row_sum += a.row(i).transpose();
            col_pay = row_sum / plays;
            const Eigen::Index j = col_response();
            nu_count[j] += 1.0;
            col_sum += a.col(j);
        }
        col_pay = row_sum / plays;
        row_pay = col_sum / plays;

        const double lo = col_pay.minCoeff();
        const double hi = row_pay.maxCoeff();
        if (lo > best_lo) {
            best_lo = lo;
            best_mu = mu_count / plays;
        }
        if (hi < best_hi) {
            best_hi = hi;
            best_nu = nu_count / plays;
        }
        if (best_hi - best_lo <= target_gap) break;
    }

    DiscreteMeasure mu(std::vector<double>(best_mu.data(), best_mu.data() + best_mu.size()));
    DiscreteMeasure nu(std::vector<double>(best_nu.data(), best_nu.data() + best_nu.size()));
    const double value = bilinear_value(v, mu, nu);
    return finish(v, std::move(mu), std::move(nu), value, SolveMethod::fictitious, it);
}

// -- certification ------------------------------------------------------------

SaddleCertificate certify_saddle(const PayoffMatrix& v, const DiscreteMeasure& mu,
                                 const DiscreteMeasure& nu, double tol) {
    const Eigen::VectorXd cols = column_values(v, mu);
    const Eigen::VectorXd rows = row_values(v, nu);
    SaddleCertificate c;
    c.tol = tol;
    c.value = cols.dot(nu.vector());
    c.column_min = cols.minCoeff();
    c.row_max = rows.maxCoeff();
    c.column_slack.resize(v.cols());
    c.row_slack.resize(v.rows());
    for (std::size_t j = 0; j < v.cols(); ++j) {
        c.column_slack[j] = cols[static_cast<Eigen::Index>(j)] - c.column_min;
    }
    for (std::size_t i = 0; i < v.rows(); ++i) {
        c.row_slack[i] = c.row_max - rows[static_cast<Eigen::Index>(i)];
    }
    for (std::size_t j : support(nu)) {
        if (c.column_slack[j] > c.barycenter_violation) {
            c.barycenter_violation = c.column_slack[j];
            c.worst_column = j;
        }
    }
    for (std::size_t i : support(mu)) {
        if (c.row_slack[i] > c.anti_barycenter_violation) {
            c.anti_barycenter_violation = c.row_slack[i];
            c.worst_row = i;
        }
    }
    c.barycenter_condition = c.barycenter_violation <= tol;
    c.anti_barycenter_condition = c.anti_barycenter_violation <= tol;
    return c;
}

double sphere_condition_violation(const PayoffMatrix& v, const DiscreteMeasure& mu,
                                  const DiscreteMeasure& nu, double value) {
    const Eigen::VectorXd rows = row_values(v, nu);
    mu.require_size(v.rows(), "sphere condition");
    double worst = 0.0;
    for (std::size_t i : support(mu)) {
        worst = std::max(worst, std::abs(rows[static_cast<Eigen::Index>(i)] - value));
    }
    return worst;
}

}  // namespace varmax
