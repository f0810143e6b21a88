#include "varmax/simplex.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <vector>

#include "varmax/errors.hpp"

namespace varmax {

namespace {

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kRefineTol = 1e-13;

}  // namespace

LinearProgramResult solve_packing_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                     const Eigen::VectorXd& c, std::size_t max_iterations,
                                     double pivot_tol) {
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    if (b.size() != m || c.size() != n) throw InvalidArgument("simplex: shape mismatch");
    if (m == 0 || n == 0) throw InvalidArgument("simplex: empty problem");
    if ((b.array() < 0.0).any()) throw InvalidArgument("simplex: origin must be feasible (b >= 0)");
    if (!a.allFinite() || !b.allFinite() || !c.allFinite()) {
        throw InvalidArgument("simplex: non-finite data");
    }
    if (max_iterations == 0) {
        max_iterations = std::max<std::size_t>(100000, 50 * static_cast<std::size_t>(m + n));
    }

    // Columns: x (n), slacks (m), rhs. Last row holds reduced costs of max c'x.
    const Eigen::Index width = n + m + 1;
    Tableau t = Tableau::Zero(m + 1, width);
    t.topLeftCorner(m, n) = a;
    t.block(0, n, m, m).setIdentity();
    t.col(width - 1).head(m) = b;
    t.row(m).head(n) = -c.transpose();

    std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

    std::size_t iterations = 0;
    auto pivot_until_optimal = [&](double enter_tol) {
        while (true) {
            // Bland: lowest-index improving column.
            Eigen::Index enter = -1;
            for (Eigen::Index j = 0; j < n + m; ++j) {
                if (t(m, j) < -enter_tol) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return;

            Eigen::Index leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < m; ++i) {
                const double coef = t(i, enter);
                if (coef <= pivot_tol) continue;
                const double ratio = std::max(0.0, t(i, width - 1)) / coef;
                const double slack = 1e-12 * (1.0 + std::abs(best_ratio));
                if (leave < 0 || ratio < best_ratio - slack) {
                    leave = i;
                    best_ratio = ratio;
                } else if (ratio <= best_ratio + slack &&
                           basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)]) {
                    leave = i;
                    best_ratio = std::min(best_ratio, ratio);
                }
            }
            if (leave < 0) throw SolverError("simplex: problem is unbounded");

            if (++iterations > max_iterations) {
                std::ostringstream os;
                os << "simplex: iteration cap " << max_iterations << " exceeded (" << m << "x" << n
                   << " problem)";
                throw SolverError(os.str());
            }

            t.row(leave) /= t(leave, enter);
            for (Eigen::Index i = 0; i <= m; ++i) {
                if (i == leave) continue;
                const double f = t(i, enter);
                if (f != 0.0) t.row(i) -= f * t.row(leave);
            }
            basis[static_cast<std::size_t>(leave)] = enter;
        }
    };

    Eigen::MatrixXd basis_matrix(m, m);
    Eigen::VectorXd cost_b(m);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    Eigen::VectorXd x_b, y;
    auto factor_basis = [&] {
        cost_b.setZero();
        for (Eigen::Index i = 0; i < m; ++i) {
            const Eigen::Index j = basis[static_cast<std::size_t>(i)];
            if (j < n) {
                basis_matrix.col(i) = a.col(j);
                cost_b[i] = c[j];
            } else {
                basis_matrix.col(i) = Eigen::VectorXd::Unit(m, j - n);
            }
        }
        lu.compute(basis_matrix);
        x_b = lu.solve(b);
        y = lu.transpose().solve(cost_b);
    };

    pivot_until_optimal(pivot_tol);
    factor_basis();
    // Reduced costs recomputed from a fresh factorization expose improvements
    // hidden by accumulated tableau round-off; continue from a rebuilt tableau.
    for (int pass = 0; pass < 8; ++pass) {
        Eigen::VectorXd reduced(n + m);
        reduced.head(n) = a.transpose() * y - c;
        reduced.tail(m) = y;
        if (reduced.minCoeff() >= -kRefineTol) break;
        t.leftCols(n) = lu.solve(a);
        t.block(0, n, m, m) = lu.inverse();
        t.col(width - 1).head(m) = x_b;
        t.row(m).head(n + m) = reduced.transpose();
        t(m, width - 1) = cost_b.dot(x_b);
        pivot_until_optimal(kRefineTol);
        factor_basis();
    }

    LinearProgramResult out;
    out.primal = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < m; ++i) {
        const Eigen::Index j = basis[static_cast<std::size_t>(i)];
        if (j < n) out.primal[j] = x_b[i];
    }
    out.dual = y;
    out.objective = c.dot(out.primal);
    out.iterations = iterations;
    return out;
}

}  // namespace varmax
