#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace varmax {

/// Result of a dense simplex solve of  max c'x  s.t.  Ax <= b, x >= 0.
struct LinearProgramResult {
    Eigen::VectorXd primal;  ///< optimal x
    Eigen::VectorXd dual;    ///< optimal multipliers y >= 0 of Ax <= b
    double objective = 0.0;
    std::size_t iterations = 0;
};

/// Dense tableau simplex with Bland's anti-cycling rule, for problems whose
/// origin is feasible (b >= 0). After the last pivot the primal and dual
/// vertices are re-solved from the optimal basis with an LU factorization, so
/// accumulated tableau round-off does not reach the answer. Reduced costs
/// recomputed from that factorization must be >= -1e-13; otherwise pivoting
/// resumes from a rebuilt tableau (at most 8 times).
///
/// Throws SolverError when the problem is unbounded or `max_iterations` is
/// exceeded, InvalidArgument on shape errors or b < 0.
LinearProgramResult solve_packing_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                     const Eigen::VectorXd& c,
                                     std::size_t max_iterations = 0,
                                     double pivot_tol = 1e-10);

}  // namespace varmax
