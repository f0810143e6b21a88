#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "varmax/errors.hpp"
#include "varmax/simplex.hpp"

using namespace varmax;
using namespace testing_support;

namespace {

// Optimal objective by enumerating every basis of [A I] (tiny problems only).
double brute_force_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
    const Eigen::Index m = a.rows(), n = a.cols();
    Eigen::MatrixXd full(m, n + m);
    full << a, Eigen::MatrixXd::Identity(m, m);
    std::vector<int> pick(static_cast<std::size_t>(n + m), 0);
    std::fill(pick.end() - m, pick.end(), 1);
    double best = -1.0;
    do {
        Eigen::MatrixXd basis(m, m);
        std::vector<Eigen::Index> cols;
        for (Eigen::Index j = 0; j < n + m; ++j)
            if (pick[static_cast<std::size_t>(j)]) cols.push_back(j);
        for (Eigen::Index k = 0; k < m; ++k) basis.col(k) = full.col(cols[static_cast<std::size_t>(k)]);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
        if (!lu.isInvertible()) continue;
        const Eigen::VectorXd xb = lu.solve(b);
        if ((xb.array() < -1e-12).any()) continue;
        double obj = 0.0;
        for (Eigen::Index k = 0; k < m; ++k) {
            const Eigen::Index j = cols[static_cast<std::size_t>(k)];
            if (j < n) obj += c[j] * xb[k];
        }
        best = std::max(best, obj);
    } while (std::next_permutation(pick.begin(), pick.end()));
    return best;
}

}  // namespace

TEST_SUITE("simplex") {

TEST_CASE("textbook problem") {
    // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  ->  (2, 6), 36.
    Eigen::MatrixXd a(3, 2);
    a << 1, 0, 0, 2, 3, 2;
    const Eigen::VectorXd b = (Eigen::VectorXd(3) << 4, 12, 18).finished();
    const Eigen::VectorXd c = (Eigen::VectorXd(2) << 3, 5).finished();
    const LinearProgramResult r = solve_packing_lp(a, b, c);
    CHECK(r.objective == doctest::Approx(36.0).epsilon(1e-14));
    CHECK(r.primal[0] == doctest::Approx(2.0));
    CHECK(r.primal[1] == doctest::Approx(6.0));
    // Strong duality and dual feasibility.
    CHECK(b.dot(r.dual) == doctest::Approx(36.0).epsilon(1e-14));
    CHECK(((a.transpose() * r.dual - c).array() >= -1e-12).all());
    CHECK((r.dual.array() >= -1e-12).all());
}

TEST_CASE("random packing problems match basis enumeration") {
    auto g = rng(21);
    for (int t = 0; t < 200; ++t) {
        const int m = 1 + static_cast<int>(g() % 4), n = 1 + static_cast<int>(g() % 4);
        Eigen::MatrixXd a = random_matrix(g, m, n).array() + 0.1;
        Eigen::VectorXd b = random_matrix(g, m, 1).col(0);
        Eigen::VectorXd c = random_matrix(g, n, 1).col(0);
        const LinearProgramResult r = solve_packing_lp(a, b, c);
        CHECK(r.objective == doctest::Approx(brute_force_lp(a, b, c)).epsilon(1e-12));
        CHECK(((a * r.primal - b).array() <= 1e-12).all());
        CHECK(b.dot(r.dual) == doctest::Approx(r.objective).epsilon(1e-12));
    }
}

TEST_CASE("degenerate problems terminate") {
    // Many identical constraints and a zero right-hand side exercise Bland's rule.
    Eigen::MatrixXd a = Eigen::MatrixXd::Ones(6, 4);
    Eigen::VectorXd b = Eigen::VectorXd::Ones(6);
    b[2] = 0.0;
    const LinearProgramResult r = solve_packing_lp(a, b, Eigen::VectorXd::Ones(4));
    CHECK(r.objective == doctest::Approx(0.0));
}

TEST_CASE("errors") {
    Eigen::MatrixXd a(1, 2);
    a << 1, -1;
    CHECK_THROWS_AS(solve_packing_lp(a, Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(2)), SolverError);
    CHECK_THROWS_AS(solve_packing_lp(a, -Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(2)),
                    InvalidArgument);
    CHECK_THROWS_AS(solve_packing_lp(a, Eigen::VectorXd::Ones(2), Eigen::VectorXd::Ones(2)),
                    InvalidArgument);
    Eigen::MatrixXd big = Eigen::MatrixXd::Constant(3, 3, 1.0) + Eigen::MatrixXd::Identity(3, 3);
    CHECK_THROWS_AS(solve_packing_lp(big, Eigen::VectorXd::Ones(3), Eigen::VectorXd::Ones(3), 1), SolverError);
}

}  // TEST_SUITE
