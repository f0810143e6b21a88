#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "support.hpp"
#include "varmax/barycenter.hpp"
#include "varmax/circum.hpp"
#include "varmax/errors.hpp"

using namespace varmax;
using namespace testing_support;

TEST_SUITE("circum") {

TEST_CASE("discrete_circumball examples") {
    const ModelSpace line = ModelSpace::euclidean(1);
    const PointCloud x(line, {Point{0.0}, Point{1.0}});
    const PointCloud y(line, {Point{0.0}, Point{0.5}, Point{1.0}});
    const CircumballResult b = discrete_circumball(x, y);
    CHECK(std::get<Point>(b.center)[0] == 0.5);
    CHECK(b.radius == 0.5);
    CHECK(b.attaining_indices == std::vector<std::size_t>{0, 1});

    const PointCloud c4 = circle(4);
    const CircumballResult cb = discrete_circumball(c4, c4);
    CHECK(cb.radius == doctest::Approx(1.0).epsilon(1e-15));

    const PointCloud one(line, {Point{0.2}});
    CHECK(discrete_circumball(one, one).radius == 0.0);
}

TEST_CASE("welzl_meb examples") {
    const ModelSpace plane = ModelSpace::euclidean(2);
    const CircumballResult a = welzl_meb(PointCloud(plane, {Point{0.0, 0.0}, Point{2.0, 0.0}, Point{1.0, 1.0}}));
    CHECK(std::get<Point>(a.center)[0] == doctest::Approx(1.0));
    CHECK(std::abs(std::get<Point>(a.center)[1]) < 1e-14);
    CHECK(a.radius == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a.attaining_indices.size() == 3);

    const CircumballResult two = welzl_meb(PointCloud(plane, {Point{1.0, 1.0}, Point{4.0, 5.0}}));
    CHECK(two.radius == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(std::get<Point>(two.center)[0] == doctest::Approx(2.5));

    const CircumballResult tri = welzl_meb(triangle());
    CHECK(tri.radius == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(std::get<Point>(tri.center)[1] == doctest::Approx(std::sqrt(3.0) / 6.0).epsilon(1e-14));

    // Obtuse triangle: the long side's midpoint is the center.
    const CircumballResult obtuse = welzl_meb(PointCloud(plane, {Point{0.0, 0.0}, Point{4.0, 0.0}, Point{2.0, 0.5}}));
    CHECK(obtuse.radius == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(obtuse.support_indices == std::vector<std::size_t>{0, 1});

    const CircumballResult tet = welzl_meb(tetrahedron());
    CHECK(tet.radius_sq == doctest::Approx(3.0 / 8.0).epsilon(1e-14));

    CHECK_THROWS_AS(welzl_meb(circle(4)), InvalidArgument);
    CHECK_THROWS_AS(welzl_meb(PointCloud(ModelSpace::euclidean(7), {Point(Eigen::VectorXd::Zero(7))})),
                    InvalidArgument);
}

TEST_CASE("welzl handles duplicates and collinear points") {
    const ModelSpace plane = ModelSpace::euclidean(2);
    std::vector<Point> pts;
    for (int i = 0; i <= 10; ++i) pts.push_back(Point{0.1 * i, 0.2 * i});
    pts.push_back(Point{0.5, 1.0});
    pts.push_back(Point{0.5, 1.0});
    const CircumballResult r = welzl_meb(PointCloud(plane, pts));
    CHECK(r.radius == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("welzl matches the grid oracle and is permutation invariant") {
    auto g = rng(99);
    for (int t = 0; t < 30; ++t) {
        const int dim = 2 + t % 2;
        const PointCloud x = random_euclidean(g, dim, 3 + static_cast<int>(g() % 15));
        const CircumballResult w = welzl_meb(x);
        for (const auto& p : x.points()) {
            CHECK((p.coords - std::get<Point>(w.center).coords).norm() <= w.radius + 1e-12);
        }
        const GridRadius gr = grid_circumradius(x, dim == 2 ? 201 : 41);
        CHECK(w.radius <= gr.radius + 1e-12);
        CHECK(gr.radius - w.radius <= gr.spacing * std::sqrt(dim) / 2.0);

        std::vector<Point> shuffled = x.points();
        std::reverse(shuffled.begin(), shuffled.end());
        std::rotate(shuffled.begin(), shuffled.begin() + 1, shuffled.end());
        const CircumballResult w2 = welzl_meb(PointCloud(x.space(), shuffled));
        CHECK(std::abs(w2.radius - w.radius) <= 1e-12);
        CHECK((std::get<Point>(w2.center).coords - std::get<Point>(w.center).coords).norm() <= 1e-9);
    }
}

TEST_CASE("wasserstein_circumradius examples") {
    const ModelSpace line = ModelSpace::euclidean(1);
    const PointCloud x(line, {Point{0.0}, Point{1.0}});
    const PointCloud y(line, {Point{0.0}, Point{0.5}, Point{1.0}});
    const CircumballResult w = wasserstein_circumradius(assemble_payoff(x, y, PayoffKind::squared_distance));
    CHECK(std::get<DiscreteMeasure>(w.center).weights() == std::vector<double>{0.0, 1.0, 0.0});
    CHECK(w.radius_sq == doctest::Approx(0.25).epsilon(1e-14));

    const PointCloud c4 = circle(4);
    const CircumballResult cw = wasserstein_circumradius(assemble_payoff(c4, c4, PayoffKind::squared_distance));
    CHECK(cw.radius_sq == doctest::Approx(0.375).epsilon(1e-13));
    // The circulant game has other optimal nu; the returned one is certified.
    const PayoffMatrix g = assemble_payoff(c4, c4, PayoffKind::squared_distance);
    const Eigen::VectorXd rows = g.entries() * std::get<DiscreteMeasure>(cw.center).vector();
    CHECK(rows.maxCoeff() == doctest::Approx(0.375).epsilon(1e-13));
    CHECK(certify_saddle(g, DiscreteMeasure::uniform(4), DiscreteMeasure::uniform(4), 1e-12).pass());

    const PointCloud one(line, {Point{3.0}});
    const CircumballResult o = wasserstein_circumradius(assemble_payoff(one, one, PayoffKind::squared_distance));
    CHECK(o.radius_sq == 0.0);
    CHECK(std::get<DiscreteMeasure>(o.center)[0] == 1.0);

    CHECK_THROWS_AS(wasserstein_circumradius(assemble_payoff(x, y, PayoffKind::distance)), InvalidArgument);
}

TEST_CASE("radii_report examples") {
    const PointCloud tri = triangle();
    const RefinementResult r = refine_candidates(tri, tri, PayoffKind::squared_distance,
                                                 {.max_rounds = 100, .value_tol = 1e-13});
    const RadiiReport rep = radii_report(r.payoff, r.solution, true);
    CHECK(rep.wasserstein_sq == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
    CHECK(*rep.welzl_sq == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(rep.unique_barycenter_regime);
    REQUIRE(rep.pass_equality);
    CHECK(*rep.pass_equality);
    CHECK(rep.pass_one_sided);

    const PointCloud c4 = circle(4);
    const PayoffMatrix g = assemble_payoff(c4, c4, PayoffKind::squared_distance);
    const RadiiReport cr = radii_report(g, solve_lp(g), false);
    CHECK(cr.wasserstein_sq == doctest::Approx(0.375).epsilon(1e-13));
    CHECK(cr.metric_sq == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cr.gap == doctest::Approx(0.625).epsilon(1e-12));
    CHECK_FALSE(cr.unique_barycenter_regime);
    CHECK_FALSE(cr.pass_equality.has_value());
    CHECK_FALSE(cr.welzl_sq.has_value());

    const ModelSpace line = ModelSpace::euclidean(1);
    const PointCloud one(line, {Point{3.0}});
    const PayoffMatrix o = assemble_payoff(one, one, PayoffKind::squared_distance);
    const RadiiReport orep = radii_report(o, solve_lp(o), false);
    CHECK(orep.wasserstein_sq == 0.0);
    CHECK(orep.metric_sq == 0.0);
    CHECK(orep.gap == 0.0);
}

TEST_CASE("variance stays below the squared circumradius") {
    auto g = rng(41);
    for (int t = 0; t < 30; ++t) {
        const PointCloud x = random_euclidean(g, 2, 2 + static_cast<int>(g() % 10));
        const PointCloud y = sample_grid(x.space(), Box{{0.0, 0.0}, {1.0, 1.0}}, 9);
        const PayoffMatrix v = assemble_payoff(x, y, PayoffKind::squared_distance);
        const SaddleSolution s = solve_lp(v);
        // The grid holds a point within h sqrt(2) / 2 (h = 1/8) of every barycenter.
        const double r2 = welzl_meb(x).radius_sq;
        CHECK(s.value <= r2 + 2.0 / 256.0 + 1e-12);
        const FrechetResult f = frechet_mean(x.space(), x, s.mu, x[0]);
        CHECK(f.objective <= r2 + 1e-12);
        const RadiiReport rep = radii_report(v, s, false);
        CHECK(rep.pass_one_sided);
    }
}

}  // TEST_SUITE
