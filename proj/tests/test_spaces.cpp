#include <cmath>
#include <numbers>

#include "doctest.h"
#include "support.hpp"
#include "varmax/errors.hpp"
#include "varmax/spaces.hpp"

using namespace varmax;
using namespace testing_support;
using std::numbers::pi;

TEST_SUITE("spaces") {

TEST_CASE("space construction validates curvature and tables") {
    CHECK_THROWS_AS(ModelSpace::sphere(0.0, 2), InvalidArgument);
    CHECK_THROWS_AS(ModelSpace::sphere(-1.0, 2), InvalidArgument);
    CHECK_THROWS_AS(ModelSpace::hyperbolic(1.0, 2), InvalidArgument);
    CHECK_THROWS_AS(ModelSpace::euclidean(0), InvalidArgument);
    CHECK(ModelSpace::euclidean(3).curvature() == 0.0);

    Eigen::MatrixXd asym(2, 2);
    asym << 0, 1, 2, 0;
    CHECK_THROWS_AS(ModelSpace::finite(asym), InvalidArgument);
    Eigen::MatrixXd diag(2, 2);
    diag << 1, 1, 1, 0;
    CHECK_THROWS_AS(ModelSpace::finite(diag), InvalidArgument);
    Eigen::MatrixXd tri(3, 3);
    tri << 0, 1, 5, 1, 0, 1, 5, 1, 0;
    CHECK_THROWS_AS(ModelSpace::finite(tri), InvalidArgument);
    tri(0, 2) = tri(2, 0) = 2;
    const ModelSpace f = ModelSpace::finite(tri);
    CHECK(distance(f, finite_point(f, 0), finite_point(f, 2)) == 2.0);
    CHECK_THROWS_AS(finite_point(f, 3), InvalidArgument);
}

TEST_CASE("points are validated against the model") {
    const ModelSpace s = ModelSpace::sphere(4.0, 2);
    CHECK_NOTHROW(validate_point(s, Point{0.0, 0.0, 0.5}));
    CHECK_THROWS_AS(validate_point(s, Point{0.0, 0.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(validate_point(s, Point{0.0, 0.5}), InvalidArgument);
    const Point projected = make_point(s, std::vector<double>{0.0, 3.0, 4.0});
    CHECK(projected.coords.norm() == doctest::Approx(0.5).epsilon(1e-15));

    const ModelSpace h = ModelSpace::hyperbolic(-1.0, 2);
    CHECK_NOTHROW(validate_point(h, Point{std::cosh(1.0), std::sinh(1.0), 0.0}));
    CHECK_THROWS_AS(validate_point(h, Point{-std::cosh(1.0), std::sinh(1.0), 0.0}), InvalidArgument);
    CHECK_THROWS_AS(validate_point(h, Point{1.0, 1.0, 0.0}), InvalidArgument);

    CHECK_THROWS_AS(PointCloud(ModelSpace::euclidean(2), {}), InvalidArgument);
}

TEST_CASE("distance examples") {
    const ModelSpace e = ModelSpace::euclidean(2);
    CHECK(distance(e, Point{0.0, 0.0}, Point{3.0, 4.0}) == doctest::Approx(5.0));

    const ModelSpace s = ModelSpace::sphere(pi * pi, 2);
    const double r = 1.0 / pi;
    CHECK(distance(s, Point{0.0, 0.0, r}, Point{0.0, 0.0, -r}) == doctest::Approx(1.0).epsilon(1e-15));

    const ModelSpace h = ModelSpace::hyperbolic(-1.0, 2);
    CHECK(distance(h, Point{1.0, 0.0, 0.0}, Point{std::cosh(1.0), std::sinh(1.0), 0.0}) ==
          doctest::Approx(1.0).epsilon(1e-14));

    // Scaled hyperbolic space: points at distance t have time coordinate r cosh(t/r).
    const ModelSpace h4 = ModelSpace::hyperbolic(-4.0, 1);
    CHECK(distance(h4, Point{0.5, 0.0}, Point{0.5 * std::cosh(0.6), 0.5 * std::sinh(0.6)}) ==
          doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("distance is exact for nearby points") {
    // arccos of the inner product loses half the digits here; the chord form does not.
    const ModelSpace s = ModelSpace::sphere(1.0, 2);
    const double t = 1e-9;
    CHECK(distance(s, polar(1.0, 0.3, 0.0), polar(1.0, 0.3 + t, 0.0)) ==
          doctest::Approx(t).epsilon(1e-6));
    const ModelSpace h = ModelSpace::hyperbolic(-1.0, 1);
    CHECK(distance(h, Point{std::cosh(2.0), std::sinh(2.0)}, Point{std::cosh(2.0 + t), std::sinh(2.0 + t)}) ==
          doctest::Approx(t).epsilon(1e-6));
}

TEST_CASE("geodesic_point examples") {
    const ModelSpace e = ModelSpace::euclidean(2);
    const Point mid = geodesic_point(e, Point{0.0, 0.0}, Point{2.0, 0.0}, 0.5);
    CHECK(mid[0] == doctest::Approx(1.0));
    CHECK(mid[1] == doctest::Approx(0.0));

    const ModelSpace s = ModelSpace::sphere(1.0, 2);
    const Point p = polar(1.0, pi / 2, 0.0);
    const Point q = polar(1.0, pi / 2, pi / 2);
    const Point m = geodesic_point(s, p, q, 0.5);
    const Point expected = polar(1.0, pi / 2, pi / 4);
    CHECK((m.coords - expected.coords).norm() < 1e-14);

    const Point start = geodesic_point(s, p, q, 0.0);
    CHECK(start.coords == p.coords);

    CHECK_THROWS_AS(geodesic_point(s, p, polar(1.0, pi / 2, pi), 0.5), HypothesisError);
    CHECK_THROWS_AS(geodesic_point(e, Point{0.0, 0.0}, Point{1.0, 0.0}, 1.5), InvalidArgument);
    Eigen::MatrixXd d(2, 2);
    d << 0, 1, 1, 0;
    const ModelSpace f = ModelSpace::finite(d);
    CHECK_THROWS_AS(geodesic_point(f, finite_point(f, 0), finite_point(f, 1), 0.5), InvalidArgument);
}

TEST_CASE("angle examples") {
    const ModelSpace e = ModelSpace::euclidean(2);
    CHECK(angle(e, Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.0, 1.0}) == doctest::Approx(pi / 2));
    CHECK(angle(e, Point{0.0, 0.0}, Point{1.0, 0.0}, Point{2.0, 0.0}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(angle(e, Point{0.0, 0.0}, Point{0.0, 0.0}, Point{2.0, 0.0}), InvalidArgument);

    const ModelSpace s = ModelSpace::sphere(1.0, 2);
    const Point north = polar(1.0, 0.0, 0.0);
    CHECK(angle(s, north, polar(1.0, 0.7, 0.0), polar(1.0, 1.1, pi / 2)) == doctest::Approx(pi / 2));

    // Hyperbolic: angle at the origin equals the angle between the spatial directions.
    const ModelSpace h = ModelSpace::hyperbolic(-1.0, 2);
    auto hp = [](double t, double phi) {
        return Point{std::cosh(t), std::sinh(t) * std::cos(phi), std::sinh(t) * std::sin(phi)};
    };
    CHECK(angle(h, hp(0.0, 0.0), hp(1.0, 0.2), hp(2.0, 1.4)) == doctest::Approx(1.2).epsilon(1e-12));
}

TEST_CASE("model_side examples") {
    CHECK(model_side(0.0, 3.0, 4.0, pi / 2) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(model_side(1.0, pi / 2, pi / 2, pi / 2) == doctest::Approx(pi / 2).epsilon(1e-15));
    // acosh(cosh(1)^2), 30-digit reference value.
    CHECK(std::abs(model_side(-1.0, 1.0, 1.0, pi / 2) - 1.5133740065965039598) < 1e-14);
    CHECK_THROWS_AS(model_side(1.0, 4.0, 1.0, 0.5), HypothesisError);
    CHECK_THROWS_AS(model_side(0.0, 1.0, 1.0, 4.0), InvalidArgument);
    CHECK_THROWS_AS(model_side(0.0, -1.0, 1.0, 1.0), InvalidArgument);
}

TEST_CASE("model_side agrees with measured triangles") {
    auto g = rng(11);
    for (double k : {1.0, 0.0, -1.0, 2.5, -0.3}) {
        const ModelSpace space = k > 0 ? ModelSpace::sphere(k, 2)
                                 : k < 0 ? ModelSpace::hyperbolic(k, 2)
                                         : ModelSpace::euclidean(2);
        const Point o = base_point(space);
        const double reach = k > 0 ? 1.4 / std::sqrt(k) : 2.0;
        for (int t = 0; t < 50; ++t) {
            const Point p = random_near(g, space, o, reach);
            const Point q = random_near(g, space, o, reach);
            const double l1 = distance(space, o, p), l2 = distance(space, o, q);
            if (l1 < 1e-6 || l2 < 1e-6) continue;
            const double side = model_side(k, l1, l2, angle(space, o, p, q));
            CHECK(side == doctest::Approx(distance(space, p, q)).epsilon(1e-10));
        }
    }
}

TEST_CASE("squared_distance_derivative examples") {
    const ModelSpace e = ModelSpace::euclidean(2);
    CHECK(squared_distance_derivative(e, Point{0.0, 0.0}, Point{1.0, 0.0}, Point{1.0, 1.0}) ==
          doctest::Approx(-2.0));
    CHECK(squared_distance_derivative(e, Point{0.0, 0.0}, Point{1.0, 0.0}, Point{3.0, 0.0}) ==
          doctest::Approx(-6.0));
    const ModelSpace s = ModelSpace::sphere(1.0, 2);
    const double d = squared_distance_derivative(s, polar(1.0, 0.0, 0.0), polar(1.0, 0.5, 0.0),
                                                 polar(1.0, pi / 4, pi / 2));
    CHECK(std::abs(d) < 1e-14);
    CHECK_THROWS_AS(squared_distance_derivative(s, polar(1.0, 0.0, 0.0), polar(1.0, 0.5, 0.0),
                                                polar(1.0, 1.6, pi / 2)),
                    HypothesisError);
}

TEST_CASE("sample_grid examples") {
    const ModelSpace line = ModelSpace::euclidean(1);
    const PointCloud g3 = sample_grid(line, Box{{0.0}, {1.0}}, 3);
    REQUIRE(g3.size() == 3);
    CHECK(g3[0][0] == 0.0);
    CHECK(g3[1][0] == 0.5);
    CHECK(g3[2][0] == 1.0);

    const PointCloud sq = sample_grid(ModelSpace::euclidean(2), Box{{0.0, 0.0}, {1.0, 1.0}}, 2);
    REQUIRE(sq.size() == 4);
    for (const auto& p : sq.points()) {
        CHECK((p[0] == 0.0 || p[0] == 1.0));
        CHECK((p[1] == 0.0 || p[1] == 1.0));
    }

    const PointCloud c4 = circle(4);
    REQUIRE(c4.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            const double d = distance(c4.space(), c4[i], c4[j]);
            CHECK((std::abs(d - 0.5) < 1e-14 || std::abs(d - 1.0) < 1e-14));
        }
    }

    CHECK_THROWS_AS(sample_grid(line, Box{{0.0}, {1.0}}, 0), InvalidArgument);
    CHECK_THROWS_AS(sample_grid(line, Box{{1.0}, {0.0}}, 3), InvalidArgument);
}

TEST_CASE("sphere and hyperbolic grids stay in their regions") {
    const ModelSpace s = ModelSpace::sphere(1.0, 2);
    const Point center = polar(1.0, 0.4, 1.0);
    const PointCloud cap = sample_grid(s, Ball{center, 0.6}, 50);
    CHECK(cap.size() == 50);
    for (const auto& p : cap.points()) CHECK(distance(s, center, p) <= 0.6 + 1e-12);

    const PointCloud whole = sample_grid(s, WholeSphere{}, 100);
    CHECK(whole.size() == 100);

    const ModelSpace h = ModelSpace::hyperbolic(-2.0, 2);
    const PointCloud ball = sample_grid(h, Ball{std::nullopt, 1.5}, 4);
    CHECK(ball.size() == 1 + 6 * (1 + 2 + 3 + 4));
    for (const auto& p : ball.points()) CHECK(distance(h, base_point(h), p) <= 1.5 + 1e-12);

    const ModelSpace h3 = ModelSpace::hyperbolic(-1.0, 3);
    const PointCloud ball3 = sample_grid(h3, Ball{std::nullopt, 1.0}, 2);
    for (const auto& p : ball3.points()) CHECK(distance(h3, base_point(h3), p) <= 1.0 + 1e-12);

    // Determinism.
    const PointCloud again = sample_grid(s, Ball{center, 0.6}, 50);
    for (std::size_t i = 0; i < cap.size(); ++i) CHECK(again[i].coords == cap[i].coords);
}

TEST_CASE("diameter examples") {
    CHECK(diameter(triangle()) == doctest::Approx(1.0));
    CHECK(diameter(PointCloud(ModelSpace::euclidean(1), {Point{0.3}})) == 0.0);
    CHECK(diameter(PointCloud(ModelSpace::euclidean(1), {Point{0.0}, Point{0.3}, Point{1.0}})) == 1.0);
}

}  // TEST_SUITE
