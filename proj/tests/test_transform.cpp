#include <doctest.h>

#include <varitz/quadrature.hpp>
#include <varitz/transform.hpp>

#include <stdexcept>
#include <vector>

using namespace varitz;

TEST_CASE("identity map leaves points and gradients alone") {
    const auto T = AffineMap::identity(3);
    const std::vector<double> u = {0.1, 0.5, 0.9};
    const auto x = T.map(u);
    CHECK(x[0] == 0.1);
    CHECK(x[1] == 0.5);
    CHECK(x[2] == 0.9);
    CHECK(T.jacobian_det_abs() == 1.0);
    auto g = T.pullback_gradient(std::vector<double>{1.0, 2.0, 3.0}, 1);
    CHECK(g[1] == 2.0);
}

TEST_CASE("box map sends the unit box onto the requested box") {
    const auto T = AffineMap::box(3, -3.0, 3.0);
    const std::vector<double> zero = {0.0, 0.0, 0.0};
    const std::vector<double> one = {1.0, 1.0, 1.0};
    const std::vector<double> mid = {0.5, 0.5, 0.5};
    CHECK(T.map(zero)[0] == -3.0);
    CHECK(T.map(one)[2] == 3.0);
    CHECK(T.map(mid)[1] == 0.0);
    CHECK(T.jacobian_det_abs() == doctest::Approx(216.0).epsilon(1e-15));
}

TEST_CASE("map and inverse_map round-trip") {
    const auto T = AffineMap::box(2, -1.5, 4.0);
    const std::vector<double> u = {0.37, 0.82};
    const auto back = T.inverse_map(T.map(u));
    CHECK(back[0] == doctest::Approx(u[0]).epsilon(1e-15));
    CHECK(back[1] == doctest::Approx(u[1]).epsilon(1e-15));
}

TEST_CASE("map_into writes the same values as map") {
    const auto T = AffineMap::box(3, 0.0, 10.0);
    const std::vector<double> u = {0.2, 0.4, 0.6};
    double x[3];
    T.map_into(u.data(), x);
    const auto xv = T.map(u);
    CHECK(x[0] == xv[0]);
    CHECK(x[1] == xv[1]);
    CHECK(x[2] == xv[2]);
}

TEST_CASE("pullback divides each gradient column by its scale") {
    AffineMap T({2.0, 5.0}, {0.0, -1.0});
    // Two outputs, gradient rows (du) -> (dx).
    std::vector<double> g = {4.0, 10.0, 6.0, 20.0};
    T.pullback_gradient(g.data(), 2);
    CHECK(g[0] == 2.0);
    CHECK(g[1] == 2.0);
    CHECK(g[2] == 3.0);
    CHECK(g[3] == 4.0);
}

TEST_CASE("degenerate maps are rejected") {
    CHECK_THROWS_AS(AffineMap({1.0, 0.0}, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(AffineMap({1.0}, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("change of variables reproduces an integral over a scaled box") {
    // int_{-3}^{3} x^2 dx = 18 evaluated as int_0^1 f(T(u)) |det J| du.
    const auto T = AffineMap::box(1, -3.0, 3.0);
    const auto rule = tensor_rule(gauss_legendre_rule(4), 1);
    const double got = integrate(rule, [&](const std::vector<double>& u) {
        const auto x = T.map(u);
        return x[0] * x[0] * T.jacobian_det_abs();
    });
    CHECK(got == doctest::Approx(18.0).epsilon(1e-13));
}
