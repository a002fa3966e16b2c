#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "zas/quadrature.hpp"

using namespace zas;
using namespace zas::num;
using std::numbers::pi;

TEST_CASE("inverse square integral to infinity") {
    // antiderivative of 1/(4 pi r^2) is -1/(4 pi r)
    Quadrant q([](double r) { return 1.0 / (4.0 * pi * r * r); }, 1.0, kInf, std::nullopt, -2.0);
    CHECK(integrate(q) == doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-10));
}

TEST_CASE("inverse square root with declared endpoint exponent") {
    // antiderivative of 1/(4 pi sqrt r) is sqrt(r)/(2 pi)
    Quadrant q([](double r) { return 1.0 / (4.0 * pi * std::sqrt(r)); }, 0.0, 1.0, -0.5);
    CHECK(integrate(q) == doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-10));
}

TEST_CASE("zero integrand") {
    Quadrant q([](double) { return 0.0; }, 0.0, 1.0);
    CHECK(integrate(q) == 0.0);
}

TEST_CASE("periodic denominator integral") {
    // int_0^{2pi} dt/(a + sin t) = 2 pi / sqrt(a^2 - 1) for a > 1
    const double eps = 0.1;
    const double a = 1.0 + eps;
    Quadrant q([a](double t) { return 1.0 / (a + std::sin(t)); }, 0.0, 2.0 * pi);
    CHECK(integrate(q) ==
          doctest::Approx(2.0 * pi / std::sqrt(eps * eps + 2.0 * eps)).epsilon(1e-10));
}

TEST_CASE("additivity and linearity over random split points") {
    std::mt19937 rng(7131);
    std::uniform_real_distribution<double> mid(0.2, 1.8);
    auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x) + x * x; };
    const double whole = integrate(Quadrant(f, 0.0, 2.0));
    for (int i = 0; i < 10; ++i) {
        const double c = mid(rng);
        const double left = integrate(Quadrant(f, 0.0, c));
        const double right = integrate(Quadrant(f, c, 2.0));
        CHECK(left + right == doctest::Approx(whole).epsilon(1e-9));
    }
    auto g = [&f](double x) { return 2.5 * f(x); };
    CHECK(integrate(Quadrant(g, 0.0, 2.0)) == doctest::Approx(2.5 * whole).epsilon(1e-10));
}

TEST_CASE("divergence classification") {
    auto inv_sq = [](double r) { return 1.0 / (4.0 * pi * r * r); };
    CHECK(classify_divergence(Quadrant(inv_sq, 0.0, 1.0, -2.0)) == Divergence::Divergent);

    auto inv_sqrt = [](double r) { return 1.0 / std::sqrt(r); };
    CHECK(classify_divergence(Quadrant(inv_sqrt, 0.0, 1.0, -0.5)) == Divergence::Convergent);
    // same conclusion from the estimated slope
    CHECK(classify_divergence(Quadrant(inv_sqrt, 0.0, 1.0)) == Divergence::Convergent);

    auto near_critical = [](double r) { return std::pow(r, -1.005); };
    CHECK_THROWS_AS(classify_divergence(Quadrant(near_critical, 0.0, 1.0)), Error);
}

TEST_CASE("declared exponent is validated against the integrand") {
    auto inv_sqrt = [](double r) { return 1.0 / std::sqrt(r); };
    CHECK_THROWS_AS(Quadrant(inv_sqrt, 0.0, 1.0, -0.9), Error);
    CHECK_THROWS_AS(Quadrant(inv_sqrt, 0.0, 1.0, 0.0), Error);
}

TEST_CASE("non integrable endpoints are rejected") {
    auto f = [](double r) { return 1.0 / r; };
    CHECK_THROWS_AS(integrate(Quadrant(f, 0.0, 1.0, -1.0)), Error);
    auto slow = [](double r) { return 1.0 / r; };
    CHECK_THROWS_AS(integrate(Quadrant(slow, 1.0, kInf, std::nullopt, -1.0)), Error);
}

TEST_CASE("interval validation") {
    auto f = [](double) { return 1.0; };
    CHECK_THROWS_AS(Quadrant(f, 1.0, 1.0), Error);
    CHECK_THROWS_AS(Quadrant(f, 2.0, 1.0), Error);
    // infinite upper limit requires a declared decay exponent
    CHECK_THROWS_AS(Quadrant(f, 1.0, kInf), Error);
}
