#include <cmath>

#include "doctest.h"
#include "zas/extrapolate.hpp"

using namespace zas;
using namespace zas::num;

TEST_CASE("polynomial limit is the constant term") {
    auto f = [](double rho) { return 3.0 - 2.0 * rho + rho * rho; };
    LimitProbe probe;
    probe.tol = 1e-10;
    const LimitValue v = limit_at_zero(f, probe);
    REQUIRE(v.finite);
    CHECK(v.value == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("fractional power corrections are accelerated") {
    auto f = [](double rho) { return 1.0 + std::cbrt(rho) - 0.5 * std::pow(rho, 2.0 / 3.0); };
    const LimitValue v = limit_at_zero(f);
    REQUIRE(v.finite);
    CHECK(v.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("downward divergence is reported as negative infinity") {
    auto f = [](double rho) { return -1.0 / rho; };
    const LimitValue v = limit_at_zero(f);
    CHECK_FALSE(v.finite);
}

TEST_CASE("linear decay to zero") {
    auto f = [](double rho) { return -2.0 * rho; };
    const LimitValue v = limit_at_zero(f);
    REQUIRE(v.finite);
    CHECK(v.value == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("non settling samples raise an error") {
    auto f = [](double rho) { return std::sin(std::log(rho)); };
    CHECK_THROWS_AS(limit_at_zero(f), Error);
}

TEST_CASE("slow geometric divergence is not summed to its anti-limit") {
    auto f = [](double rho) { return -std::pow(rho, -0.25); };
    const LimitValue v = limit_at_zero(f);
    CHECK_FALSE(v.finite);
    auto g = [](double rho) { return -0.3 * std::pow(rho, -0.025); };
    const LimitValue w = limit_at_zero(g);
    CHECK_FALSE(w.finite);
}

TEST_CASE("slow convergence is still accelerated") {
    auto f = [](double rho) { return 3.0 + std::pow(rho, 0.25); };
    const LimitValue v = limit_at_zero(f);
    REQUIRE(v.finite);
    CHECK(v.value == doctest::Approx(3.0).epsilon(1e-6));
}
