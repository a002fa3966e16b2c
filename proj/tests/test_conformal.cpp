#include <cmath>
#include <memory>
#include <numbers>

#include "doctest.h"
#include "zas/conformal.hpp"
#include "zas/geometry.hpp"

using namespace zas;
using namespace zas::conf;
using geom::RadialFunction;
using geom::RadialProfile;

namespace {

constexpr double kPi = std::numbers::pi;

// flat space in area radius from r = 1
RadialProfile flat_from_one() {
    return RadialProfile({std::make_shared<const geom::SchwArealSegment>(0.0, 1.0, num::kInf)});
}

RadialFunction moebius(double c) {
    RadialFunction u;
    u.value = [c](double t) { return 1.0 + c / t; };
    u.deriv = [c](double t) { return -c / (t * t); };
    u.second = [c](double t) { return 2.0 * c / (t * t * t); };
    return u;
}

ConformalPair flat_times_moebius(double c, bool declare) {
    ConformalFactor f;
    f.pieces.push_back(moebius(c));
    if (declare) f.tail_coefficient = c;
    return {flat_from_one(), std::move(f)};
}

}  // namespace

TEST_CASE("compose and the mass shift") {
    const auto cp = flat_times_moebius(0.5, true);
    const auto composed = compose(cp);
    // (1 + 1/2t)^4 times flat is the Schwarzschild exterior of mass one
    CHECK(composed.adm_mass() == doctest::Approx(1.0));
    CHECK(adm_mass_shift(cp) == doctest::Approx(-1.0));
    CHECK(composed.adm_mass() ==
          doctest::Approx(cp.background.adm_mass() - adm_mass_shift(cp)));
    const double s = 2.5;
    CHECK(factor_value(cp, s) == doctest::Approx(1.0 + 0.5 / (1.0 + s)));
}

TEST_CASE("tail coefficient is fitted when not declared") {
    const auto cp = flat_times_moebius(0.5, false);
    CHECK(tail_coefficient(cp) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(compose(cp).adm_mass() == doctest::Approx(1.0).epsilon(1e-8));

    ConformalFactor f;
    f.pieces.push_back({[](double t) { return 1.0 + 1.0 / std::sqrt(t); },
                        [](double t) { return -0.5 * std::pow(t, -1.5); },
                        nullptr,
                        std::nullopt});
    const ConformalPair bad{flat_from_one(), std::move(f)};
    CHECK_THROWS_AS(tail_coefficient(bad), Error);
}

TEST_CASE("factor must stay positive away from the boundary") {
    ConformalFactor f;
    f.pieces.push_back({[](double t) { return 1.0 - t / 5.0; },
                        [](double) { return -0.2; },
                        [](double) { return 0.0; },
                        std::nullopt});
    f.tail_coefficient = 0.0;
    const ConformalPair cp{flat_from_one(), std::move(f)};
    CHECK_THROWS_AS(compose(cp), Error);
}

TEST_CASE("Laplacian identity residual converges at second order") {
    const auto cp = flat_times_moebius(0.5, true);
    auto phi = [](double s) { return 1.0 - 1.0 / (1.0 + s); };  // harmonic in t = 1 + s
    const double r = 2.0;
    const double r1 = std::abs(conformal_laplacian_residual(cp, phi, r, 2e-2));
    const double r2 = std::abs(conformal_laplacian_residual(cp, phi, r, 1e-2));
    const double order = std::log2(r1 / r2);
    CHECK(order == doctest::Approx(2.0).epsilon(0.15));
    CHECK(r2 < 1e-4);
}

TEST_CASE("harmonicity transports to the reciprocal factor") {
    // u = 1 + 1/2t is flat-harmonic; 1/u must be harmonic for u^4 g
    const auto cp = flat_times_moebius(0.5, true);
    const auto composed = compose(cp);
    auto f2 = [&](double s2) {
        const auto loc = composed.locate(s2);
        const double t = loc.x;
        return 1.0 / (1.0 + 0.5 / t);
    };
    const double s2 = 4.0, h = 1e-3;
    const double fp = (f2(s2 + h) - f2(s2 - h)) / (2.0 * h);
    const double fpp = (f2(s2 + h) - 2.0 * f2(s2) + f2(s2 - h)) / (h * h);
    const double lap = fpp + composed.darea_ds(s2) / composed.area(s2) * fp;
    CHECK(std::abs(lap) < 1e-6);
}

TEST_CASE("pointwise conformal identities") {
    CHECK(conformal_scalar_curvature(2.0, -1.0, 3.0) == doctest::Approx(14.0 / 32.0));
    CHECK(conformal_scalar_curvature(1.0, 0.0, 5.0) == doctest::Approx(5.0));
    CHECK_THROWS_AS(conformal_scalar_curvature(0.0, 1.0, 1.0), Error);
    // constant factor scales H by 1/c^2 exactly
    CHECK(conformal_mean_curvature(2.0, 0.0, 1.0) == doctest::Approx(0.25));
    CHECK(conformal_mean_curvature(2.0, 0.5, 1.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(conformal_mean_curvature(-1.0, 0.0, 1.0), Error);
}

TEST_CASE("harmonic resolution test") {
    SUBCASE("exponentially growing background is not harmonically regular") {
        auto a = [](double x) { return 4.0 * kPi * std::exp(x); };
        RadialProfile bg({std::make_shared<const geom::CustomAreaSegment>(0.0, 1.0, a, a, a)});
        RadialFunction phibar;
        phibar.value = [](double r) { return r; };
        phibar.deriv = [](double) { return 1.0; };
        phibar.second = [](double) { return 0.0; };
        const auto res = harmonic_resolution_test(bg, phibar);
        CHECK_FALSE(res.harmonically_regular);
        CHECK(res.log_slope == doctest::Approx(1.0).epsilon(0.05));
    }
    SUBCASE("phibar must vanish at the boundary") {
        RadialProfile bg(
            {std::make_shared<const geom::CylinderSegment>(4.0 * kPi, 0.0, 1.0)});
        RadialFunction phibar;
        phibar.value = [](double r) { return 1.0 + r; };
        phibar.deriv = [](double) { return 1.0; };
        phibar.second = [](double) { return 0.0; };
        CHECK_THROWS_AS(harmonic_resolution_test(bg, phibar), Error);
    }
}

TEST_CASE("canonical test on exact models") {
    SUBCASE("4/3 power law is harmonically regular with a tiny slope") {
        RadialProfile p(
            {std::make_shared<const geom::PowerAreaSegment>(4.0 * kPi, 4.0 / 3.0, 0.0, 1.0),
             std::make_shared<const geom::SchwArealSegment>(5.0 / 18.0, 1.0, num::kInf)});
        const auto res = canonical_harmonic_test(p);
        CHECK(res.harmonically_regular);
        CHECK(std::abs(res.log_slope) < 1e-4);
    }
    SUBCASE("Schwarzschild ZAS is harmonically regular") {
        RadialProfile p({std::make_shared<const geom::SchwZasSegment>(0.5, 0.0, num::kInf)});
        const auto res = canonical_harmonic_test(p);
        CHECK(res.harmonically_regular);
        CHECK(std::abs(res.log_slope) <= 1e-3);
    }
}

TEST_CASE("threshold factor at a positive area boundary") {
    auto bump_profile = [](double eps) {
        return RadialProfile(
            {std::make_shared<const geom::SinBumpSegment>(eps),
             std::make_shared<const geom::CylinderSegment>(4.0 * kPi * (1.0 + eps), 2.0 * kPi,
                                                           2.0 * kPi + 1.0)});
    };
    SUBCASE("ratio is -H/4") {
        for (const double eps : {0.1, 1.0}) {
            const auto res = min_boundary_conformal_factor(bump_profile(eps));
            CHECK(res.ratio == doctest::Approx(-0.25 / (1.0 + eps)).epsilon(1e-12));
        }
    }
    SUBCASE("the factor vanishes inside the bump for small eps only") {
        const auto small = min_boundary_conformal_factor(bump_profile(0.1));
        REQUIRE(small.first_zero.has_value());
        CHECK(*small.first_zero < 2.0 * kPi);
        const auto mid = min_boundary_conformal_factor(bump_profile(0.8));
        CHECK(mid.first_zero.has_value());
        CHECK_FALSE(min_boundary_conformal_factor(bump_profile(0.9)).first_zero.has_value());
        CHECK_FALSE(min_boundary_conformal_factor(bump_profile(1.0)).first_zero.has_value());
    }
}
