#include <cmath>
#include <numbers>

#include "doctest.h"
#include "zas/errors.hpp"
#include "zas/profile.hpp"
#include "zas/segment.hpp"

using namespace zas;
using namespace zas::geom;
using num::kInf;
using std::numbers::pi;

namespace {
double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), 1e-300); }
}  // namespace

TEST_CASE("flat space closed forms in area radius") {
    SchwArealSegment flat(0.0, 1.0, kInf);
    CHECK(flat.lapse(3.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(flat.arclength(4.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(flat.capacity_integral(1.0, 2.0) ==
          doctest::Approx(0.5 / (4.0 * pi)).epsilon(1e-14));
    CHECK(flat.tail_capacity_integral(1.0) ==
          doctest::Approx(0.07957747154594767).epsilon(1e-14));
    CHECK(flat.tail_adm() == 0.0);
}

TEST_CASE("isotropic and areal charts describe the same exterior") {
    const double m = 1.0;
    SchwIsotropicSegment iso(m, 0.5, kInf);
    SchwArealSegment areal(m, 2.0, kInf);
    for (double t : {0.7, 1.0, 2.0, 10.0, 250.0}) {
        const double big_r = t + m + m * m / (4.0 * t);
        CHECK(rel_diff(iso.area(t), areal.area(big_r)) < 1e-13);
        CHECK(std::abs(iso.arclength(t) - areal.arclength(big_r)) <
              1e-12 * std::max(1.0, iso.arclength(t)));
        CHECK(rel_diff(iso.capacity_integral(0.5, t), areal.capacity_integral(2.0, big_r)) <
              1e-12);
        CHECK(rel_diff(iso.tail_capacity_integral(t), areal.tail_capacity_integral(big_r)) <
              1e-13);
    }
    CHECK(iso.tail_adm() == 1.0);
    CHECK(areal.tail_adm() == 1.0);
}

TEST_CASE("isotropic arclength is cancellation free near its base point") {
    SchwIsotropicSegment iso(1.0, 1.0, kInf);
    const double d = 1e-8;
    // s = w(t0) d + O(d^2)
    CHECK(rel_diff(iso.arclength(1.0 + d), 2.25 * d) < 3e-8);
}

TEST_CASE("isotropic inverse arclength round trip") {
    SchwIsotropicSegment iso(1.0, 0.5, kInf);
    for (double s : {1e-6, 1e-2, 1.0, 40.0, 3000.0}) {
        const double t = iso.coordinate_at_arclength(s);
        CHECK(std::abs(iso.arclength(t) - s) < 1e-12 * std::max(1.0, s));
    }
}

TEST_CASE("zero area boundary segment matches direct quadrature") {
    SchwZasSegment seg(1.0, 0.0, kInf);
    for (double x : {0.3, 0.499, 0.501, 2.0, 50.0}) {
        const double direct =
            num::integrate(num::Quadrant([&](double y) { return seg.lapse(y); }, 0.0, x));
        CHECK(rel_diff(seg.arclength(x), direct) < 1e-9);
    }
    const double direct_cap = num::integrate(
        num::Quadrant([&](double y) { return seg.lapse(y) / seg.area(y); }, 0.1, 2.0));
    CHECK(rel_diff(seg.capacity_integral(0.1, 2.0), direct_cap) < 1e-9);
    CHECK(rel_diff(seg.tail_capacity_integral(1.0), 0.07957747154594767) < 1e-14);
    CHECK(seg.tail_adm() == -2.0);
}

TEST_CASE("zero area boundary inverse and origin expansion") {
    SchwZasSegment seg(2.0, 0.0, kInf);
    for (double s : {1e-12, 1e-7, 1e-3, 0.8, 30.0}) {
        const double x = seg.coordinate_at_arclength(s);
        CHECK(std::abs(seg.arclength(x) - s) < 1e-12 * s);
    }
    const auto org = seg.origin_data();
    REQUIRE(org.has_value());
    CHECK(org->exponent == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    const double expected = 4.0 * pi * std::pow(3.0, 4.0 / 3.0) * std::pow(2.0, 2.0 / 3.0);
    CHECK(rel_diff(org->coefficient, expected) < 1e-14);
    const double s = 1e-13;
    const double x = seg.coordinate_at_arclength(s);
    CHECK(rel_diff(seg.area(x) / std::pow(s, 4.0 / 3.0), org->coefficient) < 1e-3);
}

TEST_CASE("conformal product rules reproduce the isotropic chart") {
    auto base = std::make_shared<SchwArealSegment>(0.0, 1.0, 10.0);
    RadialFunction u;
    u.value = [](double t) { return 1.0 + 0.5 / t; };
    u.deriv = [](double t) { return -0.5 / (t * t); };
    u.second = [](double t) { return 1.0 / (t * t * t); };
    ConformalSegment conf(base, u);
    SchwIsotropicSegment iso(1.0, 1.0, 10.0);
    for (double t : {1.0, 1.7, 4.0, 9.5}) {
        CHECK(rel_diff(conf.lapse(t), iso.lapse(t)) < 1e-14);
        CHECK(rel_diff(conf.dlapse(t), iso.dlapse(t)) < 1e-13);
        CHECK(rel_diff(conf.area(t), iso.area(t)) < 1e-14);
        CHECK(rel_diff(conf.darea(t), iso.darea(t)) < 1e-13);
        CHECK(rel_diff(conf.d2area(t), iso.d2area(t)) < 1e-12);
    }
    CHECK(rel_diff(conf.arclength(8.0), iso.arclength(8.0)) < 1e-10);
    CHECK(rel_diff(conf.capacity_integral(1.0, 10.0), iso.capacity_integral(1.0, 10.0)) < 1e-10);
    CHECK(conf.smooth());
}

TEST_CASE("linear factor on a cylinder uses exact fast paths") {
    auto cyl = std::make_shared<CylinderSegment>(4.0 * pi, 0.0, 10.0);
    RadialFunction u;
    u.value = [](double x) { return 0.25 * x; };
    u.deriv = [](double) { return 0.25; };
    u.second = [](double) { return 0.0; };
    u.vanish_slope = 0.25;
    ConformalSegment fast(cyl, u);

    RadialFunction v = u;
    v.vanish_slope.reset();
    ConformalSegment generic(cyl, v);

    CHECK(rel_diff(fast.capacity_integral(0.5, 2.0), 6.0 / pi) < 1e-14);
    CHECK(rel_diff(generic.capacity_integral(0.5, 2.0), 6.0 / pi) < 1e-9);
    CHECK(rel_diff(fast.arclength(3.0), generic.arclength(3.0)) < 1e-10);
    const double s = fast.arclength(3.0);
    CHECK(rel_diff(fast.coordinate_at_arclength(s), 3.0) < 1e-13);

    const auto org = fast.origin_data();
    REQUIRE(org.has_value());
    CHECK(org->exponent == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(rel_diff(org->coefficient, 4.0 * pi * std::pow(0.75, 4.0 / 3.0)) < 1e-14);
    const double s0 = 1e-9;
    const double x0 = fast.coordinate_at_arclength(s0);
    CHECK(rel_diff(fast.area(x0) / std::pow(s0, 4.0 / 3.0), org->coefficient) < 1e-10);
}

TEST_CASE("hermite join interpolates and differentiates consistently") {
    HermiteAreaSegment h(0.0, 2.0, 1.0, 0.5, 2.5, 1.0);
    CHECK(rel_diff(h.area(0.0), 4.0 * pi) < 1e-14);
    CHECK(rel_diff(h.area(2.0), 4.0 * pi * 6.25) < 1e-14);
    CHECK(rel_diff(h.darea(0.0), 4.0 * pi) < 1e-13);
    CHECK(rel_diff(h.darea(2.0), 20.0 * pi) < 1e-13);
    const double fd = (h.area(1.0 + 1e-6) - h.area(1.0 - 1e-6)) / 2e-6;
    CHECK(rel_diff(h.darea(1.0), fd) < 1e-8);
    const double fd2 = (h.darea(1.0 + 1e-6) - h.darea(1.0 - 1e-6)) / 2e-6;
    CHECK(rel_diff(h.d2area(1.0), fd2) < 1e-8);
}

TEST_CASE("reparametrization leaves the geometry unchanged") {
    auto iso = std::make_shared<SchwIsotropicSegment>(1.0, 0.5, kInf);
    ReparamSegment rep(iso);
    const double s = iso->arclength(2.0);
    CHECK(rel_diff(rep.area(s), iso->area(2.0)) < 1e-12);
    const double fd = (rep.area(s + 1e-5) - rep.area(s - 1e-5)) / 2e-5;
    CHECK(rel_diff(rep.darea(s), fd) < 1e-6);
    const double fd2 = (rep.darea(s + 1e-5) - rep.darea(s - 1e-5)) / 2e-5;
    CHECK(rel_diff(rep.d2area(s), fd2) < 1e-6);
    CHECK(rel_diff(rep.tail_capacity_integral(s), 0.03183098861837907) < 1e-12);
    CHECK(rep.tail_adm() == 1.0);
    const auto org = ReparamSegment(std::make_shared<SchwZasSegment>(1.0, 0.0, kInf)).origin_data();
    REQUIRE(org.has_value());
    CHECK(org->exponent == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("profile stitches segments in arclength") {
    auto cyl = std::make_shared<CylinderSegment>(4.0 * pi, 0.0, 2.0);
    auto tail = std::make_shared<SchwArealSegment>(0.0, 1.0, kInf);
    RadialProfile prof({cyl, tail});
    CHECK(prof.infinite());
    CHECK(!prof.c1());  // dA/ds jumps from 0 to 8 pi at the join
    CHECK(!prof.zas_boundary());
    CHECK(rel_diff(prof.boundary_area(), 4.0 * pi) < 1e-15);
    CHECK(rel_diff(prof.area(2.5), 9.0 * pi) < 1e-13);
    CHECK(rel_diff(prof.area(2.0 - 1e-13), prof.area(2.0)) < 1e-10);
    CHECK(rel_diff(prof.capacity_integral(0.0, kInf), 3.0 / (4.0 * pi)) < 1e-13);
    CHECK(rel_diff(prof.capacity_integral(1.0, 2.5),
                   1.0 / (4.0 * pi) + (1.0 - 1.0 / 1.5) / (4.0 * pi)) < 1e-13);
    CHECK(prof.adm_mass() == 0.0);
}

TEST_CASE("profile with a zero area boundary") {
    RadialProfile prof({std::make_shared<SchwZasSegment>(1.0, 0.0, kInf)});
    CHECK(prof.zas_boundary());
    REQUIRE(prof.origin().has_value());
    CHECK(prof.origin()->exponent == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(prof.adm_mass() == -2.0);
    const double s1 = prof.segments()[0]->arclength(1.0);
    CHECK(rel_diff(prof.capacity_integral(s1, kInf), 0.07957747154594767) < 1e-12);
}

TEST_CASE("profile validation rejects bad assemblies") {
    auto c1 = std::make_shared<CylinderSegment>(4.0 * pi, 0.0, 1.0);
    auto c2 = std::make_shared<CylinderSegment>(8.0 * pi, 1.0, 2.0);
    CHECK_THROWS_AS(RadialProfile({c1, c2}), Error);
    auto tail = std::make_shared<SchwArealSegment>(0.0, 1.0, kInf);
    CHECK_THROWS_AS(RadialProfile({tail, c1}), Error);
    CHECK_THROWS_AS(RadialProfile({}), Error);
    RadialProfile finite_prof({c1});
    CHECK_THROWS_AS(finite_prof.area(1.5), Error);
    CHECK_THROWS_AS(finite_prof.area(-0.5), Error);
    CHECK_THROWS_AS(finite_prof.capacity_integral(0.0, kInf), Error);
}
