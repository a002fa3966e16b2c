#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "zas/conformal.hpp"
#include "zas/geometry.hpp"
#include "zas/models.hpp"

using namespace zas;
using doctest::Approx;
using model::ModelSpec;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 12.566370614359172;

std::string write_temp(const char* name, const std::string& text) {
    std::string path = std::string("/tmp/") + name;
    std::ofstream out(path);
    out << text;
    return path;
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    throw std::logic_error("expected a zas::Error");
}

}  // namespace

TEST_CASE("cylinder reference closed forms") {
    auto r = model::cylinder_reference(1.0, 0.0);
    CHECK(r.a == 0.0);
    CHECK(r.b == -1.0);
    CHECK(r.zas_mass == -1.0);

    r = model::cylinder_reference(1.0, 4.0);
    CHECK(r.a == 0.5);
    CHECK(r.b == 0.0);
    CHECK(r.zas_mass == -0.25);

    r = model::cylinder_reference(1.0, 12.0);
    CHECK(r.a == 0.75);
    CHECK(r.b == 0.5);
    CHECK(r.zas_mass == -0.0625);
}

TEST_CASE("model adm masses match their parameters") {
    CHECK(geom::adm_mass(model::build(ModelSpec::flat()).profile) == 0.0);
    CHECK(geom::adm_mass(model::build(ModelSpec::schwarzschild(2.0)).profile) == 2.0);
    CHECK(geom::adm_mass(model::build(ModelSpec::schwarzschild(-1.0)).profile) == -1.0);
    CHECK(geom::adm_mass(model::build(ModelSpec::power_law_zas(1.5)).profile) == 0.0);
    CHECK(geom::adm_mass(model::build(ModelSpec::sin_bump(0.3)).profile) == 0.0);

    for (double mbar : {0.5, 1.0, 2.0}) {
        for (double L : {0.0, 4.0}) {
            const auto built = model::build(ModelSpec::schwarzschild_with_cylinder(mbar, L));
            const auto ref = model::cylinder_reference(mbar, L);
            CHECK(geom::adm_mass(built.profile) == Approx(ref.b).epsilon(1e-12));
            REQUIRE(built.pair);
            CHECK(geom::adm_mass(built.pair->background) == Approx(mbar).epsilon(1e-12));
            CHECK(conf::adm_mass_shift(*built.pair) ==
                  Approx(mbar - ref.b).epsilon(1e-12));
        }
    }
}

TEST_CASE("composed cylinder metric agrees with its conformal pair") {
    const auto built = model::build(ModelSpec::schwarzschild_with_cylinder(1.0, 4.0));
    REQUIRE(built.pair);
    const auto composed = conf::compose(*built.pair);
    CHECK(geom::adm_mass(composed) == Approx(0.0).epsilon(1e-10));
    // same metric in different charts: areas agree at equal arclength
    for (double s : {0.005, 0.02, 0.5, 3.0}) {
        CHECK(composed.area(s) == Approx(built.profile.area(s)).epsilon(1e-9));
    }
    // boundary expansion is declared on both
    const auto o1 = geom::origin_estimate(built.profile);
    const auto o2 = geom::origin_estimate(composed);
    CHECK(o1.declared);
    CHECK(o2.declared);
    CHECK(o1.exponent == Approx(4.0 / 3.0));
    CHECK(o1.coefficient == Approx(o2.coefficient).epsilon(1e-12));
}

TEST_CASE("cylinder grid: mass inequality with equality exactly at L = 0") {
    for (double mbar : {0.5, 1.0, 2.0}) {
        for (double L : {0.0, 1.0, 4.0, 10.0}) {
            CAPTURE(mbar);
            CAPTURE(L);
            const auto built = model::build(ModelSpec::schwarzschild_with_cylinder(mbar, L));
            const auto ref = model::cylinder_reference(mbar, L);
            const auto ineq = geom::check_zas_inequality(built.profile);
            CHECK(ineq.holds);
            CHECK(ineq.equality == (L == 0.0));
            CHECK(ineq.adm == Approx(ref.b).epsilon(1e-10));
            REQUIRE(ineq.zas_mass.finite());
            CHECK(ineq.zas_mass.value() == Approx(ref.zas_mass).epsilon(1e-6));
            if (L > 4.0 * mbar) {
                CHECK(ineq.adm > 0.0);
                CHECK(ineq.zas_mass.value() < 0.0);
            }
        }
    }
}

TEST_CASE("composed cylinder classifies as a harmonically regular ZAS") {
    const auto built = model::build(ModelSpec::schwarzschild_with_cylinder(1.0, 4.0));
    const auto rep = geom::classify_zas(built.profile);
    CHECK(rep.is_zas);
    CHECK(rep.exponent == Approx(4.0 / 3.0));
    CHECK(rep.capacity.sign == geom::CapacitySign::Zero);
    CHECK(rep.regular);
    CHECK(rep.harmonically_regular);
    CHECK(!rep.removable);
    REQUIRE(rep.mass.finite());
    CHECK(rep.mass.value() == Approx(-0.25).epsilon(1e-6));
}

TEST_CASE("negative mass schwarzschild ships its resolution") {
    const auto built = model::build(ModelSpec::schwarzschild(-2.0));
    REQUIRE(built.pair);
    CHECK(conf::factor_value(*built.pair, 0.0) == 0.0);
    CHECK(conf::tail_coefficient(*built.pair) == -1.0);
    CHECK(conf::adm_mass_shift(*built.pair) == 2.0);

    const auto composed = conf::compose(*built.pair);
    CHECK(geom::adm_mass(composed) == Approx(-2.0).epsilon(1e-12));
    for (double s : {0.3, 1.7, 6.0}) {
        CHECK(composed.area(s) == Approx(built.profile.area(s)).epsilon(1e-9));
    }

    // the factor is harmonic for the flat background, so the resolution test
    // must accept it
    const double t0 = 1.0;
    geom::RadialFunction phibar{
        [=](double r) { return r / (t0 + r); },
        [=](double r) { return t0 / ((t0 + r) * (t0 + r)); },
        [=](double r) { return -2.0 * t0 / ((t0 + r) * (t0 + r) * (t0 + r)); },
        std::nullopt,
    };
    const auto res = conf::harmonic_resolution_test(built.pair->background, phibar);
    CHECK(res.harmonically_regular);
    CHECK(std::abs(res.log_slope) < 1e-3);
}

TEST_CASE("power law models reproduce their table rows") {
    const auto third = geom::classify_zas(model::build(ModelSpec::power_law_zas(4.0 / 3.0)).profile);
    CHECK(third.regular);
    CHECK(third.harmonically_regular);
    CHECK(!third.removable);
    CHECK(third.capacity.sign == geom::CapacitySign::Zero);
    REQUIRE(third.mass.finite());
    CHECK(third.mass.value() == Approx(-2.0 / 9.0).epsilon(1e-9));

    const auto flat_point = geom::classify_zas(model::build(ModelSpec::power_law_zas(2.0)).profile);
    CHECK(flat_point.removable);
    CHECK(!flat_point.regular);
    CHECK(flat_point.mass.value() == 0.0);
    // the alpha = 2 blend degenerates to exactly flat space
    const auto flat2 = model::build(ModelSpec::power_law_zas(2.0)).profile;
    CHECK(flat2.area(1.5) == Approx(kFourPi * 2.25).epsilon(1e-14));

    const auto half = geom::classify_zas(model::build(ModelSpec::power_law_zas(0.5)).profile);
    CHECK(half.capacity.sign == geom::CapacitySign::Positive);
    CHECK(!half.mass.finite());
}

TEST_CASE("sin bump boundary data is exact") {
    for (double eps : {0.1, 0.9}) {
        const auto p = model::build(ModelSpec::sin_bump(eps)).profile;
        CHECK(p.boundary_area() == Approx(kFourPi * (1.0 + eps)).epsilon(1e-14));
        CHECK(geom::mean_curvature(p, 0.0) == Approx(1.0 / (1.0 + eps)).epsilon(1e-14));
        CHECK(geom::adm_mass(p) == 0.0);
    }
    const auto forced = conf::min_boundary_conformal_factor(
        model::build(ModelSpec::sin_bump(0.1)).profile);
    CHECK(forced.ratio == Approx(-0.25 / 1.1).epsilon(1e-12));
    CHECK(forced.first_zero.has_value());
}

TEST_CASE("model spec strings parse") {
    CHECK(model::parse_model_spec("flat").kind == ModelSpec::Kind::Flat);
    const auto schw = model::parse_model_spec("schwarzschild=-1");
    CHECK(schw.kind == ModelSpec::Kind::Schwarzschild);
    CHECK(schw.mass == -1.0);
    CHECK(model::parse_model_spec("power_law_zas=4/3").alpha == 4.0 / 3.0);
    const auto cyl = model::parse_model_spec("schwarzschild_with_cylinder=1,4");
    CHECK(cyl.mbar == 1.0);
    CHECK(cyl.length == 4.0);
    CHECK(model::parse_model_spec("sin_bump=0.5").eps == 0.5);
    CHECK(model::parse_model_spec("custom=/tmp/p.json").file == "/tmp/p.json");

    CHECK(code_of([] { model::parse_model_spec("bogus"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { model::parse_model_spec("schwarzschild"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { model::parse_model_spec("schwarzschild_with_cylinder=1"); }) ==
          ErrorCode::ParseError);
    CHECK(code_of([] { model::parse_model_spec("power_law_zas=abc"); }) ==
          ErrorCode::ParseError);
}

TEST_CASE("model spec invariants are enforced") {
    CHECK(code_of([] { model::build(ModelSpec::power_law_zas(0.0)); }) ==
          ErrorCode::InvalidSpec);
    CHECK(code_of([] { model::build(ModelSpec::schwarzschild_with_cylinder(0.0, 1.0)); }) ==
          ErrorCode::InvalidSpec);
    CHECK(code_of([] { model::build(ModelSpec::schwarzschild_with_cylinder(1.0, -1.0)); }) ==
          ErrorCode::InvalidSpec);
    CHECK(code_of([] { model::build(ModelSpec::sin_bump(0.0)); }) == ErrorCode::InvalidSpec);
    CHECK(code_of([] { model::build(ModelSpec::custom("")); }) == ErrorCode::InvalidSpec);
    CHECK(model::describe(ModelSpec::schwarzschild_with_cylinder(1.0, 4.0)) ==
          "schwarzschild_with_cylinder(mbar=1, L=4)");
}

TEST_CASE("profile files: flat minus a point loads and is removable") {
    const auto path = write_temp("zas_flat_point.json", R"({
        "coordinate": {"name": "s", "start": 0.0},
        "segments": [],
        "tail": {"kind": "power_area", "params": {"coeff": 12.566370614359172, "alpha": 2.0}}
    })");
    const auto p = model::load_profile(path);
    CHECK(geom::adm_mass(p) == 0.0);
    const auto rep = geom::classify_zas(p);
    CHECK(rep.removable);
    CHECK(rep.mass.value() == 0.0);
}

TEST_CASE("profile files: segments chain into the tail") {
    const auto path = write_temp("zas_chain.json", R"({
        "coordinate": {"name": "s", "start": 0.0},
        "segments": [
            {"kind": "power_area", "params": {"coeff": 12.566370614359172, "alpha": 1.0},
             "interval": [0.0, 1.0]}
        ],
        "tail": {"kind": "power_area", "params": {"coeff": 12.566370614359172, "alpha": 2.0}}
    })");
    const auto p = model::load_profile(path);
    CHECK(p.area(0.5) == Approx(kFourPi * 0.5).epsilon(1e-14));
    CHECK(p.area(3.0) == Approx(kFourPi * 9.0).epsilon(1e-14));
    CHECK(geom::adm_mass(p) == 0.0);
}

TEST_CASE("profile files: strict parsing and named validation failures") {
    auto load_text = [](const char* name, const std::string& text) {
        const auto path = write_temp(name, text);
        return [path] { model::load_profile(path); };
    };

    CHECK(code_of(load_text("zas_bad_json.json", "{ not json")) == ErrorCode::ParseError);

    CHECK(code_of(load_text("zas_unknown_top.json", R"({
        "coordinate": {"name": "s", "start": 0.0},
        "segments": [],
        "tail": {"kind": "power_area", "params": {"coeff": 12.566, "alpha": 2.0}},
        "color": "red"
    })")) == ErrorCode::ParseError);

    CHECK(code_of(load_text("zas_unknown_param.json", R"({
        "coordinate": {"name": "s", "start": 0.0},
        "segments": [],
        "tail": {"kind": "power_area", "params": {"coeff": 12.566, "alpha": 2.0, "beta": 1.0}}
    })")) == ErrorCode::ParseError);

    try {
        model::load_profile(write_temp("zas_no_tail.json", R"({
            "coordinate": {"name": "s", "start": 0.0},
            "segments": []
        })"));
        FAIL("expected ValidationError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ValidationError);
        CHECK(std::string(e.what()).find("tail") != std::string::npos);
    }

    CHECK(code_of(load_text("zas_gap.json", R"({
        "coordinate": {"name": "s", "start": 0.0},
        "segments": [
            {"kind": "power_area", "params": {"coeff": 12.566370614359172, "alpha": 2.0},
             "interval": [0.5, 1.0]}
        ],
        "tail": {"kind": "power_area", "params": {"coeff": 12.566370614359172, "alpha": 2.0}}
    })")) == ErrorCode::ValidationError);

    CHECK(code_of(load_text("zas_neg_area.json", R"({
        "coordinate": {"name": "s", "start": 1.0},
        "segments": [
            {"kind": "hermite_phi",
             "params": {"phi0": 1.0, "dphi0": -20.0, "phi1": 1.0, "dphi1": 0.0},
             "interval": [1.0, 2.0]}
        ],
        "tail": {"kind": "power_area", "params": {"coeff": 12.566370614359172, "alpha": 2.0}}
    })")) == ErrorCode::ValidationError);

    CHECK(code_of(load_text("zas_cyl_tail.json", R"({
        "coordinate": {"name": "s", "start": 0.0},
        "segments": [],
        "tail": {"kind": "cylinder", "params": {"area0": 12.566}}
    })")) == ErrorCode::ValidationError);

    CHECK(code_of(load_text("zas_join_gap.json", R"({
        "coordinate": {"name": "s", "start": 0.0},
        "segments": [
            {"kind": "cylinder", "params": {"area0": 15.707963267948966},
             "interval": [0.0, 1.0]}
        ],
        "tail": {"kind": "power_area", "params": {"coeff": 12.566370614359172, "alpha": 2.0}}
    })")) == ErrorCode::ValidationError);
}
