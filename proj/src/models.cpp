#include "zas/models.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zas/errors.hpp"

namespace zas::model {

namespace {

using json = nlohmann::json;
using geom::RadialFunction;
using geom::RadialProfile;
using geom::SegmentPtr;

constexpr double kPi = std::numbers::pi;
constexpr double kInf = num::kInf;

void require_spec(bool cond, const char* msg) {
    if (!cond) throw Error(ErrorCode::InvalidSpec, msg);
}

RadialProfile flat_profile() {
    return RadialProfile(
        {std::make_shared<const geom::PowerAreaSegment>(4.0 * kPi, 2.0, 0.0, kInf)});
}

BuiltModel build_schwarzschild(double m) {
    if (m > 0.0)
        return {RadialProfile({std::make_shared<const geom::SchwIsotropicSegment>(
                    m, m / 2.0, kInf)}),
                std::nullopt};
    if (m == 0.0) return {flat_profile(), std::nullopt};
    const double t0 = -m / 2.0;
    RadialProfile profile({std::make_shared<const geom::SchwZasSegment>(t0, 0.0, kInf)});
    // resolution: flat space outside the sphere of isotropic radius t0, with
    // the harmonic factor 1 + m/(2t) vanishing on that sphere
    RadialProfile background(
        {std::make_shared<const geom::SchwArealSegment>(0.0, t0, kInf)});
    RadialFunction u{
        [t0](double t) { return 1.0 - t0 / t; },
        [t0](double t) { return t0 / (t * t); },
        [t0](double t) { return -2.0 * t0 / (t * t * t); },
        1.0 / t0,
    };
    conf::ConformalPair pair{std::move(background), {{u}, -t0}};
    return {std::move(profile), std::move(pair)};
}

RadialProfile power_law_profile(double alpha) {
    // A = 4 pi s^alpha out to s = 1, then a deterministic C^1 blend of the
    // areal radius onto the flat tail A = 4 pi s^2 from s = 2 on
    std::vector<SegmentPtr> segs;
    segs.push_back(std::make_shared<const geom::PowerAreaSegment>(4.0 * kPi, alpha, 0.0, 1.0));
    segs.push_back(
        std::make_shared<const geom::HermiteAreaSegment>(1.0, 2.0, 1.0, alpha / 2.0, 2.0, 1.0));
    segs.push_back(std::make_shared<const geom::PowerAreaSegment>(4.0 * kPi, 2.0, 2.0, kInf));
    return RadialProfile(std::move(segs));
}

RadialProfile sin_bump_profile(double eps) {
    const double end = 2.0 * kPi;
    const double phi0 = std::sqrt(1.0 + eps);
    std::vector<SegmentPtr> segs;
    segs.push_back(std::make_shared<const geom::SinBumpSegment>(eps));
    segs.push_back(std::make_shared<const geom::HermiteAreaSegment>(
        end, end + 2.0, phi0, 1.0 / (2.0 * phi0), end + 2.0, 1.0));
    segs.push_back(
        std::make_shared<const geom::PowerAreaSegment>(4.0 * kPi, 2.0, end + 2.0, kInf));
    return RadialProfile(std::move(segs));
}

BuiltModel build_cylinder(double mbar, double L) {
    const double q = mbar / 2.0;
    const double k = 1.0 / (L + 4.0 * mbar);
    const double a = L * k;
    const double B = 4.0 * mbar * k;
    const double b = (2.0 * a - 1.0) * mbar;

    // harmonic factor: linear along the neck, Moebius a + B (t-q)/(t+q) on
    // the Schwarzschild exterior; continuous at the horizon where both give a
    RadialFunction u_ext{
        [a, B, q](double t) { return a + B * (t - q) / (t + q); },
        [B, q](double t) {
            const double d = t + q;
            return 2.0 * q * B / (d * d);
        },
        [B, q](double t) {
            const double d = t + q;
            return -4.0 * q * B / (d * d * d);
        },
        std::nullopt,
    };
    if (L == 0.0) u_ext.vanish_slope = B / (2.0 * q);

    std::vector<SegmentPtr> bg;
    conf::ConformalFactor factor;
    if (L > 0.0) {
        bg.push_back(
            std::make_shared<const geom::CylinderSegment>(16.0 * kPi * mbar * mbar, 0.0, L));
        factor.pieces.push_back(RadialFunction{
            [k](double x) { return k * x; },
            [k](double) { return k; },
            [](double) { return 0.0; },
            k,
        });
    }
    bg.push_back(std::make_shared<const geom::SchwIsotropicSegment>(mbar, q, kInf));
    factor.pieces.push_back(std::move(u_ext));
    factor.tail_coefficient = -mbar * B;
    conf::ConformalPair pair{RadialProfile(std::move(bg)), std::move(factor)};

    // the deformed exterior collapses to Schwarzschild of mass b in the same
    // isotropic chart, so the composed metric has an exact closed form
    std::vector<SegmentPtr> comp;
    if (L > 0.0) {
        comp.push_back(std::make_shared<const geom::ConformalSegment>(
            pair.background.segments()[0], pair.factor.pieces[0]));
        comp.push_back(std::make_shared<const geom::SchwIsotropicSegment>(b, q, kInf));
    } else {
        comp.push_back(std::make_shared<const geom::SchwZasSegment>(q, 0.0, kInf));
    }
    return {RadialProfile(std::move(comp)), std::move(pair)};
}

double parse_real(const std::string& text, const char* what) {
    // accepts plain reals and fractions like "4/3"
    try {
        std::size_t used = 0;
        const auto slash = text.find('/');
        if (slash != std::string::npos) {
            const std::string lhs = text.substr(0, slash), rhs = text.substr(slash + 1);
            const double p = std::stod(lhs, &used);
            if (used != lhs.size()) throw std::invalid_argument(text);
            const double den = std::stod(rhs, &used);
            if (used != rhs.size() || den == 0.0) throw std::invalid_argument(text);
            return p / den;
        }
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError,
                    std::string("cannot parse ") + what + " from '" + text + "'");
    }
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = s.find(',', pos);
        out.push_back(s.substr(pos, comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

// ------------------------------------------------------------ profile files

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open profile file: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
    }
}

void reject_unknown(const json& obj, const char* ctx,
                    std::initializer_list<const char*> allowed) {
    if (!obj.is_object())
        throw Error(ErrorCode::ParseError, std::string(ctx) + " must be an object");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) known = true;
        if (!known)
            throw Error(ErrorCode::ParseError,
                        "unknown field '" + item.key() + "' in " + ctx);
    }
}

const json& get_field(const json& obj, const char* ctx, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end())
        throw Error(ErrorCode::ParseError,
                    std::string(ctx) + " is missing field '" + key + "'");
    return *it;
}

double get_number(const json& obj, const char* ctx, const char* key) {
    const json& v = get_field(obj, ctx, key);
    if (!v.is_number())
        throw Error(ErrorCode::ParseError,
                    std::string("field '") + key + "' in " + ctx + " must be a number");
    return v.get<double>();
}

std::string get_string(const json& obj, const char* ctx, const char* key) {
    const json& v = get_field(obj, ctx, key);
    if (!v.is_string())
        throw Error(ErrorCode::ParseError,
                    std::string("field '") + key + "' in " + ctx + " must be a string");
    return v.get<std::string>();
}

SegmentPtr make_segment(const std::string& kind, const json& params, double a, double b) {
    const std::string ctx = "params of kind '" + kind + "'";
    auto num = [&](const char* key) { return get_number(params, ctx.c_str(), key); };
    if (kind == "power_area") {
        reject_unknown(params, ctx.c_str(), {"coeff", "alpha"});
        return std::make_shared<const geom::PowerAreaSegment>(num("coeff"), num("alpha"), a, b);
    }
    if (kind == "cylinder") {
        reject_unknown(params, ctx.c_str(), {"area0"});
        return std::make_shared<const geom::CylinderSegment>(num("area0"), a, b);
    }
    if (kind == "sin_bump") {
        reject_unknown(params, ctx.c_str(), {"eps"});
        if (std::abs(a) > 1e-12 || std::abs(b - 2.0 * kPi) > 1e-9)
            throw Error(ErrorCode::ValidationError, "sin bump segments cover exactly [0, 2 pi]");
        return std::make_shared<const geom::SinBumpSegment>(num("eps"));
    }
    if (kind == "hermite_phi") {
        reject_unknown(params, ctx.c_str(), {"phi0", "dphi0", "phi1", "dphi1"});
        return std::make_shared<const geom::HermiteAreaSegment>(
            a, b, num("phi0"), num("dphi0"), num("phi1"), num("dphi1"));
    }
    if (kind == "schwarzschild_isotropic") {
        reject_unknown(params, ctx.c_str(), {"mass"});
        return std::make_shared<const geom::SchwIsotropicSegment>(num("mass"), a, b);
    }
    if (kind == "schwarzschild_areal") {
        reject_unknown(params, ctx.c_str(), {"mass"});
        return std::make_shared<const geom::SchwArealSegment>(num("mass"), a, b);
    }
    if (kind == "schwarzschild_zas") {
        reject_unknown(params, ctx.c_str(), {"t0"});
        return std::make_shared<const geom::SchwZasSegment>(num("t0"), a, b);
    }
    throw Error(ErrorCode::ParseError, "unknown segment kind '" + kind + "'");
}

}  // namespace

ModelSpec ModelSpec::flat() { return {}; }
ModelSpec ModelSpec::schwarzschild(double m) {
    ModelSpec s;
    s.kind = Kind::Schwarzschild;
    s.mass = m;
    return s;
}
ModelSpec ModelSpec::power_law_zas(double alpha) {
    ModelSpec s;
    s.kind = Kind::PowerLawZas;
    s.alpha = alpha;
    return s;
}
ModelSpec ModelSpec::schwarzschild_with_cylinder(double mbar, double L) {
    ModelSpec s;
    s.kind = Kind::SchwarzschildWithCylinder;
    s.mbar = mbar;
    s.length = L;
    return s;
}
ModelSpec ModelSpec::sin_bump(double eps) {
    ModelSpec s;
    s.kind = Kind::SinBump;
    s.eps = eps;
    return s;
}
ModelSpec ModelSpec::custom(std::string file) {
    ModelSpec s;
    s.kind = Kind::Custom;
    s.file = std::move(file);
    return s;
}

ModelSpec parse_model_spec(const std::string& text) {
    const auto eq = text.find('=');
    const std::string name = text.substr(0, eq);
    const std::string argtext = eq == std::string::npos ? "" : text.substr(eq + 1);
    auto args = [&](std::size_t n, const char* example) {
        std::vector<std::string> parts;
        if (eq != std::string::npos) parts = split_csv(argtext);
        if (parts.size() != n)
            throw Error(ErrorCode::ParseError,
                        "model '" + name + "' expects the form " + example);
        return parts;
    };
    if (name == "flat") {
        args(0, "flat");
        return ModelSpec::flat();
    }
    if (name == "schwarzschild") {
        const auto a = args(1, "schwarzschild=<m>");
        return ModelSpec::schwarzschild(parse_real(a[0], "mass"));
    }
    if (name == "power_law_zas") {
        const auto a = args(1, "power_law_zas=<alpha>");
        return ModelSpec::power_law_zas(parse_real(a[0], "alpha"));
    }
    if (name == "schwarzschild_with_cylinder") {
        const auto a = args(2, "schwarzschild_with_cylinder=<mbar>,<L>");
        return ModelSpec::schwarzschild_with_cylinder(parse_real(a[0], "mbar"),
                                                      parse_real(a[1], "L"));
    }
    if (name == "sin_bump") {
        const auto a = args(1, "sin_bump=<eps>");
        return ModelSpec::sin_bump(parse_real(a[0], "eps"));
    }
    if (name == "custom") {
        if (eq == std::string::npos || argtext.empty())
            throw Error(ErrorCode::ParseError, "model 'custom' expects the form custom=<file>");
        return ModelSpec::custom(argtext);
    }
    throw Error(ErrorCode::ParseError, "unknown model '" + name + "'");
}

std::string describe(const ModelSpec& spec) {
    char buf[192];
    switch (spec.kind) {
        case ModelSpec::Kind::Flat:
            return "flat";
        case ModelSpec::Kind::Schwarzschild:
            std::snprintf(buf, sizeof buf, "schwarzschild(m=%.10g)", spec.mass);
            break;
        case ModelSpec::Kind::PowerLawZas:
            std::snprintf(buf, sizeof buf, "power_law_zas(alpha=%.10g)", spec.alpha);
            break;
        case ModelSpec::Kind::SchwarzschildWithCylinder:
            std::snprintf(buf, sizeof buf, "schwarzschild_with_cylinder(mbar=%.10g, L=%.10g)",
                          spec.mbar, spec.length);
            break;
        case ModelSpec::Kind::SinBump:
            std::snprintf(buf, sizeof buf, "sin_bump(eps=%.10g)", spec.eps);
            break;
        case ModelSpec::Kind::Custom:
            return "custom(" + spec.file + ")";
    }
    return buf;
}

BuiltModel build(const ModelSpec& spec) {
    switch (spec.kind) {
        case ModelSpec::Kind::Flat:
            return {flat_profile(), std::nullopt};
        case ModelSpec::Kind::Schwarzschild:
            require_spec(std::isfinite(spec.mass), "schwarzschild mass must be finite");
            return build_schwarzschild(spec.mass);
        case ModelSpec::Kind::PowerLawZas:
            require_spec(std::isfinite(spec.alpha) && spec.alpha > 0.0,
                         "power law needs alpha > 0");
            return {power_law_profile(spec.alpha), std::nullopt};
        case ModelSpec::Kind::SchwarzschildWithCylinder:
            require_spec(std::isfinite(spec.mbar) && spec.mbar > 0.0,
                         "cylinder splice needs mbar > 0");
            require_spec(std::isfinite(spec.length) && spec.length >= 0.0,
                         "cylinder splice needs L >= 0");
            return build_cylinder(spec.mbar, spec.length);
        case ModelSpec::Kind::SinBump:
            require_spec(std::isfinite(spec.eps) && spec.eps > 0.0, "sin bump needs eps > 0");
            return {sin_bump_profile(spec.eps), std::nullopt};
        case ModelSpec::Kind::Custom:
            require_spec(!spec.file.empty(), "custom model needs a file path");
            return {load_profile(spec.file), std::nullopt};
    }
    throw Error(ErrorCode::InvalidSpec, "unknown model kind");
}

CylinderReference cylinder_reference(double mbar, double L) {
    require_spec(std::isfinite(mbar) && mbar > 0.0, "cylinder splice needs mbar > 0");
    require_spec(std::isfinite(L) && L >= 0.0, "cylinder splice needs L >= 0");
    const double k = 1.0 / (L + 4.0 * mbar);
    const double a = L * k;
    return {a, (2.0 * a - 1.0) * mbar, -16.0 * mbar * mbar * mbar * k * k};
}

RadialProfile load_profile(const std::string& path) {
    const json root = parse_file(path);
    reject_unknown(root, "profile", {"coordinate", "segments", "tail"});

    const json& coord = get_field(root, "profile", "coordinate");
    reject_unknown(coord, "coordinate", {"name", "start"});
    get_string(coord, "coordinate", "name");
    double cursor = get_number(coord, "coordinate", "start");

    const json& segments = get_field(root, "profile", "segments");
    if (!segments.is_array())
        throw Error(ErrorCode::ParseError, "'segments' must be an array");

    if (!root.contains("tail"))
        throw Error(ErrorCode::ValidationError, "profile must declare an asymptotic tail");
    const json& tail = root.at("tail");
    reject_unknown(tail, "tail", {"kind", "params"});
    if (!tail.contains("kind"))
        throw Error(ErrorCode::ValidationError, "tail must name a kind");

    std::vector<SegmentPtr> segs;
    for (const json& s : segments) {
        reject_unknown(s, "segment", {"kind", "params", "interval"});
        const std::string kind = get_string(s, "segment", "kind");
        const json& iv = get_field(s, "segment", "interval");
        if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
            throw Error(ErrorCode::ParseError, "segment interval must be [a, b]");
        const double a = iv[0].get<double>(), b = iv[1].get<double>();
        if (!(b > a))
            throw Error(ErrorCode::ValidationError, "segment interval must be increasing");
        if (std::abs(a - cursor) > 1e-12 * (1.0 + std::abs(cursor)))
            throw Error(ErrorCode::ValidationError,
                        "segment intervals must chain from the coordinate start");
        segs.push_back(make_segment(kind, get_field(s, "segment", "params"), a, b));
        cursor = b;
    }

    const std::string tail_kind = get_string(tail, "tail", "kind");
    if (tail_kind == "cylinder" || tail_kind == "sin_bump" || tail_kind == "hermite_phi")
        throw Error(ErrorCode::ValidationError, "tail kind must be asymptotically flat");
    segs.push_back(make_segment(tail_kind, get_field(tail, "tail", "params"), cursor, kInf));
    return RadialProfile(std::move(segs));
}

}  // namespace zas::model
