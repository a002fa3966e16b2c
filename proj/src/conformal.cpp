#include "zas/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "zas/geometry.hpp"
#include "zas/ode.hpp"
#include "zas/quadrature.hpp"

namespace zas::conf {

using geom::RadialFunction;
using geom::RadialProfile;
using geom::SegmentPtr;

namespace {

constexpr double kPi = std::numbers::pi;

void check_shape(const ConformalPair& cp) {
    const auto& pieces = cp.factor.pieces;
    if (pieces.size() != cp.background.segments().size())
        throw Error(ErrorCode::InvalidSpec, "need one factor piece per background segment");
    for (const auto& u : pieces)
        if (!u.value || !u.deriv)
            throw Error(ErrorCode::InvalidSpec, "factor pieces need a value and a derivative");
}

}  // namespace

double factor_value(const ConformalPair& cp, double s) {
    check_shape(cp);
    const auto loc = cp.background.locate(s);
    return cp.factor.pieces[loc.index].value(loc.x);
}

double tail_coefficient(const ConformalPair& cp) {
    check_shape(cp);
    if (cp.factor.tail_coefficient) return *cp.factor.tail_coefficient;
    if (!cp.background.infinite())
        throw Error(ErrorCode::DomainError, "background has no asymptotically flat end");
    const auto& u = cp.factor.pieces.back();
    const double x0 = cp.background.segments().back()->x0();
    const double base = std::max(1.0, 2.0 * std::abs(x0));
    auto c_at = [&u](double x) { return x * (u.value(x) - 1.0); };
    // Richardson on c(x) = x (u - 1) along doubling radii kills the next
    // order of the expansion
    double prev = std::numeric_limits<double>::quiet_NaN();
    double ck = c_at(base);
    for (int k = 0; k < 40; ++k) {
        const double cnext = c_at(base * std::pow(2.0, k + 1));
        const double rich = 2.0 * cnext - ck;
        if (k > 0 && std::abs(rich - prev) <= 1e-8 * (1.0 + std::abs(rich))) return rich;
        prev = rich;
        ck = cnext;
    }
    throw Error(ErrorCode::NoExpansion, "factor does not behave like 1 + c/x on the tail");
}

double adm_mass_shift(const ConformalPair& cp) { return -2.0 * tail_coefficient(cp); }

RadialProfile compose(const ConformalPair& cp) {
    check_shape(cp);
    const auto& segs = cp.background.segments();
    const auto& pieces = cp.factor.pieces;
    std::vector<SegmentPtr> out;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const auto& seg = segs[i];
        const auto& u = pieces[i];
        const double lo = seg->x0();
        const double hi = seg->infinite() ? lo + 8.0 * (std::abs(lo) + 1.0) : seg->x1();
        // the factor may vanish at the inner boundary only
        for (int k = (i == 0 ? 1 : 0); k <= 32; ++k) {
            const double x = lo + (hi - lo) * k / 32.0;
            if (!(u.value(x) > 0.0))
                throw Error(ErrorCode::FactorVanishesInterior,
                            "conformal factor vanishes away from the inner boundary");
        }
        if (i + 1 == segs.size() && seg->infinite())
            out.push_back(
                std::make_shared<const geom::ConformalSegment>(seg, u, tail_coefficient(cp)));
        else
            out.push_back(std::make_shared<const geom::ConformalSegment>(seg, u));
    }
    return RadialProfile(std::move(out));
}

double conformal_laplacian_residual(const ConformalPair& cp,
                                    const std::function<double(double)>& phi, double r, double h) {
    if (!(h > 0.0)) throw Error(ErrorCode::DomainError, "step must be positive");
    const RadialProfile composed = compose(cp);
    const RadialProfile& bg = cp.background;

    auto s2_of = [&](double s) {
        const auto loc = bg.locate(s);
        return composed.seg_start(loc.index) + composed.segments()[loc.index]->arclength(loc.x);
    };
    auto sbar_of = [&](double s2) {
        const auto loc = composed.locate(s2);
        return bg.seg_start(loc.index) + bg.segments()[loc.index]->arclength(loc.x);
    };
    auto ubar = [&](double s) { return factor_value(cp, s); };

    // radial Laplacian in each metric's own arclength: f'' + (A'/A) f'
    auto lap1 = [&](const std::function<double(double)>& g, double s) {
        const double gp = (g(s + h) - g(s - h)) / (2.0 * h);
        const double gpp = (g(s + h) - 2.0 * g(s) + g(s - h)) / (h * h);
        return gpp + bg.darea_ds(s) / bg.area(s) * gp;
    };
    auto phi2 = [&](double s2) { return phi(sbar_of(s2)); };
    const double s2r = s2_of(r);
    const double gp2 = (phi2(s2r + h) - phi2(s2r - h)) / (2.0 * h);
    const double gpp2 = (phi2(s2r + h) - 2.0 * phi2(s2r) + phi2(s2r - h)) / (h * h);
    const double lap2 = gpp2 + composed.darea_ds(s2r) / composed.area(s2r) * gp2;

    const double u = ubar(r);
    const double u5 = u * u * u * u * u;
    auto uphi = [&](double s) { return ubar(s) * phi(s); };
    return lap1(uphi, r) - u5 * lap2 - phi(r) * lap1([&](double s) { return ubar(s); }, r);
}

double conformal_scalar_curvature(double u, double lap_u, double r1) {
    if (!(u > 0.0)) throw Error(ErrorCode::DomainError, "conformal factor must be positive");
    const double u5 = u * u * u * u * u;
    return (-8.0 * lap_u + r1 * u) / u5;
}

double conformal_mean_curvature(double u, double nu_u, double h1) {
    if (!(u > 0.0)) throw Error(ErrorCode::DomainError, "conformal factor must be positive");
    return h1 / (u * u) + 4.0 * nu_u / (u * u * u);
}

HarmonicTestResult harmonic_resolution_test(const RadialProfile& background,
                                            const RadialFunction& phibar) {
    if (!phibar.value || !phibar.deriv || !phibar.second)
        throw Error(ErrorCode::ResolutionInvalid, "phibar needs two derivatives");
    const double r1 = background.infinite() ? 1.0 : std::min(1.0, background.s_end());
    if (!(r1 > 2e-3))
        throw Error(ErrorCode::ResolutionInvalid, "background chart too short for the fit window");
    const double scale1 = phibar.value(r1);
    if (!(scale1 > 0.0))
        throw Error(ErrorCode::ResolutionInvalid, "phibar must be positive away from the boundary");
    if (!(std::abs(phibar.value(0.0)) <= 1e-6 * scale1))
        throw Error(ErrorCode::ResolutionInvalid, "phibar does not vanish at the boundary");
    for (int k = 1; k < 16; ++k)
        if (!(phibar.value(r1 * k / 16.0) > 0.0))
            throw Error(ErrorCode::ResolutionInvalid,
                        "phibar must be positive away from the boundary");

    auto pcoef = [&background](double r) { return background.darea_ds(r) / background.area(r); };
    auto qcoef = [&, pcoef](double r) {
        return -(phibar.second(r) + pcoef(r) * phibar.deriv(r)) / phibar.value(r);
    };
    const num::RadialOde ode{pcoef, qcoef};

    const double r_min = 1e-8;
    const double w_lo = 1e-6, w_hi = 1e-3;
    num::OdeOptions opts;
    for (int j = 0; j < 25; ++j) opts.output.push_back(w_lo * std::pow(w_hi / w_lo, j / 24.0));

    struct Basis {
        std::vector<num::OdeSample> win;
        double v_end = 0.0;
    };
    auto run = [&](double u0, double du0) {
        Basis b;
        for (const auto& smp : num::solve_radial_ode(ode, r1, r_min, u0, du0, opts)) {
            if (smp.r >= w_lo * 0.999 && smp.r <= w_hi * 1.001) b.win.push_back(smp);
            b.v_end = smp.u;
        }
        return b;
    };
    const Basis b1 = run(1.0, 0.0);
    const Basis b2 = run(0.0, 1.0);
    if (b1.win.size() < 10 || b2.win.size() != b1.win.size())
        throw Error(ErrorCode::ResolutionInvalid, "fit window was not sampled");

    // least squares du ~ kappa log r + const over the window
    auto slope_of = [](const std::vector<num::OdeSample>& win) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& smp : win) {
            const double x = std::log(smp.r);
            sx += x;
            sy += smp.du;
            sxx += x * x;
            sxy += x * smp.du;
        }
        const double n = double(win.size());
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    const double k1 = slope_of(b1.win), k2 = slope_of(b2.win);

    // the slope is linear in the combination; normalize the boundary value
    // to one and read it off that solution
    const double v1 = b1.v_end, v2 = b2.v_end;
    const double vn = v1 * v1 + v2 * v2;
    if (!(vn > 0.0) || !std::isfinite(vn))
        throw Error(ErrorCode::ResolutionInvalid, "solution basis degenerates at the boundary");
    const double kappa = (v1 * k1 + v2 * k2) / vn;
    return {std::abs(kappa) <= 1e-3, kappa};
}

HarmonicTestResult canonical_harmonic_test(const RadialProfile& p) {
    if (!p.zas_boundary())
        throw Error(ErrorCode::DomainError, "inner boundary is not a ZAS");
    const auto est = geom::origin_estimate(p);
    if (est.exponent >= 2.0)
        throw Error(ErrorCode::ResolutionInvalid, "no cylindrical chart reaches the boundary");
    const auto& first = *p.segments().front();

    // rbar is arclength on the round cylinder of area 4pi: drbar = sqrt(4pi/A) ds
    std::function<double(double)> s_of;
    double rbar_max = 0.0;
    if (const auto* pw = dynamic_cast<const geom::PowerAreaSegment*>(&first)) {
        const double e = 1.0 - 0.5 * pw->alpha();
        const double k = std::sqrt(4.0 * kPi / pw->coeff());
        s_of = [e, k](double rbar) { return rbar > 0.0 ? std::pow(rbar * e / k, 1.0 / e) : 0.0; };
        rbar_max =
            first.infinite() ? num::kInf : k * std::pow(first.x1() - first.x0(), e) / e;
    } else if (const auto* sz = dynamic_cast<const geom::SchwZasSegment*>(&first)) {
        const double t0 = sz->t0();
        s_of = [&first, t0](double rbar) { return first.arclength(t0 * std::expm1(rbar)); };
        rbar_max = first.infinite() ? num::kInf : std::log1p(first.x1() / t0);
    } else if (const auto* cf = dynamic_cast<const geom::ConformalSegment*>(&first);
               cf && cf->factor().vanish_slope &&
               dynamic_cast<const geom::CylinderSegment*>(&cf->base()) != nullptr) {
        const double a0 = dynamic_cast<const geom::CylinderSegment&>(cf->base()).area0();
        const double c = std::sqrt(a0 / (4.0 * kPi));
        const double x0 = first.x0();
        s_of = [&first, c, x0](double rbar) { return first.arclength(x0 + c * rbar); };
        rbar_max = (first.x1() - x0) / c;
    } else {
        // generic chart: tabulate rbar(s) once and invert through log-log
        // interpolation
        const double span =
            first.infinite()
                ? first.arclength(first.x0() + 8.0 * (std::abs(first.x0()) + 1.0))
                : first.arclength(first.x1());
        const int n = 481;
        auto sval = [span, n](int j) {
            return span * std::pow(10.0, -30.0 + 30.0 * j / double(n - 1));
        };
        auto integrand = [&p](double sig) { return std::sqrt(4.0 * kPi / p.area(sig)); };
        std::vector<double> sj(n), rj(n);
        sj[0] = sval(0);
        rj[0] = num::integrate(
            num::Quadrant(integrand, 0.0, sj[0], -0.5 * est.exponent, std::nullopt));
        for (int j = 1; j < n; ++j) {
            sj[j] = sval(j);
            rj[j] = rj[j - 1] + num::integrate(num::Quadrant(integrand, sj[j - 1], sj[j]));
        }
        rbar_max = rj[n - 1];
        const double head = 1.0 / (1.0 - 0.5 * est.exponent);
        s_of = [sj, rj, head](double rbar) {
            if (!(rbar > 0.0)) return 0.0;
            if (rbar <= rj[0]) return sj[0] * std::pow(rbar / rj[0], head);
            const auto it = std::lower_bound(rj.begin(), rj.end(), rbar);
            const std::size_t hi = std::min<std::size_t>(it - rj.begin(), rj.size() - 1);
            const std::size_t lo = hi - 1;
            const double t = std::log(rbar / rj[lo]) / std::log(rj[hi] / rj[lo]);
            return sj[lo] * std::pow(sj[hi] / sj[lo], t);
        };
    }

    const double r1 = std::min(1.0, 0.95 * rbar_max);
    RadialProfile bg(
        {std::make_shared<const geom::CylinderSegment>(4.0 * kPi, 0.0, r1)});

    auto qdata = [&p, s_of](double rbar, double& q, double& qs, double& qss) {
        const double s = s_of(rbar);
        q = p.area(s) / (4.0 * kPi);
        qs = p.darea_ds(s) / (4.0 * kPi);
        qss = p.d2area_ds2(s) / (4.0 * kPi);
    };
    RadialFunction phibar;
    phibar.value = [qdata](double rbar) {
        double q, qs, qss;
        qdata(rbar, q, qs, qss);
        return std::pow(q, 0.25);
    };
    phibar.deriv = [qdata](double rbar) {
        double q, qs, qss;
        qdata(rbar, q, qs, qss);
        const double phi = std::pow(q, 0.25);
        const double phis = 0.25 * std::pow(q, -0.75) * qs;
        return phi * phi * phis;
    };
    phibar.second = [qdata](double rbar) {
        double q, qs, qss;
        qdata(rbar, q, qs, qss);
        const double phi = std::pow(q, 0.25);
        const double phis = 0.25 * std::pow(q, -0.75) * qs;
        const double phiss =
            0.25 * std::pow(q, -0.75) * qss - 0.1875 * std::pow(q, -1.75) * qs * qs;
        const double phi3 = phi * phi * phi;
        return 2.0 * phi3 * phis * phis + phi3 * phi * phiss;
    };
    return harmonic_resolution_test(bg, phibar);
}

MinBoundaryFactor min_boundary_conformal_factor(const RadialProfile& p) {
    if (!(p.boundary_area() > 0.0))
        throw Error(ErrorCode::DomainError, "needs a positive area inner boundary");
    const double h1 = geom::mean_curvature(p, 0.0);
    if (!(h1 > 0.0))
        throw Error(ErrorCode::DomainError, "inner boundary mean curvature must be positive");
    MinBoundaryFactor out;
    out.ratio = -0.25 * h1;
    const double k = 0.25 * h1 * p.boundary_area();
    auto u = [&](double s) { return 1.0 - k * p.capacity_integral(0.0, s); };
    const double S = p.segments().size() > 1
                         ? p.seg_start(1)
                         : (p.infinite() ? 100.0 : p.s_end());
    if (u(S) > 0.0) return out;
    double lo = 0.0, hi = S;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (u(mid) > 0.0 ? lo : hi) = mid;
    }
    out.first_zero = 0.5 * (lo + hi);
    return out;
}

}  // namespace zas::conf
