#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "zas/profile.hpp"

namespace zas::conf {

// Radial conformal factor over a background profile: one piece per background
// segment, each a function of that segment's native coordinate.
// `tail_coefficient` is c in u ~ 1 + c/x on an asymptotically flat tail; when
// absent it is fitted from samples.
struct ConformalFactor {
    std::vector<geom::RadialFunction> pieces;
    std::optional<double> tail_coefficient;
};

struct ConformalPair {
    geom::RadialProfile background;
    ConformalFactor factor;
};

// factor value at background arclength s
double factor_value(const ConformalPair& cp, double s);

// The deformed metric u^4 g as a profile.  The factor may vanish at the inner
// boundary (that is how a ZAS is made) but not anywhere else.
geom::RadialProfile compose(const ConformalPair& cp);

// c in u ~ 1 + c/x, declared or fitted from the tail piece
double tail_coefficient(const ConformalPair& cp);

// m(background) - m(u^4 g) = -2c
double adm_mass_shift(const ConformalPair& cp);

// Lap_1(u phi) - u^5 Lap_2(phi) - phi Lap_1(u) at background arclength r,
// with each Laplacian taken as second order finite differences of step h in
// its own metric's arclength.  phi is a function of background arclength.
double conformal_laplacian_residual(const ConformalPair& cp,
                                    const std::function<double(double)>& phi, double r, double h);

// R_2 = u^{-5} (-8 Lap_1 u + R_1 u), pointwise
double conformal_scalar_curvature(double u, double lap_u, double r1);
// H_2 = u^{-2} H_1 + 4 u^{-3} nu_1(u), pointwise
double conformal_mean_curvature(double u, double nu_u, double h1);

struct HarmonicTestResult {
    bool harmonically_regular;
    double log_slope;
};

// Decides whether the resolution (background, phibar) admits a solution of
// Lap u = (Lap phibar / phibar) u that is positive and bounded away from zero
// at the inner boundary.  log_slope is the fitted kappa in u' ~ kappa log r
// for the boundary-normalized solution.
HarmonicTestResult harmonic_resolution_test(const geom::RadialProfile& background,
                                            const geom::RadialFunction& phibar);

// Harmonic regularity of a profile with a regular ZAS boundary, through the
// canonical cylindrical resolution.
HarmonicTestResult canonical_harmonic_test(const geom::RadialProfile& p);

struct MinBoundaryFactor {
    double ratio;  // u'(0)/u(0) of the threshold factor
    std::optional<double> first_zero;
};

// The harmonic factor u = 1 - (H A(0)/4) \int_0^s ds/A that turns a positive
// area boundary into a ZAS candidate; reports where it first vanishes.
MinBoundaryFactor min_boundary_conformal_factor(const geom::RadialProfile& p);

}  // namespace zas::conf
