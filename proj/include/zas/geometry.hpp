#pragma once

#include <vector>

#include "zas/extended_mass.hpp"
#include "zas/profile.hpp"

namespace zas::geom {

// Data for one centered sphere S_rho.
struct SliceReport {
    double rho;
    double area;
    double mean_curvature;
    double hawking_mass;
    double slice_capacity;
    double slice_reg_mass;
};

enum class CapacitySign { Zero, Positive };

struct CapacityResult {
    double value;  // 0 when the sign is Zero
    CapacitySign sign;
};

// Diagnostic record behind a ZAS mass value: the extrapolated route and the
// boundary-expansion route that must agree.
struct MassRoutes {
    ExtendedMass mass;
    ExtendedMass route_extrapolated;
    ExtendedMass route_analytic;
};

struct ZasReport {
    bool is_zas;
    double exponent;      // A ~ coefficient * s^exponent at the boundary
    double coefficient;
    bool exponent_declared;
    CapacityResult capacity;
    ExtendedMass mass;
    bool regular;
    bool harmonically_regular;
    double harmonic_log_slope;
    bool removable;
};

struct InequalityResult {
    double adm;
    ExtendedMass zas_mass;
    bool holds;
    bool equality;
};

struct PenroseResult {
    double adm;
    double horizon_area;
    bool holds;
    bool equality;
};

// --- pointwise slice data ---------------------------------------------------
double mean_curvature(const RadialProfile& p, double rho);
double hawking_mass(const RadialProfile& p, double rho);
double scalar_curvature(const RadialProfile& p, double rho);
double harmonic_potential(const RadialProfile& p, double rho, double r);
double capacity_of_slice(const RadialProfile& p, double rho);
double reg_mass_of_slice(const RadialProfile& p, double rho);
SliceReport slice_report(const RadialProfile& p, double rho);

// --- boundary limits ---------------------------------------------------------
CapacityResult capacity_of_zas(const RadialProfile& p);
MassRoutes zas_mass_routes(const RadialProfile& p);
ExtendedMass zas_mass(const RadialProfile& p);
MassRoutes h43_mass_routes(const RadialProfile& p);
ExtendedMass h43_mass_limit(const RadialProfile& p);

// --- global quantities --------------------------------------------------------
double adm_mass(const RadialProfile& p);
double omae_radius(const RadialProfile& p);
RadialProfile arclength_reparametrize(const RadialProfile& p);

// Leading power data at the boundary, declared or estimated.
struct OriginEstimate {
    double exponent;
    double coefficient;
    bool declared;
};
OriginEstimate origin_estimate(const RadialProfile& p);

ZasReport classify_zas(const RadialProfile& p);

double combine_zas_masses(const std::vector<double>& masses);
double combine_bh_masses(const std::vector<double>& masses);

InequalityResult check_zas_inequality(const RadialProfile& p);
PenroseResult check_penrose(const RadialProfile& p);

// Nonnegative-scalar-curvature hypothesis probe shared by the two theorem
// checks; throws HypothesisViolated when R < -1e-8 is found.
void require_nonnegative_scalar(const RadialProfile& p);

}  // namespace zas::geom
