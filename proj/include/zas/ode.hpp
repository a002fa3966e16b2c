#pragma once

#include <functional>
#include <vector>

#include "zas/errors.hpp"

namespace zas::num {

// Linear second order radial equation  u'' + p(r) u' + q(r) u = 0.
struct RadialOde {
    std::function<double(double)> p;
    std::function<double(double)> q;
};

struct OdeSample {
    double r;
    double u;
    double du;
};

struct OdeOptions {
    double rel_tol = 1e-10;        // per-step relative error target
    double abs_tol = 1e-14;
    double floor = 1e-8;           // inward integrations stop here
    int max_steps = 2000000;
    std::vector<double> output;    // extra radii to land on exactly (any order)
};

// Integrates from r_start to r_end (either direction) with adaptive
// Dormand-Prince 5(4) stepping.  Returns samples at r_start, every requested
// output radius inside the range, and r_end.  Inward runs must satisfy
// r_end >= floor.  Throws StepUnderflow when the step collapses near a
// coefficient singularity stronger than 1/r.
std::vector<OdeSample> solve_radial_ode(const RadialOde& ode, double r_start, double r_end,
                                        double u0, double du0, const OdeOptions& opts = {});

}  // namespace zas::num
