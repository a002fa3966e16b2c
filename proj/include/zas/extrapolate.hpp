#pragma once

#include <functional>

#include "zas/errors.hpp"

namespace zas::num {

// Extended real for one-sided limits: either a finite value or -infinity.
struct LimitValue {
    bool finite = true;
    double value = 0.0;

    static LimitValue of(double v) { return {true, v}; }
    static LimitValue neg_infinity() { return {false, 0.0}; }
};

struct LimitProbe {
    double rho0 = 0.5;             // first probe radius; subsequent ones halve
    int min_samples = 6;           // before any convergence/divergence verdict
    int max_samples = 96;
    double tol = 1e-6;             // |extrapolant step| <= tol*(1+|value|)
    double divergence_threshold = -1e8;
};

// Limit of f(rho) as rho -> 0+ from samples at rho0 * 2^-k, accelerated by
// iterated Aitken extrapolation (handles fractional power corrections).
// Declares -infinity once at least six consecutive samples decrease
// monotonically below the divergence threshold.  Throws Oscillatory when the
// sample sequence neither settles nor diverges downward.
LimitValue limit_at_zero(const std::function<double(double)>& f, const LimitProbe& probe = {});

}  // namespace zas::num
