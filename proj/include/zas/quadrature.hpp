#pragma once

#include <functional>
#include <limits>
#include <optional>

#include "zas/errors.hpp"

namespace zas::num {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultQuadTol = 1e-10;

// One-dimensional integration task over (lower, upper), upper possibly +inf.
// Endpoint behaviour may be declared as a power-law exponent:
//   f(x) ~ c * (x - lower)^e   near the lower endpoint  (e > -1 integrable),
//   f(x) ~ c * x^e             as x -> +inf              (e < -1 integrable).
// Declared exponents are validated against the integrand's local log-log
// slope on a probe decade at construction.
class Quadrant {
  public:
    Quadrant(std::function<double(double)> f, double lower, double upper,
             std::optional<double> lower_exponent = std::nullopt,
             std::optional<double> upper_exponent = std::nullopt);

    double operator()(double x) const { return f_(x); }
    double lower() const { return lower_; }
    double upper() const { return upper_; }
    bool upper_infinite() const { return upper_ == kInf; }
    std::optional<double> lower_exponent() const { return lower_exponent_; }
    std::optional<double> upper_exponent() const { return upper_exponent_; }

  private:
    std::function<double(double)> f_;
    double lower_, upper_;
    std::optional<double> lower_exponent_, upper_exponent_;
};

// Adaptive Gauss-Kronrod (G7,K15) integration.  Singular endpoints with a
// declared exponent in (-1, 0) are regularised by a power substitution;
// infinite upper limits by x -> 1/x (requires a declared decay exponent).
// Throws NonIntegrable for declared exponents <= -1 (or >= -1 at infinity)
// and ToleranceNotMet when refinement stalls.
double integrate(const Quadrant& q, double rel_tol = kDefaultQuadTol);

enum class Divergence { Convergent, Divergent };

// Decides convergence of the integral near the lower endpoint from the local
// power-law exponent: divergent iff exponent <= -1.  Uses the declared
// exponent when present, otherwise a log-log regression over two decades
// [delta/100, delta] above the endpoint.  Throws AmbiguousExponent when the
// estimated slope lies within +-0.01 of -1 and nothing was declared.
Divergence classify_divergence(const Quadrant& q, double delta = 1e-3);

// Local log-log slope of f at distance scale [t_lo, t_hi] above `at`
// (least squares over a geometric sample grid).  Helper shared by Quadrant
// validation and divergence classification.
double loglog_slope(const std::function<double(double)>& f, double at, double t_lo, double t_hi);

}  // namespace zas::num
