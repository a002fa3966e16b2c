#include "zas/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace zas::num {

const char* dummy_translation_unit_anchor_quadrature() { return ""; }

namespace {

// 15-point Kronrod nodes/weights on [-1,1] with the embedded 7-point Gauss
// rule (positive half; nodes are symmetric).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct RuleResult {
    double integral;
    double error;
};

RuleResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        resk += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) resg += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    resk *= h;
    resg *= h;
    double err = std::abs(resk - resg);
    // quadpack-style sharpening of the raw difference
    if (err > 0.0) err = std::pow(200.0 * err, 1.5);
    return {resk, err};
}

// Depth-first adaptive bisection with a width-proportional error budget.
// Deterministic: intervals are processed in a fixed order.
double adapt(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    RuleResult whole = gk15(f, a, b);
    const double scale = std::max(std::abs(whole.integral), 1e-300);
    struct Piece {
        double a, b;
        RuleResult r;
        int depth;
    };
    std::vector<Piece> stack;
    stack.push_back({a, b, whole, 0});
    double total = 0.0;
    const int max_depth = 60;
    long evals = 0;
    while (!stack.empty()) {
        Piece p = stack.back();
        stack.pop_back();
        const double budget = rel_tol * scale * (p.b - p.a) / (b - a);
        if (p.r.error <= budget || p.r.error <= 1e-16 * std::abs(p.r.integral)) {
            total += p.r.integral;
            continue;
        }
        if (p.depth >= max_depth || ++evals > 200000)
            throw Error(ErrorCode::ToleranceNotMet,
                        "adaptive refinement stalled before reaching the requested tolerance");
        const double m = 0.5 * (p.a + p.b);
        stack.push_back({m, p.b, gk15(f, m, p.b), p.depth + 1});
        stack.push_back({p.a, m, gk15(f, p.a, m), p.depth + 1});
    }
    return total;
}

// Integrate over a finite interval with an optional integrable power
// singularity at the lower endpoint: substitute x = a + u^k so that the
// transformed integrand behaves like u^(k(1+e)-1) there.
double integrate_finite(const std::function<double(double)>& f, double a, double b,
                        std::optional<double> lower_exp, double rel_tol) {
    if (lower_exp && *lower_exp < 0.0) {
        const double e = *lower_exp;
        if (e <= -1.0)
            throw Error(ErrorCode::NonIntegrable, "declared lower endpoint exponent <= -1");
        int k = std::max(2, (int)std::ceil(2.0 / (1.0 + e)));
        k = std::min(k, 8);
        const double len = b - a;
        auto g = [&](double u) {
            const double uk = std::pow(u, k);
            return f(a + len * uk) * len * k * std::pow(u, k - 1);
        };
        return adapt(g, 0.0, 1.0, rel_tol);
    }
    return adapt(f, a, b, rel_tol);
}

}  // namespace

Quadrant::Quadrant(std::function<double(double)> f, double lower, double upper,
                   std::optional<double> lower_exponent, std::optional<double> upper_exponent)
    : f_(std::move(f)), lower_(lower), upper_(upper),
      lower_exponent_(lower_exponent), upper_exponent_(upper_exponent) {
    if (!(lower_ < upper_))
        throw Error(ErrorCode::InvalidSpec, "integration interval is empty or unordered");
    if (std::isinf(lower_))
        throw Error(ErrorCode::InvalidSpec, "lower integration limit must be finite");
    if (upper_infinite() && !upper_exponent_)
        throw Error(ErrorCode::InvalidSpec,
                    "infinite upper limit requires a declared decay exponent");
    if (upper_infinite() && lower_ <= 0.0)
        throw Error(ErrorCode::InvalidSpec, "infinite upper limit requires a positive lower limit");

    // Validate declared exponents against the integrand's local behaviour.
    if (lower_exponent_) {
        const double span = upper_infinite() ? 1.0 : upper_ - lower_;
        const double hi = 1e-4 * span;
        const double slope = loglog_slope(f_, lower_, hi * 1e-2, hi);
        if (std::isfinite(slope) &&
            std::abs(slope - *lower_exponent_) > 0.05 * std::max(1.0, std::abs(*lower_exponent_)))
            throw Error(ErrorCode::ValidationError,
                        "declared lower exponent disagrees with the probed log-log slope");
    }
    if (upper_exponent_ && upper_infinite()) {
        // probe the decade [R, 10R] far out; slope in x directly
        const double r0 = std::max(lower_ * 16.0, 1e4);
        const double slope = loglog_slope(f_, 0.0, r0, 10.0 * r0);
        if (std::isfinite(slope) &&
            std::abs(slope - *upper_exponent_) > 0.05 * std::max(1.0, std::abs(*upper_exponent_)))
            throw Error(ErrorCode::ValidationError,
                        "declared tail exponent disagrees with the probed log-log slope");
    }
}

double loglog_slope(const std::function<double(double)>& f, double at, double t_lo, double t_hi) {
    const int n = 16;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int used = 0;
    for (int i = 0; i < n; ++i) {
        const double t = t_lo * std::pow(t_hi / t_lo, i / double(n - 1));
        const double v = std::abs(f(at + t));
        if (!(v > 0.0) || !std::isfinite(v)) continue;
        const double x = std::log(t), y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    if (used < 4) return std::numeric_limits<double>::quiet_NaN();
    const double denom = used * sxx - sx * sx;
    if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (used * sxy - sx * sy) / denom;
}

double integrate(const Quadrant& q, double rel_tol) {
    if (!(rel_tol > 0))
        throw Error(ErrorCode::InvalidSpec, "integration tolerance must be positive");
    auto f = [&q](double x) { return q(x); };
    if (!q.upper_infinite())
        return integrate_finite(f, q.lower(), q.upper(), q.lower_exponent(), rel_tol);

    const double e_inf = *q.upper_exponent();
    if (e_inf >= -1.0)
        throw Error(ErrorCode::NonIntegrable, "declared tail exponent >= -1 at infinity");
    // Split [a, inf) at c and map the far part through x -> 1/v.
    const double a = q.lower();
    const double c = std::max(1.5 * a, a + 1.0);
    const double head =
        integrate_finite(f, a, c, q.lower_exponent(), rel_tol);
    auto g = [&f](double v) { return f(1.0 / v) / (v * v); };
    // transformed integrand ~ v^(-e-2) at v = 0
    const double transformed_exp = -e_inf - 2.0;
    std::optional<double> le;
    if (transformed_exp < 0.0) le = transformed_exp;
    const double tail = integrate_finite(g, 0.0, 1.0 / c, le, rel_tol);
    return head + tail;
}

Divergence classify_divergence(const Quadrant& q, double delta) {
    double e;
    if (q.lower_exponent()) {
        e = *q.lower_exponent();
    } else {
        const double span = q.upper_infinite() ? 1.0 : q.upper() - q.lower();
        const double d = std::min(delta, 0.1 * span);
        e = loglog_slope([&q](double x) { return q(x); }, q.lower(), d / 100.0, d);
        if (!std::isfinite(e))
            throw Error(ErrorCode::AmbiguousExponent,
                        "endpoint exponent could not be estimated from samples");
        if (std::abs(e - (-1.0)) < 0.01)
            throw Error(ErrorCode::AmbiguousExponent,
                        "estimated endpoint exponent is within 0.01 of -1");
    }
    return e <= -1.0 ? Divergence::Divergent : Divergence::Convergent;
}

}  // namespace zas::num
