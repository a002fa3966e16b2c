#include "zas/ode.hpp"

#include <algorithm>
#include <cmath>

namespace zas::num {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// embedded 4th order weights
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

struct State {
    double u, du;
};

}  // namespace

std::vector<OdeSample> solve_radial_ode(const RadialOde& ode, double r_start, double r_end,
                                        double u0, double du0, const OdeOptions& opts) {
    if (r_start == r_end) throw Error(ErrorCode::InvalidSpec, "empty integration range");
    const double dir = r_end > r_start ? 1.0 : -1.0;
    if (dir < 0 && r_end < opts.floor)
        throw Error(ErrorCode::InvalidSpec, "inward integration target below the floor");

    auto rhs = [&ode](double r, const State& s) -> State {
        return {s.du, -ode.p(r) * s.du - ode.q(r) * s.u};
    };

    std::vector<double> stops = opts.output;
    std::erase_if(stops, [&](double r) {
        return dir > 0 ? (r <= r_start || r > r_end) : (r >= r_start || r < r_end);
    });
    std::sort(stops.begin(), stops.end());
    if (dir < 0) std::reverse(stops.begin(), stops.end());
    stops.push_back(r_end);
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

    std::vector<OdeSample> out;
    double r = r_start;
    State s{u0, du0};
    out.push_back({r, s.u, s.du});
    State k1 = rhs(r, s);

    double h = dir * std::min(std::abs(r_end - r_start) * 0.1,
                              std::max(1e-4, 1e-3 * std::abs(r_start)));

    std::size_t stop_idx = 0;
    long steps = 0;
    while (stop_idx < stops.size()) {
        const double target = stops[stop_idx];
        bool clipped = false;
        if ((dir > 0 && r + h >= target) || (dir < 0 && r + h <= target)) {
            h = target - r;
            clipped = true;
        }
        if (++steps > opts.max_steps)
            throw Error(ErrorCode::ToleranceNotMet, "step budget exhausted in radial ODE solve");

        const State k2 = rhs(r + c2 * h, {s.u + h * a21 * k1.u, s.du + h * a21 * k1.du});
        const State k3 = rhs(r + c3 * h, {s.u + h * (a31 * k1.u + a32 * k2.u),
                                          s.du + h * (a31 * k1.du + a32 * k2.du)});
        const State k4 = rhs(r + c4 * h, {s.u + h * (a41 * k1.u + a42 * k2.u + a43 * k3.u),
                                          s.du + h * (a41 * k1.du + a42 * k2.du + a43 * k3.du)});
        const State k5 =
            rhs(r + c5 * h, {s.u + h * (a51 * k1.u + a52 * k2.u + a53 * k3.u + a54 * k4.u),
                             s.du + h * (a51 * k1.du + a52 * k2.du + a53 * k3.du + a54 * k4.du)});
        const State k6 = rhs(
            r + h, {s.u + h * (a61 * k1.u + a62 * k2.u + a63 * k3.u + a64 * k4.u + a65 * k5.u),
                    s.du + h * (a61 * k1.du + a62 * k2.du + a63 * k3.du + a64 * k4.du +
                                a65 * k5.du)});
        const State s5{s.u + h * (b1 * k1.u + b3 * k3.u + b4 * k4.u + b5 * k5.u + b6 * k6.u),
                       s.du + h * (b1 * k1.du + b3 * k3.du + b4 * k4.du + b5 * k5.du + b6 * k6.du)};
        const State k7 = rhs(r + h, s5);
        const State s4{s.u + h * (e1 * k1.u + e3 * k3.u + e4 * k4.u + e5 * k5.u + e6 * k6.u +
                                  e7 * k7.u),
                       s.du + h * (e1 * k1.du + e3 * k3.du + e4 * k4.du + e5 * k5.du +
                                   e6 * k6.du + e7 * k7.du)};

        const double sc_u = opts.abs_tol + opts.rel_tol * std::max(std::abs(s.u), std::abs(s5.u));
        const double sc_du =
            opts.abs_tol + opts.rel_tol * std::max(std::abs(s.du), std::abs(s5.du));
        const double err = std::sqrt(0.5 * (std::pow((s5.u - s4.u) / sc_u, 2) +
                                            std::pow((s5.du - s4.du) / sc_du, 2)));

        if (err <= 1.0) {
            r += h;
            s = s5;
            k1 = k7;  // FSAL
            if (clipped) {
                out.push_back({target, s.u, s.du});
                r = target;
                ++stop_idx;
            }
        }
        double fac;
        if (!std::isfinite(err))
            fac = 0.2;
        else if (err > 0)
            fac = std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        else
            fac = 5.0;
        h *= fac;
        const double hmin = 1e-14 * std::max(std::abs(r), 1e-30) + 1e-300;
        if (std::abs(h) < hmin)
            throw Error(ErrorCode::StepUnderflow,
                        "step size collapsed; coefficient singularity stronger than 1/r");
        if (std::abs(h) > std::abs(r_end - r_start)) h = dir * std::abs(r_end - r_start);
    }
    return out;
}

}  // namespace zas::num
