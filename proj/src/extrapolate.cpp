#include "zas/extrapolate.hpp"

#include "zas/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace zas::num {

namespace {

// One Aitken delta-squared sweep over a sequence.
std::vector<double> aitken_sweep(const std::vector<double>& x) {
    std::vector<double> out;
    for (std::size_t i = 0; i + 2 < x.size(); ++i) {
        const double d1 = x[i + 1] - x[i];
        const double d2 = x[i + 2] - x[i + 1];
        const double den = d2 - d1;
        if (den == 0.0 || !std::isfinite(den)) {
            out.push_back(x[i + 2]);
        } else {
            out.push_back(x[i + 2] - d2 * d2 / den);
        }
    }
    return out;
}

// Error gauge for the tail of a sequence: the last difference alone can
// collapse by accident at one level, so take the worse of the final two.
double tail_step(const std::vector<double>& x) {
    const std::size_t n = x.size();
    const double d1 = std::abs(x[n - 1] - x[n - 2]);
    if (n < 3) return d1;
    return std::max(d1, std::abs(x[n - 2] - x[n - 3]));
}

// Best current extrapolant: iterate Aitken sweeps while the tail of the
// sequence keeps tightening, and report the achieved step size.
void best_extrapolant(const std::vector<double>& samples, double* value, double* step) {
    std::vector<double> cur = samples;
    *value = cur.back();
    *step = tail_step(cur);
    for (int stage = 0; stage < 6 && cur.size() >= 3; ++stage) {
        std::vector<double> nxt = aitken_sweep(cur);
        // a two-entry sweep exposes a single difference, which is exactly the
        // accidental-collapse hazard tail_step guards against; skip it
        if (nxt.size() < 3) break;
        const double s = tail_step(nxt);
        if (!std::isfinite(s) || !std::isfinite(nxt.back())) break;
        if (s < *step) {
            *step = s;
            *value = nxt.back();
        }
        cur = std::move(nxt);
    }
}

}  // namespace

LimitValue limit_at_zero(const std::function<double(double)>& f, const LimitProbe& probe) {
    if (!(probe.rho0 > 0) || probe.max_samples < probe.min_samples)
        throw Error(ErrorCode::InvalidSpec, "invalid limit probe configuration");

    std::vector<double> samples;
    double rho = probe.rho0;
    for (int k = 0; k < probe.max_samples; ++k, rho *= 0.5) {
        const double v = f(rho);
        if (!std::isfinite(v)) {
            if (v == -kInf && (int)samples.size() + 1 >= probe.min_samples)
                return LimitValue::neg_infinity();
            throw Error(ErrorCode::Oscillatory, "sample sequence left the finite range");
        }
        samples.push_back(v);
        if ((int)samples.size() < probe.min_samples) continue;

        // downward divergence: six consecutive strictly decreasing samples
        // ending below the threshold
        if (samples.back() < probe.divergence_threshold) {
            bool monotone = true;
            for (std::size_t i = samples.size() - 6; i + 1 < samples.size(); ++i)
                if (!(samples[i + 1] < samples[i])) monotone = false;
            if (monotone) return LimitValue::neg_infinity();
        }

        // Geometric divergence with ratio close to 1 (f ~ rho^{-q}, small q)
        // never crosses the absolute threshold within the budget, yet Aitken
        // would quietly sum it to its anti-limit.  Catch it structurally: a
        // monotone window whose consecutive differences keep growing is not
        // converging.
        const std::size_t n = samples.size();
        if (n >= 6) {
            const std::size_t start = n - std::min<std::size_t>(n, 7);
            bool monotone_growth = n - start >= 5;
            for (std::size_t i = start; i + 2 < n && monotone_growth; ++i) {
                const double d0 = samples[i + 1] - samples[i];
                const double d1 = samples[i + 2] - samples[i + 1];
                if (d0 * d1 <= 0.0 || std::abs(d1) < 1.005 * std::abs(d0))
                    monotone_growth = false;
            }
            const double d_end = samples[n - 1] - samples[n - 2];
            if (monotone_growth &&
                std::abs(d_end) > 10.0 * probe.tol * (1.0 + std::abs(samples.back()))) {
                if (d_end < 0.0) return LimitValue::neg_infinity();
                throw Error(ErrorCode::Oscillatory, "sample sequence diverges upward");
            }
        }

        // Extrapolation is only trusted while the raw differences shrink;
        // a growing tail (e.g. f ~ -1/rho) must not be Aitken-summed.
        const double d_last = std::abs(samples[n - 1] - samples[n - 2]);
        const double d_prev = std::abs(samples[n - 2] - samples[n - 3]);
        if (d_last > 1.5 * d_prev && d_last > probe.tol * (1.0 + std::abs(samples.back())))
            continue;

        double value, step;
        best_extrapolant(samples, &value, &step);
        if (step <= probe.tol * (1.0 + std::abs(value))) return LimitValue::of(value);
    }

    // Exhausted the probe budget: a still-descending sequence reads as a slow
    // divergence only if it already moved below the threshold.
    if (samples.back() < probe.divergence_threshold) return LimitValue::neg_infinity();
    throw Error(ErrorCode::Oscillatory,
                "sample sequence did not settle within the probe budget");
}

}  // namespace zas::num
