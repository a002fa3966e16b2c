#include "zas/segment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zas/errors.hpp"

namespace zas::geom {

using std::numbers::pi;
using num::kInf;
using num::Quadrant;

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw Error(ErrorCode::ValidationError, msg);
}

}  // namespace

// ---------------------------------------------------------------- Segment

double Segment::quadrature_arclength(double x) const {
    if (x == x0_) return 0.0;
    return num::integrate(Quadrant([this](double t) { return lapse(t); }, x0_, x));
}

double Segment::arclength(double x) const { return quadrature_arclength(x); }

double Segment::newton_coordinate(double s, double guess) const {
    if (s <= 0.0) return x0_;
    double lo = x0_;
    double hi;
    if (infinite()) {
        hi = std::max(guess, x0_ + 1.0);
        for (int i = 0; i < 200 && arclength(hi) < s; ++i) hi = x0_ + 2.0 * (hi - x0_);
    } else {
        hi = x1_;
    }
    double x = std::clamp(guess, lo, hi);
    if (!(x > lo)) x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = arclength(x) - s;
        if (f > 0.0)
            hi = x;
        else
            lo = x;
        const double w = lapse(x);
        double xn = w > 0.0 ? x - f / w : 0.5 * (lo + hi);
        if (!std::isfinite(xn) || xn <= lo || xn >= hi) xn = 0.5 * (lo + hi);
        if (std::abs(xn - x) <= 1e-15 * (std::abs(x) + std::abs(xn)) + 1e-300) return xn;
        x = xn;
    }
    return x;
}

double Segment::coordinate_at_arclength(double s) const {
    return newton_coordinate(s, x0_ + s);
}

double Segment::capacity_integral(double a, double b) const {
    if (a == b) return 0.0;
    return num::integrate(Quadrant([this](double x) { return lapse(x) / area(x); }, a, b));
}

double Segment::tail_capacity_integral(double) const {
    throw Error(ErrorCode::InvalidSpec, "segment is not an asymptotic tail");
}

double Segment::tail_adm() const {
    throw Error(ErrorCode::InvalidSpec, "segment is not an asymptotic tail");
}

// -------------------------------------------------------- PowerAreaSegment

PowerAreaSegment::PowerAreaSegment(double coeff, double alpha, double x0, double x1)
    : Segment(x0, x1), coeff_(coeff), alpha_(alpha) {
    require(coeff > 0.0, "power law area coefficient must be positive");
    require(alpha > 0.0, "power law exponent must be positive");
    require(x0 >= 0.0 && x0 < x1, "power law interval must be ordered and nonnegative");
}

double PowerAreaSegment::area(double x) const { return coeff_ * std::pow(x, alpha_); }
double PowerAreaSegment::darea(double x) const {
    return coeff_ * alpha_ * std::pow(x, alpha_ - 1.0);
}
double PowerAreaSegment::d2area(double x) const {
    return coeff_ * alpha_ * (alpha_ - 1.0) * std::pow(x, alpha_ - 2.0);
}

double PowerAreaSegment::capacity_integral(double a, double b) const {
    if (std::abs(alpha_ - 1.0) < 1e-14) return std::log(b / a) / coeff_;
    const double p = 1.0 - alpha_;
    return (std::pow(b, p) - std::pow(a, p)) / (coeff_ * p);
}

double PowerAreaSegment::tail_capacity_integral(double a) const {
    if (alpha_ <= 1.0) throw Error(ErrorCode::NonIntegrable, "power law tail does not decay");
    return std::pow(a, 1.0 - alpha_) / (coeff_ * (alpha_ - 1.0));
}

double PowerAreaSegment::tail_adm() const {
    if (std::abs(alpha_ - 2.0) > 1e-12 || std::abs(coeff_ - 4.0 * pi) > 1e-9 * pi)
        throw Error(ErrorCode::InvalidSpec, "power law tail is not asymptotically flat");
    return 0.0;
}

std::optional<OriginData> PowerAreaSegment::origin_data() const {
    if (x0_ != 0.0) return std::nullopt;
    return OriginData{alpha_, coeff_};
}

// --------------------------------------------------------- CylinderSegment

CylinderSegment::CylinderSegment(double area0, double x0, double x1)
    : Segment(x0, x1), area0_(area0) {
    require(area0 > 0.0, "cylinder cross-section area must be positive");
    require(x0 < x1, "cylinder interval must be ordered");
}

// ---------------------------------------------------------- SinBumpSegment

SinBumpSegment::SinBumpSegment(double eps) : Segment(0.0, 2.0 * pi), eps_(eps) {
    require(eps > 0.0, "bump amplitude offset must be positive");
}

double SinBumpSegment::area(double x) const { return 4.0 * pi * (1.0 + eps_ + std::sin(x)); }
double SinBumpSegment::darea(double x) const { return 4.0 * pi * std::cos(x); }
double SinBumpSegment::d2area(double x) const { return -4.0 * pi * std::sin(x); }

// ------------------------------------------------------ HermiteAreaSegment

HermiteAreaSegment::HermiteAreaSegment(double x0, double x1, double phi0, double dphi0,
                                       double phi1, double dphi1)
    : Segment(x0, x1) {
    require(x0 < x1, "join interval must be ordered");
    require(phi0 > 0.0 && phi1 > 0.0, "areal radius must stay positive across a join");
    const double h = x1 - x0;
    const double delta = phi1 - phi0 - dphi0 * h;
    const double dd = dphi1 - dphi0;
    c0_ = phi0;
    c1_ = dphi0;
    c2_ = (3.0 * delta - dd * h) / (h * h);
    c3_ = (dd * h - 2.0 * delta) / (h * h * h);
    for (int i = 1; i < 64; ++i)
        require(phi(x0 + h * i / 64.0) > 0.0, "areal radius must stay positive across a join");
}

double HermiteAreaSegment::phi(double x) const {
    const double t = x - x0_;
    return c0_ + t * (c1_ + t * (c2_ + t * c3_));
}
double HermiteAreaSegment::dphi(double x) const {
    const double t = x - x0_;
    return c1_ + t * (2.0 * c2_ + 3.0 * c3_ * t);
}
double HermiteAreaSegment::d2phi(double x) const {
    const double t = x - x0_;
    return 2.0 * c2_ + 6.0 * c3_ * t;
}
double HermiteAreaSegment::area(double x) const {
    const double p = phi(x);
    return 4.0 * pi * p * p;
}
double HermiteAreaSegment::darea(double x) const { return 8.0 * pi * phi(x) * dphi(x); }
double HermiteAreaSegment::d2area(double x) const {
    const double dp = dphi(x);
    return 8.0 * pi * (dp * dp + phi(x) * d2phi(x));
}

// ---------------------------------------------------- SchwIsotropicSegment

SchwIsotropicSegment::SchwIsotropicSegment(double m, double t0, double t1)
    : Segment(t0, t1), m_(m) {
    require(t0 > 0.0 && t0 < t1, "isotropic interval must be ordered and positive");
    require(1.0 + m / (2.0 * t0) > 0.0, "isotropic chart breaks down at the requested radius");
    if (m > 0.0)
        require(t0 >= m / 2.0 - 1e-14 * m, "exterior chart starts at or outside the horizon");
}

double SchwIsotropicSegment::lapse(double t) const {
    const double b = 1.0 + m_ / (2.0 * t);
    return b * b;
}
double SchwIsotropicSegment::dlapse(double t) const {
    const double b = 1.0 + m_ / (2.0 * t);
    return -m_ * b / (t * t);
}
double SchwIsotropicSegment::area(double t) const {
    const double q = t + m_ / 2.0;
    const double q2 = q * q;
    return 4.0 * pi * q2 * q2 / (t * t);
}
double SchwIsotropicSegment::darea(double t) const {
    const double q = t + m_ / 2.0;
    return 4.0 * pi * q * q * q * (2.0 * t - m_) / (t * t * t);
}
double SchwIsotropicSegment::d2area(double t) const {
    const double q = t + m_ / 2.0;
    return 4.0 * pi * q * q * (2.0 * t * t - 2.0 * m_ * t + 1.5 * m_ * m_) / (t * t * t * t);
}

double SchwIsotropicSegment::arclength(double t) const {
    const double d = t - x0_;
    return d + m_ * std::log1p(d / x0_) + (m_ * m_ / 4.0) * d / (t * x0_);
}

double SchwIsotropicSegment::coordinate_at_arclength(double s) const {
    const double w0 = lapse(x0_);
    const double g = x0_ + s / std::max(w0, 1.0);
    return newton_coordinate(s, g);
}

double SchwIsotropicSegment::capacity_integral(double a, double b) const {
    return (1.0 / (a + m_ / 2.0) - 1.0 / (b + m_ / 2.0)) / (4.0 * pi);
}

double SchwIsotropicSegment::tail_capacity_integral(double a) const {
    return 1.0 / (4.0 * pi * (a + m_ / 2.0));
}

// ---------------------------------------------------------- SchwZasSegment

SchwZasSegment::SchwZasSegment(double t0, double x0, double x1) : Segment(x0, x1), t0_(t0) {
    require(t0 > 0.0, "singular isotropic radius must be positive");
    require(x0 >= 0.0 && x0 < x1, "offset interval must be ordered and nonnegative");
}

double SchwZasSegment::lapse(double x) const {
    const double r = x / (x + t0_);
    return r * r;
}
double SchwZasSegment::dlapse(double x) const {
    const double q = x + t0_;
    return 2.0 * x * t0_ / (q * q * q);
}
double SchwZasSegment::area(double x) const {
    const double q = x + t0_;
    const double x2 = x * x;
    return 4.0 * pi * x2 * x2 / (q * q);
}
double SchwZasSegment::darea(double x) const {
    const double q = x + t0_;
    return 8.0 * pi * x * x * x * (x + 2.0 * t0_) / (q * q * q);
}
double SchwZasSegment::d2area(double x) const {
    const double q = x + t0_;
    const double q2 = q * q;
    return 8.0 * pi * x * x * (x * x + 4.0 * t0_ * x + 6.0 * t0_ * t0_) / (q2 * q2);
}

double SchwZasSegment::arclength(double x) const {
    auto from_zero = [this](double y) {
        const double u = y / t0_;
        if (u <= 0.5) {
            // sum over (n+1)(-u)^n u^3/(n+3)
            double term = u * u * u;
            double acc = 0.0;
            for (int n = 0; n < 120; ++n) {
                const double add = (n + 1.0) * term / (n + 3.0);
                acc += (n % 2 == 0) ? add : -add;
                term *= u;
                if (add < 1e-18 * std::abs(acc)) break;
            }
            return t0_ * acc;
        }
        return y - 2.0 * t0_ * std::log1p(u) + t0_ * u / (1.0 + u);
    };
    return from_zero(x) - from_zero(x0_);
}

double SchwZasSegment::coordinate_at_arclength(double s) const {
    double guess;
    if (x0_ == 0.0) {
        guess = std::cbrt(3.0 * t0_ * t0_ * s);
        if (guess > t0_) guess = s + t0_;
    } else {
        guess = x0_ + s / lapse(x0_);
    }
    return newton_coordinate(s, guess);
}

double SchwZasSegment::capacity_integral(double a, double b) const {
    // w/A reduces to 1/(4 pi x^2)
    if (b == kInf) return tail_capacity_integral(a);
    return (1.0 / a - 1.0 / b) / (4.0 * pi);
}

double SchwZasSegment::tail_capacity_integral(double a) const { return 1.0 / (4.0 * pi * a); }

std::optional<OriginData> SchwZasSegment::origin_data() const {
    if (x0_ != 0.0) return std::nullopt;
    return OriginData{4.0 / 3.0, 4.0 * pi * std::pow(3.0, 4.0 / 3.0) * std::pow(t0_, 2.0 / 3.0)};
}

// --------------------------------------------------------- SchwArealSegment

SchwArealSegment::SchwArealSegment(double mu, double r0, double r1) : Segment(r0, r1), mu_(mu) {
    require(r0 < r1, "area radius interval must be ordered");
    require(r0 > 0.0 && r0 >= 2.0 * mu, "area radius chart requires R >= 2 mu");
}

double SchwArealSegment::lapse(double r) const { return 1.0 / std::sqrt(1.0 - 2.0 * mu_ / r); }
double SchwArealSegment::dlapse(double r) const {
    const double q = 1.0 - 2.0 * mu_ / r;
    return -mu_ / (r * r * q * std::sqrt(q));
}
double SchwArealSegment::area(double r) const { return 4.0 * pi * r * r; }
double SchwArealSegment::darea(double r) const { return 8.0 * pi * r; }
double SchwArealSegment::d2area(double) const { return 8.0 * pi; }

double SchwArealSegment::F(double r) const {
    if (mu_ == 0.0) return r;
    return std::sqrt(r * (r - 2.0 * mu_)) +
           2.0 * mu_ * std::log(std::sqrt(r) + std::sqrt(r - 2.0 * mu_));
}

double SchwArealSegment::arclength(double r) const { return F(r) - F(x0_); }

double SchwArealSegment::coordinate_at_arclength(double s) const {
    const double w0 = lapse(x0_);
    const double g = x0_ + s / std::max(w0, 1.0);
    return newton_coordinate(s, g);
}

double SchwArealSegment::capacity_integral(double a, double b) const {
    if (b == kInf) return tail_capacity_integral(a);
    const double qa = std::sqrt(1.0 - 2.0 * mu_ / a);
    const double qb = std::sqrt(1.0 - 2.0 * mu_ / b);
    return (1.0 / a - 1.0 / b) / (2.0 * pi * (qa + qb));
}

double SchwArealSegment::tail_capacity_integral(double a) const {
    const double q = std::sqrt(1.0 - 2.0 * mu_ / a);
    return 1.0 / (2.0 * pi * a * (1.0 + q));
}

// -------------------------------------------------------- ConformalSegment

ConformalSegment::ConformalSegment(SegmentPtr base, RadialFunction u)
    : Segment(base->x0(), base->x1()), base_(std::move(base)), u_(std::move(u)) {
    require(bool(u_.value) && bool(u_.deriv), "conformal factor needs a value and a derivative");
}

ConformalSegment::ConformalSegment(SegmentPtr base, RadialFunction u, double tail_c)
    : ConformalSegment(std::move(base), std::move(u)) {
    require(infinite(), "a tail coefficient only makes sense on an infinite segment");
    tail_c_ = tail_c;
}

bool ConformalSegment::linear_on_cylinder() const {
    return u_.vanish_slope && dynamic_cast<const CylinderSegment*>(base_.get()) != nullptr;
}

double ConformalSegment::lapse(double x) const {
    const double u = u_.value(x);
    return base_->lapse(x) * u * u;
}
double ConformalSegment::dlapse(double x) const {
    const double u = u_.value(x), du = u_.deriv(x);
    return base_->dlapse(x) * u * u + 2.0 * base_->lapse(x) * u * du;
}
double ConformalSegment::area(double x) const {
    const double u = u_.value(x);
    const double u2 = u * u;
    return base_->area(x) * u2 * u2;
}
double ConformalSegment::darea(double x) const {
    const double u = u_.value(x), du = u_.deriv(x);
    const double u3 = u * u * u;
    return base_->darea(x) * u3 * u + 4.0 * base_->area(x) * u3 * du;
}
double ConformalSegment::d2area(double x) const {
    if (!u_.second)
        throw Error(ErrorCode::NotTwiceDifferentiable,
                    "conformal factor lacks a second derivative");
    const double u = u_.value(x), du = u_.deriv(x), ddu = u_.second(x);
    const double u2 = u * u, u3 = u2 * u;
    return base_->d2area(x) * u2 * u2 + 8.0 * base_->darea(x) * u3 * du +
           12.0 * base_->area(x) * u2 * du * du + 4.0 * base_->area(x) * u3 * ddu;
}

double ConformalSegment::arclength(double x) const {
    if (linear_on_cylinder()) {
        const double k = *u_.vanish_slope;
        const double t = x - x0_;
        return k * k * t * t * t / 3.0;
    }
    return quadrature_arclength(x);
}

double ConformalSegment::coordinate_at_arclength(double s) const {
    if (linear_on_cylinder()) {
        const double k = *u_.vanish_slope;
        return x0_ + std::cbrt(3.0 * s / (k * k));
    }
    return newton_coordinate(s, x0_ + s);
}

double ConformalSegment::capacity_integral(double a, double b) const {
    if (a == b) return 0.0;
    if (linear_on_cylinder()) {
        const double k = *u_.vanish_slope;
        const double a0 = dynamic_cast<const CylinderSegment&>(*base_).area0();
        return (1.0 / (a - x0_) - 1.0 / (b - x0_)) / (a0 * k * k);
    }
    auto g = [this](double x) {
        const double u = u_.value(x);
        return base_->lapse(x) / (base_->area(x) * u * u);
    };
    if (u_.vanish_slope) {
        if (!(a > x0_))
            throw Error(ErrorCode::NonIntegrable, "capacity measure diverges at the boundary");
        // second order pole at x0: integrate on a logarithmic grid
        const double ya = std::log(a - x0_), yb = std::log(b - x0_);
        return num::integrate(
            Quadrant([&](double y) { const double e = std::exp(y); return g(x0_ + e) * e; }, ya, yb));
    }
    return num::integrate(Quadrant(g, a, b));
}

double ConformalSegment::tail_capacity_integral(double a) const {
    if (!infinite() || !tail_c_)
        throw Error(ErrorCode::InvalidSpec, "segment is not an asymptotic tail");
    auto g = [this](double x) {
        const double u = u_.value(x);
        return base_->lapse(x) / (base_->area(x) * u * u);
    };
    // split off a finite head so the tail quadrature starts well inside the
    // asymptotic regime
    double lo = a, head = 0.0;
    const double safe = std::max({1.0, 2.0 * std::abs(x0_), 2.0 * std::abs(a)});
    if (lo < safe) {
        head = capacity_integral(lo, safe);
        lo = safe;
    }
    return head + num::integrate(Quadrant(g, lo, num::kInf, std::nullopt, -2.0));
}

double ConformalSegment::tail_adm() const {
    if (!infinite() || !tail_c_)
        throw Error(ErrorCode::InvalidSpec, "segment is not an asymptotic tail");
    return base_->tail_adm() + 2.0 * *tail_c_;
}

std::optional<OriginData> ConformalSegment::origin_data() const {
    if (u_.vanish_slope) {
        // A ~ Abar(x0) k^4 tau^4 with s = wbar(x0) k^2 tau^3/3, tau = x - x0
        const double a0 = base_->area(x0_);
        if (!(a0 > 0.0)) return std::nullopt;
        const double ks = *u_.vanish_slope / base_->lapse(x0_);
        return OriginData{4.0 / 3.0, a0 * std::pow(3.0 * ks, 4.0 / 3.0)};
    }
    const auto base_org = base_->origin_data();
    if (!base_org) return std::nullopt;
    const double u0 = u_.value(x0_);
    if (!(u0 > 0.0)) return std::nullopt;
    // ds = u0^2 dsbar and A = u0^4 Abar to leading order
    return OriginData{base_org->exponent,
                      base_org->coefficient * std::pow(u0, 4.0 - 2.0 * base_org->exponent)};
}

// -------------------------------------------------------- CustomAreaSegment

CustomAreaSegment::CustomAreaSegment(double x0, double x1, std::function<double(double)> area,
                                     std::function<double(double)> darea,
                                     std::function<double(double)> d2area,
                                     std::optional<OriginData> origin)
    : Segment(x0, x1), area_(std::move(area)), darea_(std::move(darea)),
      d2area_(std::move(d2area)), origin_(origin) {
    require(bool(area_) && bool(darea_) && bool(d2area_),
            "custom segment needs area, darea and d2area");
    require(!origin_ || x0 == 0.0, "an origin expansion requires x0 = 0");
}

double CustomAreaSegment::capacity_integral(double a, double b) const {
    if (a == b) return 0.0;
    auto g = [this](double x) { return 1.0 / area_(x); };
    if (origin_ && a == x0_) {
        if (origin_->exponent >= 1.0)
            throw Error(ErrorCode::NonIntegrable, "capacity measure diverges at the boundary");
        return num::integrate(Quadrant(g, a, b, -origin_->exponent, std::nullopt));
    }
    return num::integrate(Quadrant(g, a, b));
}

// ---------------------------------------------------------- ReparamSegment

ReparamSegment::ReparamSegment(SegmentPtr base)
    : Segment(0.0, base->infinite() ? kInf : base->arclength(base->x1())), base_(std::move(base)) {}

double ReparamSegment::to_base(double s) const { return base_->coordinate_at_arclength(s); }

double ReparamSegment::area(double s) const { return base_->area(to_base(s)); }
double ReparamSegment::darea(double s) const {
    const double x = to_base(s);
    return base_->darea(x) / base_->lapse(x);
}
double ReparamSegment::d2area(double s) const {
    const double x = to_base(s);
    const double w = base_->lapse(x);
    return (base_->d2area(x) * w - base_->darea(x) * base_->dlapse(x)) / (w * w * w);
}
double ReparamSegment::capacity_integral(double a, double b) const {
    if (b == kInf) return base_->tail_capacity_integral(to_base(a));
    return base_->capacity_integral(to_base(a), to_base(b));
}
double ReparamSegment::tail_capacity_integral(double a) const {
    return base_->tail_capacity_integral(to_base(a));
}
double ReparamSegment::tail_adm() const { return base_->tail_adm(); }
std::optional<OriginData> ReparamSegment::origin_data() const { return base_->origin_data(); }

}  // namespace zas::geom
