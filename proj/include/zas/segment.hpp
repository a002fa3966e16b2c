#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "zas/quadrature.hpp"

namespace zas::geom {

// Leading behaviour of the area function in arclength from the inner
// boundary: A(s) ~ coefficient * s^exponent.
struct OriginData {
    double exponent;
    double coefficient;
};

// A radial function of a segment's native coordinate, with derivatives.
// `second` may be empty when curvature-level data is not available.
// `vanish_slope` marks a conformal piece vanishing at the inner edge to
// first order, u ~ k (x - x0); pieces that are exactly linear over a
// cylinder base additionally unlock closed forms.
struct RadialFunction {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
    std::function<double(double)> second;
    std::optional<double> vanish_slope;
};

// One smooth piece of a spherically symmetric metric
//   ds^2 = w(x)^2 dx^2 + (A(x)/4pi) dsigma^2
// on the native coordinate interval [x0, x1], x1 possibly +inf (a tail).
class Segment {
  public:
    Segment(double x0, double x1) : x0_(x0), x1_(x1) {}
    virtual ~Segment() = default;

    double x0() const { return x0_; }
    double x1() const { return x1_; }
    bool infinite() const { return x1_ == num::kInf; }

    virtual double lapse(double x) const = 0;
    virtual double dlapse(double x) const = 0;
    virtual double area(double x) const = 0;
    virtual double darea(double x) const = 0;
    virtual double d2area(double x) const = 0;

    // arclength measured from x0 along this segment
    virtual double arclength(double x) const;
    virtual double coordinate_at_arclength(double s) const;  // inverse map

    // \int_a^b (w/A) dx, the capacity measure on this segment
    virtual double capacity_integral(double a, double b) const;
    // \int_a^inf (w/A) dx in closed form; tails only
    virtual double tail_capacity_integral(double a) const;
    // mass read off the asymptotics; tails only
    virtual double tail_adm() const;

    // area expansion at x0 when A(x0) = 0, in this segment's own arclength
    virtual std::optional<OriginData> origin_data() const { return std::nullopt; }

    // true when the metric coefficients are twice differentiable up to x1
    // (joins between segments are judged separately)
    virtual bool smooth() const { return true; }

  protected:
    double quadrature_arclength(double x) const;
    double newton_coordinate(double s, double guess) const;

    double x0_, x1_;
};

using SegmentPtr = std::shared_ptr<const Segment>;

// A = coeff * x^alpha, unit lapse.  The alpha = 2, coeff = 4pi case is flat
// space in arclength coordinates.
class PowerAreaSegment : public Segment {
  public:
    PowerAreaSegment(double coeff, double alpha, double x0, double x1);
    double lapse(double) const override { return 1.0; }
    double dlapse(double) const override { return 0.0; }
    double area(double x) const override;
    double darea(double x) const override;
    double d2area(double x) const override;
    double arclength(double x) const override { return x - x0_; }
    double coordinate_at_arclength(double s) const override { return x0_ + s; }
    double capacity_integral(double a, double b) const override;
    double tail_capacity_integral(double a) const override;
    double tail_adm() const override;
    std::optional<OriginData> origin_data() const override;
    double alpha() const { return alpha_; }
    double coeff() const { return coeff_; }

  private:
    double coeff_, alpha_;
};

// Constant area cross-section (round cylinder), unit lapse.
class CylinderSegment : public Segment {
  public:
    CylinderSegment(double area0, double x0, double x1);
    double lapse(double) const override { return 1.0; }
    double dlapse(double) const override { return 0.0; }
    double area(double) const override { return area0_; }
    double darea(double) const override { return 0.0; }
    double d2area(double) const override { return 0.0; }
    double arclength(double x) const override { return x - x0_; }
    double coordinate_at_arclength(double s) const override { return x0_ + s; }
    double capacity_integral(double a, double b) const override { return (b - a) / area0_; }
    double area0() const { return area0_; }

  private:
    double area0_;
};

// A = 4pi (1 + eps + sin x) on [0, 2pi], unit lapse.
class SinBumpSegment : public Segment {
  public:
    explicit SinBumpSegment(double eps);
    double lapse(double) const override { return 1.0; }
    double dlapse(double) const override { return 0.0; }
    double area(double x) const override;
    double darea(double x) const override;
    double d2area(double x) const override;
    double arclength(double x) const override { return x - x0_; }
    double coordinate_at_arclength(double s) const override { return x0_ + s; }
    double eps() const { return eps_; }

  private:
    double eps_;
};

// Cubic Hermite interpolation of the areal radius phi = sqrt(A/4pi) between
// two states; used for deterministic C^1 joins.  Unit lapse.
class HermiteAreaSegment : public Segment {
  public:
    HermiteAreaSegment(double x0, double x1, double phi0, double dphi0, double phi1, double dphi1);
    double lapse(double) const override { return 1.0; }
    double dlapse(double) const override { return 0.0; }
    double area(double x) const override;
    double darea(double x) const override;
    double d2area(double x) const override;
    double arclength(double x) const override { return x - x0_; }
    double coordinate_at_arclength(double s) const override { return x0_ + s; }

  private:
    double phi(double x) const;
    double dphi(double x) const;
    double d2phi(double x) const;
    double c0_, c1_, c2_, c3_;  // coefficients in (x - x0)
};

// Schwarzschild exterior in isotropic coordinates:
//   w = (1 + m/2t)^2,  A = 4pi t^2 (1 + m/2t)^4,  t >= t0 > max(0, m/2).
class SchwIsotropicSegment : public Segment {
  public:
    SchwIsotropicSegment(double m, double t0, double t1);
    double lapse(double t) const override;
    double dlapse(double t) const override;
    double area(double t) const override;
    double darea(double t) const override;
    double d2area(double t) const override;
    double arclength(double t) const override;
    double coordinate_at_arclength(double s) const override;
    double capacity_integral(double a, double b) const override;
    double tail_capacity_integral(double a) const override;
    double tail_adm() const override { return m_; }
    double mass() const { return m_; }

  private:
    double m_;
};

// Negative mass Schwarzschild measured from its zero area boundary: the
// native coordinate is the offset x = t - t0 from the isotropic singular
// radius t0 = |m|/2, avoiding cancellation near the boundary.
//   w = (x/(x+t0))^2,  A = 4pi x^4/(x+t0)^2,  mass m = -2 t0.
class SchwZasSegment : public Segment {
  public:
    SchwZasSegment(double t0, double x0, double x1);
    double lapse(double x) const override;
    double dlapse(double x) const override;
    double area(double x) const override;
    double darea(double x) const override;
    double d2area(double x) const override;
    double arclength(double x) const override;
    double coordinate_at_arclength(double s) const override;
    double capacity_integral(double a, double b) const override;
    double tail_capacity_integral(double a) const override;
    double tail_adm() const override { return -2.0 * t0_; }
    std::optional<OriginData> origin_data() const override;
    double t0() const { return t0_; }

  private:
    double t0_;
};

// Schwarzschild of mass mu in area radius coordinates:
//   w = (1 - 2 mu/R)^{-1/2},  A = 4pi R^2,  R > 2 mu.
// mu = 0 is flat space.  The standard asymptotically flat tail.
class SchwArealSegment : public Segment {
  public:
    SchwArealSegment(double mu, double r0, double r1);
    double lapse(double r) const override;
    double dlapse(double r) const override;
    double area(double r) const override;
    double darea(double r) const override;
    double d2area(double r) const override;
    double arclength(double r) const override;
    double coordinate_at_arclength(double s) const override;
    double capacity_integral(double a, double b) const override;
    double tail_capacity_integral(double a) const override;
    double tail_adm() const override { return mu_; }
    double mu() const { return mu_; }

  private:
    double F(double r) const;  // arclength antiderivative
    double mu_;
};

// Conformal deformation u^4 g of a base segment by a radial factor u:
//   w = wbar u^2,  A = Abar u^4.
class ConformalSegment : public Segment {
  public:
    ConformalSegment(SegmentPtr base, RadialFunction u);
    // tail form: u ~ 1 + tail_c/x as x -> inf, so the mass shifts by 2 tail_c
    ConformalSegment(SegmentPtr base, RadialFunction u, double tail_c);
    double lapse(double x) const override;
    double dlapse(double x) const override;
    double area(double x) const override;
    double darea(double x) const override;
    double d2area(double x) const override;
    double arclength(double x) const override;
    double coordinate_at_arclength(double s) const override;
    double capacity_integral(double a, double b) const override;
    double tail_capacity_integral(double a) const override;
    double tail_adm() const override;
    std::optional<OriginData> origin_data() const override;
    bool smooth() const override { return bool(u_.second); }
    const Segment& base() const { return *base_; }
    const RadialFunction& factor() const { return u_; }

  private:
    bool linear_on_cylinder() const;
    SegmentPtr base_;
    RadialFunction u_;
    std::optional<double> tail_c_;
};

// Arbitrary smooth unit-lapse area profile; mostly for tests and for the
// fixed backgrounds used by the harmonic resolution machinery.
class CustomAreaSegment : public Segment {
  public:
    CustomAreaSegment(double x0, double x1, std::function<double(double)> area,
                      std::function<double(double)> darea, std::function<double(double)> d2area,
                      std::optional<OriginData> origin = std::nullopt);
    double lapse(double) const override { return 1.0; }
    double dlapse(double) const override { return 0.0; }
    double area(double x) const override { return area_(x); }
    double darea(double x) const override { return darea_(x); }
    double d2area(double x) const override { return d2area_(x); }
    double arclength(double x) const override { return x - x0_; }
    double coordinate_at_arclength(double s) const override { return x0_ + s; }
    double capacity_integral(double a, double b) const override;
    std::optional<OriginData> origin_data() const override { return origin_; }

  private:
    std::function<double(double)> area_, darea_, d2area_;
    std::optional<OriginData> origin_;
};

// Same geometry as an underlying segment, re-indexed by its own arclength
// (unit lapse by construction).
class ReparamSegment : public Segment {
  public:
    explicit ReparamSegment(SegmentPtr base);
    double lapse(double) const override { return 1.0; }
    double dlapse(double) const override { return 0.0; }
    double area(double s) const override;
    double darea(double s) const override;
    double d2area(double s) const override;
    double arclength(double s) const override { return s - x0_; }
    double coordinate_at_arclength(double s) const override { return x0_ + s; }
    double capacity_integral(double a, double b) const override;
    double tail_capacity_integral(double a) const override;
    double tail_adm() const override;
    std::optional<OriginData> origin_data() const override;
    bool smooth() const override { return base_->smooth(); }

  private:
    double to_base(double s) const;
    SegmentPtr base_;
};

}  // namespace zas::geom
