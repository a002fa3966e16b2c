#include "zas/profile.hpp"

#include <algorithm>
#include <cmath>

#include "zas/errors.hpp"

namespace zas::geom {

using num::kInf;

namespace {

double darea_ds_of(const Segment& seg, double x) { return seg.darea(x) / seg.lapse(x); }

double d2area_ds2_of(const Segment& seg, double x) {
    const double w = seg.lapse(x);
    return (seg.d2area(x) * w - seg.darea(x) * seg.dlapse(x)) / (w * w * w);
}

}  // namespace

RadialProfile::RadialProfile(std::vector<SegmentPtr> segments) : segs_(std::move(segments)) {
    if (segs_.empty()) throw Error(ErrorCode::ValidationError, "profile needs at least one segment");
    start_.reserve(segs_.size() + 1);
    start_.push_back(0.0);
    for (std::size_t i = 0; i < segs_.size(); ++i) {
        const Segment& seg = *segs_[i];
        if (seg.infinite()) {
            if (i + 1 != segs_.size())
                throw Error(ErrorCode::ValidationError, "only the last segment may be infinite");
            start_.push_back(kInf);
        } else {
            start_.push_back(start_.back() + seg.arclength(seg.x1()));
        }
        // interior positivity probes
        const double hi = seg.infinite() ? seg.x0() + 8.0 * (std::abs(seg.x0()) + 1.0) : seg.x1();
        for (int j = 1; j < 32; ++j) {
            const double x = seg.x0() + (hi - seg.x0()) * j / 32.0;
            if (!(seg.lapse(x) > 0.0))
                throw Error(ErrorCode::ValidationError, "lapse must be positive in the interior");
            if (!(seg.area(x) > 0.0))
                throw Error(ErrorCode::ValidationError, "area must be positive in the interior");
        }
        if (i == 0) continue;
        const Segment& prev = *segs_[i - 1];
        const double al = prev.area(prev.x1());
        const double ar = seg.area(seg.x0());
        if (std::abs(al - ar) > 1e-9 * std::max(1.0, std::abs(al)))
            throw Error(ErrorCode::ValidationError, "area is discontinuous at a segment join");
        const double dl = darea_ds_of(prev, prev.x1());
        const double dr = darea_ds_of(seg, seg.x0());
        if (std::abs(dl - dr) > 1e-9 * std::max(1.0, std::abs(dl))) c1_ = false;
    }
}

RadialProfile::Local RadialProfile::locate(double s) const {
    if (s < 0.0) {
        if (s < -1e-12 * std::max(1.0, std::abs(s_end()) == kInf ? 1.0 : s_end()))
            throw Error(ErrorCode::DomainError, "arclength before the inner boundary");
        s = 0.0;
    }
    if (!infinite() && s > s_end()) {
        if (s > s_end() * (1.0 + 1e-12) + 1e-12)
            throw Error(ErrorCode::DomainError, "arclength beyond the outer boundary");
        s = s_end();
    }
    auto it = std::upper_bound(start_.begin(), start_.end(), s);
    std::size_t i = static_cast<std::size_t>(it - start_.begin());
    i = (i == 0) ? 0 : i - 1;
    if (i >= segs_.size()) i = segs_.size() - 1;
    const Segment& seg = *segs_[i];
    double x;
    if (s == start_[i])
        x = seg.x0();
    else if (!seg.infinite() && s == start_[i + 1])
        x = seg.x1();
    else
        x = seg.coordinate_at_arclength(s - start_[i]);
    return {i, x};
}

double RadialProfile::area(double s) const {
    const Local loc = locate(s);
    return segs_[loc.index]->area(loc.x);
}

double RadialProfile::darea_ds(double s) const {
    const Local loc = locate(s);
    return darea_ds_of(*segs_[loc.index], loc.x);
}

double RadialProfile::d2area_ds2(double s) const {
    const Local loc = locate(s);
    return d2area_ds2_of(*segs_[loc.index], loc.x);
}

double RadialProfile::capacity_integral(double s_lo, double s_hi) const {
    if (!(s_hi > s_lo)) return 0.0;
    if (s_hi == kInf && !infinite())
        throw Error(ErrorCode::DomainError, "profile has no asymptotic end");
    double total = 0.0;
    for (std::size_t i = 0; i < segs_.size(); ++i) {
        const double s0 = start_[i], s1 = start_[i + 1];
        if (s_hi <= s0) break;
        if (s_lo >= s1) continue;
        const Segment& seg = *segs_[i];
        const double a = std::max(s_lo, s0);
        const double xa = (a == s0) ? seg.x0() : seg.coordinate_at_arclength(a - s0);
        if (s_hi >= s1 && seg.infinite()) {
            total += seg.tail_capacity_integral(xa);
            break;
        }
        const double b = std::min(s_hi, s1);
        const double xb = (b == s1) ? seg.x1() : seg.coordinate_at_arclength(b - s0);
        total += seg.capacity_integral(xa, xb);
    }
    return total;
}

}  // namespace zas::geom
