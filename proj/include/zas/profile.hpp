#pragma once

#include <cstddef>
#include <vector>

#include "zas/segment.hpp"

namespace zas::geom {

// A spherically symmetric 3-metric assembled from segments, indexed by
// arclength s from the inner boundary.  Segments must meet with matching
// area; a matching area derivative is recorded in c1().  Only the last
// segment may extend to infinity.
class RadialProfile {
  public:
    explicit RadialProfile(std::vector<SegmentPtr> segments);

    const std::vector<SegmentPtr>& segments() const { return segs_; }
    double seg_start(std::size_t i) const { return start_[i]; }

    bool infinite() const { return segs_.back()->infinite(); }
    double s_end() const { return start_.back(); }
    bool c1() const { return c1_; }

    // inner boundary
    double boundary_area() const { return segs_.front()->area(segs_.front()->x0()); }
    bool zas_boundary() const { return boundary_area() < 1e-20; }
    std::optional<OriginData> origin() const { return segs_.front()->origin_data(); }

    // metric data in arclength
    double area(double s) const;
    double darea_ds(double s) const;
    double d2area_ds2(double s) const;

    // \int ds/A between two arclengths (s_hi may be +inf on infinite profiles)
    double capacity_integral(double s_lo, double s_hi) const;

    // mass read off the tail; throws unless the profile is infinite
    double adm_mass() const { return segs_.back()->tail_adm(); }

    struct Local {
        std::size_t index;
        double x;
    };
    Local locate(double s) const;

  private:
    std::vector<SegmentPtr> segs_;
    std::vector<double> start_;  // arclength at each segment start, plus the total
    bool c1_ = true;
};

}  // namespace zas::geom
