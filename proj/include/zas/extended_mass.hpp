#pragma once

#include <limits>

#include "zas/errors.hpp"

namespace zas {

// Mass of a zero area singularity: a real number <= 0, or -infinity when
// the singularity has positive capacity.  Small positive numerical noise
// is clamped; anything larger is rejected.
class ExtendedMass {
  public:
    static ExtendedMass of(double v) {
        if (v > 1e-6)
            throw Error(ErrorCode::ValidationError, "singularity mass must be nonpositive");
        ExtendedMass m;
        m.finite_ = true;
        m.value_ = std::min(v, 0.0);
        return m;
    }
    static ExtendedMass neg_infinity() {
        ExtendedMass m;
        m.finite_ = false;
        m.value_ = -std::numeric_limits<double>::infinity();
        return m;
    }
    bool finite() const { return finite_; }
    double value() const { return value_; }  // -inf when not finite

  private:
    bool finite_ = true;
    double value_ = 0.0;
};

}  // namespace zas
