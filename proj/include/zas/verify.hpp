#pragma once

#include <string>
#include <vector>

namespace zas::verify {

struct CheckResult {
    std::string name;    // module.check
    double residual;     // measured
    double gate;         // pass iff residual <= gate (and no abort)
    bool pass;
    std::string note;    // failure detail or aborted-error text
};

struct Summary {
    std::vector<CheckResult> checks;
    int failed = 0;
    double tol = 0.0;
    unsigned seed = 0;
};

// Runs the named invariant suites.  Scope is "all" or one module name
// (numeric_kernel, radial_geometry, conformal_toolkit, model_library, cli).
// `tol` loosens the numeric tolerances the checks run at and scales their
// gates with them; it must lie in [1e-12, 1e-3].  Check failures are results,
// not errors: nothing throws for a red check.
Summary run_checks(const std::string& scope, double tol, unsigned seed);

std::string summary_json(const Summary& s);

}  // namespace zas::verify
