#pragma once

#include <optional>
#include <string>

#include "zas/conformal.hpp"
#include "zas/profile.hpp"

namespace zas::model {

// Built-in model families.  `custom` points at a profile file in the JSON
// schema accepted by load_profile().
struct ModelSpec {
    enum class Kind {
        Flat,
        Schwarzschild,              // mass of either sign; m < 0 has a ZAS boundary
        PowerLawZas,                // A = 4 pi s^alpha near the origin, canonical tail
        SchwarzschildWithCylinder,  // neck length L spliced behind a horizon of mass mbar
        SinBump,                    // A = 4 pi (1 + eps + sin s) on [0, 2 pi], then a tail
        Custom,
    };

    Kind kind = Kind::Flat;
    double mass = 0.0;    // Schwarzschild
    double alpha = 0.0;   // PowerLawZas
    double mbar = 0.0;    // SchwarzschildWithCylinder
    double length = 0.0;  //   "
    double eps = 0.0;     // SinBump
    std::string file;     // Custom

    static ModelSpec flat();
    static ModelSpec schwarzschild(double m);
    static ModelSpec power_law_zas(double alpha);
    static ModelSpec schwarzschild_with_cylinder(double mbar, double L);
    static ModelSpec sin_bump(double eps);
    static ModelSpec custom(std::string file);
};

// Parses "flat", "schwarzschild=-1", "power_law_zas=1.5",
// "schwarzschild_with_cylinder=1,4", "sin_bump=0.5", "custom=path.json".
ModelSpec parse_model_spec(const std::string& text);

std::string describe(const ModelSpec& spec);

// A model is a radial profile plus, when the construction is conformal
// (negative mass Schwarzschild, cylinder splice), the resolution pair.
struct BuiltModel {
    geom::RadialProfile profile;
    std::optional<conf::ConformalPair> pair;
};

BuiltModel build(const ModelSpec& spec);

// Closed forms for the cylinder splice: the harmonic factor equals
// a + b/(2t) + O(1/t^2) at infinity, and the deformed metric carries a ZAS
// of the given mass.
struct CylinderReference {
    double a;
    double b;
    double zas_mass;
};
CylinderReference cylinder_reference(double mbar, double L);

// Reads a profile description:
//   {
//     "coordinate": {"name": "...", "start": <number>},
//     "segments": [{"kind": "...", "params": {...}, "interval": [a, b]}, ...],
//     "tail": {"kind": "...", "params": {...}}
//   }
// Intervals chain monotonically from coordinate.start; the tail extends the
// last interval to infinity.  Unknown fields anywhere are rejected.
geom::RadialProfile load_profile(const std::string& path);

}  // namespace zas::model
