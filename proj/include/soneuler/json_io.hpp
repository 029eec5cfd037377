#pragma once

#include "soneuler/equilibria.hpp"
#include "soneuler/heteroclinic.hpp"
#include "soneuler/stability.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace soneuler {

using ordered_json = nlohmann::ordered_json;

/// A problem instance as loaded from a JSON spec file:
/// { "n": 4, "J": [...], "x": [...], "options": { "dt", "t_end", "samples", "tol", "seed" } }
struct ProblemSpec {
    int n = 0;
    std::vector<double> inertia;
    std::vector<double> cartan;
    double dt = 1e-3;
    double t_end = 10.0;
    int samples = 200;
    double tol = -1.0; // < 0 keeps the built-in defaults
    unsigned long seed = 0;

    static ProblemSpec from_json(const nlohmann::json& js);
    static ProblemSpec from_file(const std::string& path);

    InertiaSpec inertia_spec() const { return InertiaSpec(n, inertia); }
    CartanElement cartan_element() const { return CartanElement(n, cartan); }

    /// Applies the tol override to the global tolerances and validates
    /// genericity of J and x (throws nongeneric_error naming the violation).
    void apply_and_validate() const;
};

ordered_json to_json(const EquilibriumPoint& e);
ordered_json to_json(const StabilityConditions& c);
ordered_json to_json(const LyapunovCertificate& c);
ordered_json to_json(const StabilityReport& r);
ordered_json to_json(const BlockProblem& b);
ordered_json to_json(const HeteroclinicOrbit& o);
ordered_json to_json(const OrbitVerification& v);

/// CSV of (s, t = T(s), strict upper triangle of gamma(s)) on a uniform
/// interior s-grid.
void write_orbit_csv(std::ostream& os, const HeteroclinicOrbit& orbit, int grid_points);

} // namespace soneuler
