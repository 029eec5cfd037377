#pragma once

#include "soneuler/stability.hpp"

namespace soneuler {

/// A heteroclinic connection realized as a 1-parameter subgroup orbit
/// gamma(s) = exp(sY) x0 exp(-sY), s in (0, pi/delta), joining the unstable
/// equilibria x0 and x1 = gamma(pi/delta). The flow traverses it under the
/// time change t = T(s); chi = 1/T'(s) vanishes at the endpoints with slopes
/// +-z, the real eigenvalue of the linearization.
struct HeteroclinicOrbit {
    AntisymMatrix generator; ///< Y
    AntisymMatrix x0;
    AntisymMatrix x1;
    double z = 0.0;     ///< positive real eigenvalue at x0
    double delta = 0.0; ///< rotation rate of the subgroup on the connecting plane
    double norm_identity_residual = 0.0; ///< |xi|^2 vs |eta|^2 mismatch at build time

    double s_end() const { return M_PI / delta; }
    AntisymMatrix at(double s) const;         ///< exp(sY) x0 exp(-sY)
    AntisymMatrix derivative(double s) const; ///< [Y, gamma(s)]
    double chi(double s) const;               ///< (z/delta) sin(s delta)
    double time_of(double s) const;           ///< (1/z) log tan(s delta / 2)

    /// Conjugates every ingredient by pbar (frame change).
    HeteroclinicOrbit transformed(const PermutationMatrix& p) const;
};

/// Tests whether [Y, x_eq] is an eigenvector of the linearized flow with a
/// real eigenvalue; returns (residual-based verdict, Rayleigh eigenvalue).
/// Throws if Y lies in the isotropy algebra ([Y, x_eq] = 0).
std::pair<bool, double> necessary_condition(const InertiaSpec& j, const AntisymMatrix& x_eq,
                                            const AntisymMatrix& y);

/// Connection through the split-coordinate equilibrium (a e3, e3) from the
/// eigen_index-th largest positive real eigenvalue (0 or 1). Asserts the
/// norm identity |xi|^2 = |eta|^2 of the eigenvector and returns the orbit
/// with endpoints +-(a e3, e3). Throws no_real_eigenvalue_error when the
/// spectrum is not real anywhere.
HeteroclinicOrbit build_so4(const LambdaSpec& lam, double a, int eigen_index = 0);

/// Connection at a general Cartan equilibrium from one decoupled block with
/// a real eigenvalue: the curve moves only inside the block's rows/columns
/// and joins x to x - 2 x_block. The generator sign is chosen so the flow
/// runs from x0 to x1 (z > 0).
HeteroclinicOrbit build_general(const InertiaSpec& j, const CartanElement& x,
                                const BlockProblem& block, int eigen_index = 0);

struct OrbitVerification {
    double max_defining_residual = 0.0;  ///< max ||chi(s) gamma'(s) - [J, gamma(s)^2]||_F
    double vector_field_scale = 0.0;     ///< max ||[J, gamma(s)^2]||_F over samples
    double endpoint_residual_x0 = 0.0;   ///< ||[J, x0^2]||_F
    double endpoint_residual_x1 = 0.0;
    bool reached_target = false;         ///< integration from gamma(eps) got within 1e-4 of x1
    double reach_distance = 0.0;
    double reach_time = 0.0;
    double max_reparametrization_error = 0.0; ///< vs gamma(s) at t = T(s) - T(eps)
    int reparametrization_points = 0;
    bool pass = false;
};

/// Checks the defining relation chi gamma' = [J, gamma^2] on `samples`
/// interior points, then realizes the orbit dynamically: integrates the flow
/// from gamma(eps), eps = 1e-3/delta, comparing against gamma(s) at the
/// reparametrized times for s in [0.1, s_end - 0.1], and continues until the
/// state comes within 1e-4 of x1.
OrbitVerification verify_orbit(const InertiaSpec& j, const HeteroclinicOrbit& orbit, int samples);

} // namespace soneuler
