#pragma once

#include "soneuler/antisym.hpp"
#include "soneuler/dynamics.hpp"
#include "soneuler/so4.hpp"

#include <array>
#include <complex>
#include <functional>
#include <optional>

namespace soneuler {

/// Orthonormal basis of the orbit tangent space T_x = Im(ad_x) at an
/// equilibrium, built by Gram-Schmidt (pairing inner product) over the
/// lexicographically ordered spanning set [E_ab - E_ba, x]. Each basis
/// vector keeps a generator Y_k with [Y_k, x] = vectors[k], which also
/// provides a second-order chart of the orbit.
struct TangentBasis {
    AntisymMatrix base_point;
    std::vector<AntisymMatrix> generators;
    std::vector<AntisymMatrix> vectors;

    int dim() const { return static_cast<int>(vectors.size()); }
    Eigen::VectorXd coordinates(const AntisymMatrix& v) const;
    AntisymMatrix vector_from(const Eigen::VectorXd& c) const;
    /// exp(sum_k u_k Y_k) x exp(-...): a chart of the orbit around x.
    AntisymMatrix chart_point(const Eigen::VectorXd& u) const;
};

TangentBasis tangent_basis(const AntisymMatrix& x_eq);

/// The linearized flow v -> [J, v x + x v] applied to one tangent vector.
AntisymMatrix linearized_field(const InertiaSpec& j, const AntisymMatrix& x_eq,
                               const AntisymMatrix& v);

struct Linearization {
    TangentBasis basis;
    Eigen::MatrixXd matrix;
    std::vector<std::complex<double>> spectrum; // sorted by (re, im)
};

/// Matrix of the linearized flow on the orbit tangent space at an
/// equilibrium (dimension n(n-1)/2 - floor(n/2)).
Linearization linearize(const InertiaSpec& j, const AntisymMatrix& x_eq);

/// Closed-form characteristic data of the 4x4 split-coordinate linearization:
/// zeta^4 + c2 zeta^2 + c0 with
///   c2 = (a^2+1) L3^2 + 2 a L1 L2,
///   c0 = a^2 (L3^2 - L1^2)(L3^2 - L2^2),
/// and discriminant = c2^2 - 4 c0 (cross-checked against its expanded form).
struct CharacteristicCoefficients {
    double c2;
    double c0;
    double discriminant;
};

CharacteristicCoefficients so4_characteristic(const LambdaSpec& lam, double a);

/// The explicit linearization matrix at the equilibrium (a e3, e3) in the
/// tangent coordinates v = (xi1, eta1, xi2, eta2).
Eigen::Matrix4d so4_linearization_matrix(const LambdaSpec& lam, double a);

/// Its four eigenvalues from the closed form, sorted by (re, im).
std::array<std::complex<double>, 4> so4_spectrum(const LambdaSpec& lam, double a);

/// Condition flags for the stability trichotomy:
///   (i)    (L3^2 - L1^2)(L3^2 - L2^2) > 0
///   (ii)   c2 > 0
///   (iiia) discriminant > 0        (iiib) discriminant = 0 within tolerance
struct StabilityConditions {
    bool cond_i = false;
    bool cond_ii = false;
    bool cond_iiia = false;
    bool cond_iiib = false;
};

/// Restricted Hessian blocks at (a e3, e3), up to per-function constants, of
/// the energy H and of the auxiliary integral F = L1 L2 H + L3 K:
/// d2H ~ diag(h1, h2), d2F ~ diag(f1, f2).
void so4_hessian_blocks(const LambdaSpec& lam, double a, Eigen::Matrix2d& h1, Eigen::Matrix2d& h2,
                        Eigen::Matrix2d& f1, Eigen::Matrix2d& f2);

/// Energy-Casimir certificate for a stable so(4) equilibrium: a value z with
/// Q_i = 4 z h_i + f_i (the restricted Hessian blocks of 4zH + F) definite,
/// certified by det Q1 > 0, det Q2 > 0, tr Q1 tr Q2 > 0.
///
/// When L3^2 is the smallest square ("pencil" case), z sits at the vertex of
/// the admissible interval. When L3^2 dominates, the vertex choice is
/// provably indefinite; the energy Hessian alone is then definite and z is
/// chosen outside the interval with an explicit margin.
struct LyapunovCertificate {
    double z = 0.0;
    Eigen::Matrix2d q1, q2;
    Eigen::Matrix2d h1, h2, f1, f2;
    bool q_definite = false;
    bool energy_hessian_definite = false;
    bool lambda3_dominant = false; ///< true in the dominant case (z not at vertex)
    bool z_at_vertex = false;
};

LyapunovCertificate lyapunov_certificate(const LambdaSpec& lam, double a);

enum class StabilityVerdict { stable, unstable, nongeneric_rejected };

struct StabilityReport {
    StabilityVerdict verdict = StabilityVerdict::nongeneric_rejected;
    StabilityConditions conditions;
    CharacteristicCoefficients characteristic{0, 0, 0};
    std::vector<std::complex<double>> spectrum;
    std::optional<LyapunovCertificate> certificate;   // present iff stable
    std::optional<std::complex<double>> witness;      // eigenvalue with positive real part
    std::string note;
};

/// Full trichotomy at the equilibrium (a e3, e3): stable iff (i), (ii),
/// (iiia) all hold; a vanishing discriminant with (i), (ii) is reported
/// unstable (arbitrarily close parameters have complex quartets) even though
/// the spectrum is imaginary. Non-generic inputs yield the rejected verdict.
StabilityReport classify_so4(const LambdaSpec& lam, double a);

/// One decoupled subproblem of the linearization at a Cartan equilibrium.
struct BlockProblem {
    enum class Kind { so4, so3 };
    Kind kind = Kind::so4;
    int slot_i = 0;      ///< Cartan slot index (0-based)
    int slot_j = -1;     ///< second slot for so4 blocks
    double x_i = 0.0;
    double x_j = 0.0;    ///< unused for so3 blocks
    std::array<double, 2> inertia_i{};  ///< (J_{2i}, J_{2i+1}), 0-based slots
    std::array<double, 2> inertia_j{};  ///< so4: (J_{2j}, J_{2j+1}); so3: (J_tail, 0)
    std::optional<LambdaSpec> lambda_loc; ///< so4 blocks only
    double a_loc = 0.0;
    double b_loc = 0.0;  ///< eigenvalue scale; local spectrum times b_loc
    std::vector<std::complex<double>> eigenvalues;

    /// An eigenvalue counts as imaginary when |Re z| < tol (1 + |z|); the
    /// default tol is the global imaginary_eig_rel.
    bool has_real_eigenvalue(double tol_rel = -1.0) const;
    /// Distinct positive magnitudes of real eigenvalues, descending.
    std::vector<double> real_eigenvalue_magnitudes(double tol_rel = -1.0) const;
};

/// Decouples the linearization at a generic Cartan equilibrium into one
/// so(4) subproblem per slot pair i < j plus, for odd n, one so(3)
/// subproblem per slot (coupling slot i with the trailing direction).
/// The union of block eigenvalues is the full linearization spectrum.
std::vector<BlockProblem> block_decompose(const InertiaSpec& j, const CartanElement& x);

/// Result of the numeric energy-Casimir search: a combination of the given
/// integrals with definite restricted Hessian and vanishing restricted
/// gradient at x_eq.
struct DefinitenessCertificate {
    Eigen::VectorXd coefficients;  ///< unit vector, one entry per integral
    double margin = 0.0;           ///< smallest |eigenvalue| of the definite Hessian
    double gradient_norm = 0.0;    ///< max restricted gradient norm among integrals
};

/// Grid search (21 points per axis on [-10,10]^k) plus Nelder-Mead refinement
/// of the definiteness margin. Advisory: finding nothing proves nothing.
std::optional<DefinitenessCertificate> definiteness_search(
    const InertiaSpec& j, const AntisymMatrix& x_eq,
    const std::vector<std::function<double(const AntisymMatrix&)>>& integrals);

/// Multiset distance: max over greedy nearest-neighbor pairing.
double spectrum_multiset_distance(std::vector<std::complex<double>> a,
                                  std::vector<std::complex<double>> b);

/// A Hamiltonian spectrum must be closed under negation and conjugation.
bool quartet_symmetric(const std::vector<std::complex<double>>& spectrum, double tol);

} // namespace soneuler
