#pragma once

#include "soneuler/antisym.hpp"

#include <iosfwd>
#include <vector>

namespace soneuler {

/// Diagonal inertia data J = diag(J_1, ..., J_n) with J_i^2 != J_j^2.
class InertiaSpec {
public:
    InertiaSpec(int n, std::vector<double> values);

    int dim() const { return n_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](int i) const { return values_[i]; }

    Eigen::MatrixXd dense() const;
    double norm() const; // Frobenius

    bool is_generic(std::string* why = nullptr) const;
    void validate_generic() const;

    /// Inertia seen from the frame in which the equilibrium pbar x pbar^{-1}
    /// becomes x itself: values J[p(i)] at slot i.
    InertiaSpec conjugated_by(const PermutationMatrix& p) const;

private:
    int n_;
    std::vector<double> values_;
};

/// Energy H(mu) = -1/2 tr(J mu^2).
double hamiltonian(const InertiaSpec& j, const AntisymMatrix& mu);

/// The Euler vector field mu' = [J, mu^2].
AntisymMatrix vector_field(const InertiaSpec& j, const AntisymMatrix& mu);

/// Body angular velocity omega = -(J mu + mu J); entrywise
/// omega_ij = -(J_i + J_j) mu_ij. Satisfies [mu, omega] = [J, mu^2].
AntisymMatrix angular_velocity(const InertiaSpec& j, const AntisymMatrix& mu);

/// One commuting integral: the coefficient of lambda^j in tr((lambda J + mu)^k).
struct ManakovCoefficient {
    int power;         ///< k
    int lambda_degree; ///< j, 0 <= j < k (the pure-J coefficient j = k is omitted)
    double value;
};

/// All lambda-coefficients of tr((lambda J + mu)^k) for 2 <= k <= k_max,
/// extracted by polynomial interpolation at Chebyshev nodes (exact for
/// polynomials up to roundoff). Casimir-degenerate duplicates are kept.
std::vector<ManakovCoefficient> manakov_integrals(const InertiaSpec& j, const AntisymMatrix& mu,
                                                  int k_max);

/// Fixed-step integration record. Invariant columns hold H, tr(mu^2),
/// tr(mu^4) and every Manakov coefficient up to k = 4 at each stored time.
struct Trajectory {
    std::vector<double> times;
    std::vector<AntisymMatrix> states;
    std::vector<std::string> invariant_names;
    std::vector<Eigen::VectorXd> invariants;

    /// Per-column max |v(t) - v(0)| over the whole trajectory.
    Eigen::VectorXd invariant_drift() const;
    /// Same, relative to max(1, |v(0)|).
    Eigen::VectorXd invariant_drift_relative() const;

    /// CSV: t, strict upper triangle (row-major, header m_i_j), then for
    /// n = 4 the split coordinates l1..l3, m1..m3, then the invariants.
    void write_csv(std::ostream& os) const;
};

/// Classic fixed-step RK4 applied to mu' = [J, mu^2]; every state is stored
/// re-antisymmetrized. Throws integrator_failure on non-finite states.
Trajectory integrate(const InertiaSpec& j, const AntisymMatrix& mu0, double t_end, double dt);

} // namespace soneuler
