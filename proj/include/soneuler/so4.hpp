#pragma once

#include "soneuler/antisym.hpp"

#include <array>

namespace soneuler {

class InertiaSpec;

/// Coordinates (l, m) on so(4) = so(3) + so(3). The identification is fixed
/// so that the induced brackets are {l_i,l_j} = eps_ijk l_k,
/// {m_i,m_j} = eps_ijk m_k, {l_i,m_j} = 0, and the Euler field mu' = [J,mu^2]
/// becomes l' = (Lambda m) x l, m' = (Lambda l) x m.
struct LMState {
    Eigen::Vector3d l;
    Eigen::Vector3d m;
};

/// Diagonal split-inertia Lambda with derived Theta_i = product of the other
/// two Lambda entries.
class LambdaSpec {
public:
    explicit LambdaSpec(Eigen::Vector3d lambda);

    const Eigen::Vector3d& lambda() const { return lambda_; }
    double operator[](int i) const { return lambda_[i]; }
    Eigen::Vector3d theta() const;

    /// Generic means Lambda_i != 0 and Lambda_i^2 != Lambda_j^2 for i != j.
    bool is_generic(std::string* why = nullptr) const;
    void validate_generic() const;

private:
    Eigen::Vector3d lambda_;
};

/// The fixed orthogonal basis pair: mu = sum_i l_i basis_l(i) + m_i basis_m(i).
const AntisymMatrix& lm_basis_l(int i);
const AntisymMatrix& lm_basis_m(int i);

LMState mu_to_lm(const AntisymMatrix& mu); // requires n = 4
AntisymMatrix lm_to_mu(const LMState& s);

/// The so(4) element Y whose adjoint action reads (xi x ., eta x .) in the
/// split coordinates: Y = (xi . basis_l + eta . basis_m) / 2.
AntisymMatrix lm_generator(const Eigen::Vector3d& xi, const Eigen::Vector3d& eta);

/// Gradient (as an so(4) element) of a function with split-gradient (gl, gm).
AntisymMatrix lm_gradient(const Eigen::Vector3d& gl, const Eigen::Vector3d& gm);

/// Lambda_1 = -J_1+J_2+J_3-J_4, Lambda_2 = -J_1+J_2-J_3+J_4,
/// Lambda_3 = -J_1-J_2+J_3+J_4; throws nongeneric_error if the result is
/// degenerate. Invariant under J -> J + cI.
LambdaSpec lambda_from_inertia(const InertiaSpec& j);

/// (H, K) = (l^T Lambda m, 1/2 l^T Lambda^2 l + 1/2 m^T Lambda^2 m - l^T Theta m).
std::pair<double, double> lm_hamiltonians(const LambdaSpec& lam, const LMState& s);

/// l' = (Lambda m) x l, m' = (Lambda l) x m.
LMState lm_vector_field(const LambdaSpec& lam, const LMState& s);

} // namespace soneuler
