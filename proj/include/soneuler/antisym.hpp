#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace soneuler {

/// Thrown when an input violates a genericity assumption (the message names
/// the violated inequality).
struct nongeneric_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a heteroclinic construction is requested at a point whose
/// linearization has no real nonzero eigenvalue.
struct no_real_eigenvalue_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when the integrator produces a non-finite state.
struct integrator_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Global numerical tolerances. Inputs are validated against the looser
/// input tolerances; self-produced quantities are held to the tighter ones.
struct Tolerances {
    double input_orthogonality = 1e-8;   ///< ||g^T g - I|| allowed on conjugation inputs
    double input_antisymmetry = 1e-8;    ///< ||M + M^T|| allowed when adopting a raw matrix
    double output_drift = 1e-10;         ///< drift allowed on self-produced outputs
    double genericity = 1e-9;            ///< relative separation for genericity checks
    double equilibrium_rel = 1e-9;       ///< relative residual bound in is_equilibrium
    double distinct_rel = 1e-6;          ///< relative separation between enumerated equilibria
    double imaginary_eig_rel = 1e-8;     ///< |Re z| below this (relative) counts as imaginary
    double discriminant_zero_rel = 1e-9; ///< |D| below this times c2^2 counts as boundary

    static Tolerances& global();
};

/// An element of so(n): a real antisymmetric n x n matrix. Only the strict
/// upper triangle is stored (row-major), so antisymmetry cannot drift.
class AntisymMatrix {
public:
    explicit AntisymMatrix(int n);
    AntisymMatrix(int n, Eigen::VectorXd upper);

    /// Adopts a raw matrix: validates ||M + M^T|| against the input
    /// tolerance, then stores the antisymmetric part (M - M^T)/2.
    static AntisymMatrix from_matrix(const Eigen::MatrixXd& m);

    /// Stores (M - M^T)/2 without validation. For trusted intermediate
    /// results of operations that are antisymmetric up to roundoff.
    static AntisymMatrix project(const Eigen::MatrixXd& m);

    int dim() const { return n_; }
    int upper_size() const { return n_ * (n_ - 1) / 2; }

    double operator()(int i, int j) const;
    void set(int i, int j, double value);

    const Eigen::VectorXd& upper() const { return upper_; }
    Eigen::VectorXd& upper() { return upper_; }

    /// Materializes the full n x n matrix.
    Eigen::MatrixXd dense() const;

    /// Frobenius norm (= sqrt(2) times the norm induced by the pairing).
    double norm() const;

    bool all_finite() const { return upper_.allFinite(); }

    AntisymMatrix& operator+=(const AntisymMatrix& rhs);
    AntisymMatrix& operator-=(const AntisymMatrix& rhs);
    AntisymMatrix& operator*=(double c);

    friend AntisymMatrix operator+(AntisymMatrix a, const AntisymMatrix& b) { return a += b; }
    friend AntisymMatrix operator-(AntisymMatrix a, const AntisymMatrix& b) { return a -= b; }
    friend AntisymMatrix operator*(double c, AntisymMatrix a) { return a *= c; }
    friend AntisymMatrix operator-(AntisymMatrix a) { return a *= -1.0; }

private:
    int n_;
    Eigen::VectorXd upper_;

    int index(int i, int j) const; // requires i < j
};

/// The invariant pairing <a,b> = -1/2 tr(a b). On antisymmetric matrices this
/// equals the dot product of the strict upper triangles; it is symmetric and
/// positive definite.
double pairing(const AntisymMatrix& a, const AntisymMatrix& b);

/// Matrix commutator [a,b] = ab - ba (antisymmetric for antisymmetric a, b).
AntisymMatrix commutator(const AntisymMatrix& a, const AntisymMatrix& b);

/// Conjugation g a g^T by an orthogonal matrix. Validates g^T g = I within
/// the input tolerance and re-antisymmetrizes the product.
AntisymMatrix conjugate(const Eigen::MatrixXd& g, const AntisymMatrix& a);

/// exp(s Y), orthogonal to machine precision (scaling-and-squaring Pade).
Eigen::MatrixXd group_exp(const AntisymMatrix& y, double s);

/// Lie-Poisson bracket of two functions evaluated at alpha, given their
/// gradients as so(n) elements: <alpha, [grad_phi, grad_psi]>.
double lie_poisson_bracket(const AntisymMatrix& grad_phi, const AntisymMatrix& grad_psi,
                           const AntisymMatrix& alpha);

/// A regular element of the standard Cartan subalgebra: 2x2 blocks
/// x_k * [[0,1],[-1,0]] down the diagonal, plus a trailing zero row/column
/// when n is odd.
class CartanElement {
public:
    CartanElement(int n, std::vector<double> values);

    int dim() const { return n_; }
    int block_count() const { return static_cast<int>(values_.size()); }
    const std::vector<double>& values() const { return values_; }

    AntisymMatrix matrix() const;

    /// Generic means x_k != 0 for all k and x_k^2 != x_l^2 for k != l, with
    /// relative separation tolerance.
    bool is_generic(std::string* why = nullptr) const;
    void validate_generic() const; // throws nongeneric_error naming the violation

private:
    int n_;
    std::vector<double> values_;
};

/// A signed permutation matrix pbar with entries pbar(i,j) = 1 iff i = p(j);
/// det(pbar) equals the sign of the permutation.
class PermutationMatrix {
public:
    /// images[j] = p(j), 0-based.
    explicit PermutationMatrix(std::vector<int> images);

    static PermutationMatrix identity(int n);

    int dim() const { return static_cast<int>(images_.size()); }
    int sign() const { return sign_; }
    const std::vector<int>& images() const { return images_; }

    Eigen::MatrixXd dense() const;

    /// pbar a pbar^{-1}, computed by exact index relabeling (no roundoff).
    AntisymMatrix conjugate(const AntisymMatrix& a) const;

    /// Values of pbar^{-1} diag(d) pbar, i.e. d[p(i)] at slot i.
    std::vector<double> pull_back_diagonal(const std::vector<double>& d) const;

private:
    std::vector<int> images_;
    int sign_;
};

} // namespace soneuler
