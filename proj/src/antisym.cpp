#include "soneuler/antisym.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numeric>
#include <sstream>

namespace soneuler {

Tolerances& Tolerances::global() {
    static Tolerances tol;
    return tol;
}

AntisymMatrix::AntisymMatrix(int n) : n_(n), upper_(Eigen::VectorXd::Zero(n * (n - 1) / 2)) {
    if (n < 2) throw std::invalid_argument("AntisymMatrix: dimension must be >= 2");
}

AntisymMatrix::AntisymMatrix(int n, Eigen::VectorXd upper) : n_(n), upper_(std::move(upper)) {
    if (n < 2) throw std::invalid_argument("AntisymMatrix: dimension must be >= 2");
    if (upper_.size() != n * (n - 1) / 2)
        throw std::invalid_argument("AntisymMatrix: upper triangle size mismatch");
}

int AntisymMatrix::index(int i, int j) const {
    return i * (n_ - 1) - i * (i - 1) / 2 + (j - i - 1);
}

double AntisymMatrix::operator()(int i, int j) const {
    if (i == j) return 0.0;
    return i < j ? upper_[index(i, j)] : -upper_[index(j, i)];
}

void AntisymMatrix::set(int i, int j, double value) {
    if (i == j) {
        if (value != 0.0) throw std::invalid_argument("AntisymMatrix: diagonal must stay zero");
        return;
    }
    if (i < j)
        upper_[index(i, j)] = value;
    else
        upper_[index(j, i)] = -value;
}

AntisymMatrix AntisymMatrix::from_matrix(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("AntisymMatrix: matrix not square");
    const double drift = (m + m.transpose()).norm();
    const double scale = std::max(1.0, m.norm());
    if (drift > Tolerances::global().input_antisymmetry * scale) {
        std::ostringstream os;
        os << "AntisymMatrix: ||M + M^T|| = " << drift << " exceeds input tolerance";
        throw std::invalid_argument(os.str());
    }
    return project(m);
}

AntisymMatrix AntisymMatrix::project(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    AntisymMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.set(i, j, 0.5 * (m(i, j) - m(j, i)));
    return out;
}

Eigen::MatrixXd AntisymMatrix::dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) {
            const double v = upper_[index(i, j)];
            m(i, j) = v;
            m(j, i) = -v;
        }
    return m;
}

double AntisymMatrix::norm() const { return std::sqrt(2.0) * upper_.norm(); }

AntisymMatrix& AntisymMatrix::operator+=(const AntisymMatrix& rhs) {
    if (rhs.n_ != n_) throw std::invalid_argument("AntisymMatrix: dimension mismatch");
    upper_ += rhs.upper_;
    return *this;
}

AntisymMatrix& AntisymMatrix::operator-=(const AntisymMatrix& rhs) {
    if (rhs.n_ != n_) throw std::invalid_argument("AntisymMatrix: dimension mismatch");
    upper_ -= rhs.upper_;
    return *this;
}

AntisymMatrix& AntisymMatrix::operator*=(double c) {
    upper_ *= c;
    return *this;
}

double pairing(const AntisymMatrix& a, const AntisymMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("pairing: dimension mismatch");
    // -1/2 tr(a b) = sum over the strict upper triangle of a_ij b_ij.
    return a.upper().dot(b.upper());
}

AntisymMatrix commutator(const AntisymMatrix& a, const AntisymMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("commutator: dimension mismatch");
    const Eigen::MatrixXd ma = a.dense(), mb = b.dense();
    return AntisymMatrix::project(ma * mb - mb * ma);
}

AntisymMatrix conjugate(const Eigen::MatrixXd& g, const AntisymMatrix& a) {
    if (g.rows() != a.dim() || g.cols() != a.dim())
        throw std::invalid_argument("conjugate: dimension mismatch");
    const double drift = (g.transpose() * g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).norm();
    if (drift > Tolerances::global().input_orthogonality) {
        std::ostringstream os;
        os << "conjugate: ||g^T g - I|| = " << drift << " exceeds input tolerance";
        throw std::invalid_argument(os.str());
    }
    return AntisymMatrix::project(g * a.dense() * g.transpose());
}

Eigen::MatrixXd group_exp(const AntisymMatrix& y, double s) {
    const Eigen::MatrixXd m = s * y.dense();
    return m.exp();
}

double lie_poisson_bracket(const AntisymMatrix& grad_phi, const AntisymMatrix& grad_psi,
                           const AntisymMatrix& alpha) {
    return pairing(alpha, commutator(grad_phi, grad_psi));
}

CartanElement::CartanElement(int n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
    if (n < 3) throw std::invalid_argument("CartanElement: dimension must be >= 3");
    if (static_cast<int>(values_.size()) != n / 2)
        throw std::invalid_argument("CartanElement: expected floor(n/2) values");
}

AntisymMatrix CartanElement::matrix() const {
    AntisymMatrix x(n_);
    for (int k = 0; k < block_count(); ++k) x.set(2 * k, 2 * k + 1, values_[k]);
    return x;
}

bool CartanElement::is_generic(std::string* why) const {
    const double tol = Tolerances::global().genericity;
    double max_sq = 0.0;
    for (double v : values_) max_sq = std::max(max_sq, v * v);
    const double sep = tol * std::max(1.0, max_sq);
    for (int k = 0; k < block_count(); ++k) {
        if (values_[k] * values_[k] <= sep) {
            if (why) {
                std::ostringstream os;
                os << "x_" << k + 1 << " = " << values_[k] << " violates x_k != 0";
                *why = os.str();
            }
            return false;
        }
    }
    for (int k = 0; k < block_count(); ++k)
        for (int l = k + 1; l < block_count(); ++l) {
            if (std::abs(values_[k] * values_[k] - values_[l] * values_[l]) <= sep) {
                if (why) {
                    std::ostringstream os;
                    os << "x_" << k + 1 << "^2 = x_" << l + 1 << "^2 = " << values_[k] * values_[k]
                       << " violates x_k^2 != x_l^2 for k != l";
                    *why = os.str();
                }
                return false;
            }
        }
    return true;
}

void CartanElement::validate_generic() const {
    std::string why;
    if (!is_generic(&why)) throw nongeneric_error("non-generic Cartan element: " + why);
}

namespace {
int permutation_sign(const std::vector<int>& images) {
    std::vector<int> p = images;
    int sign = 1;
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
        while (p[i] != i) {
            std::swap(p[i], p[p[i]]);
            sign = -sign;
        }
    }
    return sign;
}
} // namespace

PermutationMatrix::PermutationMatrix(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
        if (v < 0 || v >= dim() || seen[v])
            throw std::invalid_argument("PermutationMatrix: not a permutation");
        seen[v] = true;
    }
    sign_ = permutation_sign(images_);
}

PermutationMatrix PermutationMatrix::identity(int n) {
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    return PermutationMatrix(std::move(id));
}

Eigen::MatrixXd PermutationMatrix::dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim(), dim());
    for (int j = 0; j < dim(); ++j) m(images_[j], j) = 1.0;
    return m;
}

AntisymMatrix PermutationMatrix::conjugate(const AntisymMatrix& a) const {
    if (a.dim() != dim()) throw std::invalid_argument("PermutationMatrix: dimension mismatch");
    // (pbar A pbar^T)(p(i), p(j)) = A(i, j)
    AntisymMatrix out(dim());
    for (int i = 0; i < dim(); ++i)
        for (int j = i + 1; j < dim(); ++j) out.set(images_[i], images_[j], a(i, j));
    return out;
}

std::vector<double> PermutationMatrix::pull_back_diagonal(const std::vector<double>& d) const {
    if (static_cast<int>(d.size()) != dim())
        throw std::invalid_argument("PermutationMatrix: dimension mismatch");
    std::vector<double> out(d.size());
    for (int i = 0; i < dim(); ++i) out[i] = d[images_[i]];
    return out;
}

} // namespace soneuler
