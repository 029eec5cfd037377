#include "soneuler/so4.hpp"

#include "soneuler/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace soneuler {

namespace {

AntisymMatrix make_basis(std::initializer_list<std::array<int, 2>> slots,
                         std::initializer_list<double> vals) {
    AntisymMatrix b(4);
    auto v = vals.begin();
    for (const auto& s : slots) b.set(s[0], s[1], *v++);
    return b;
}

// Two commuting su(2) triples spanning so(4), orthogonal in the pairing with
// norm^2 = 2 and structure constants [e_i, e_j] = 2 eps_ijk e_k in each triple.
const std::array<AntisymMatrix, 3>& basis_l_all() {
    static const std::array<AntisymMatrix, 3> b = {
        make_basis({{0, 3}, {1, 2}}, {-1.0, 1.0}),
        make_basis({{0, 2}, {1, 3}}, {-1.0, -1.0}),
        make_basis({{0, 1}, {2, 3}}, {-1.0, 1.0}),
    };
    return b;
}

const std::array<AntisymMatrix, 3>& basis_m_all() {
    static const std::array<AntisymMatrix, 3> b = {
        make_basis({{0, 3}, {1, 2}}, {1.0, 1.0}),
        make_basis({{0, 2}, {1, 3}}, {1.0, -1.0}),
        make_basis({{0, 1}, {2, 3}}, {1.0, 1.0}),
    };
    return b;
}

void require_so4(const AntisymMatrix& mu, const char* where) {
    if (mu.dim() != 4) throw std::invalid_argument(std::string(where) + ": requires n = 4");
}

} // namespace

const AntisymMatrix& lm_basis_l(int i) { return basis_l_all()[i]; }
const AntisymMatrix& lm_basis_m(int i) { return basis_m_all()[i]; }

LambdaSpec::LambdaSpec(Eigen::Vector3d lambda) : lambda_(std::move(lambda)) {}

Eigen::Vector3d LambdaSpec::theta() const {
    return {lambda_[1] * lambda_[2], lambda_[0] * lambda_[2], lambda_[0] * lambda_[1]};
}

bool LambdaSpec::is_generic(std::string* why) const {
    const double tol = Tolerances::global().genericity;
    const double max_sq = lambda_.cwiseAbs2().maxCoeff();
    const double sep = tol * std::max(1.0, max_sq);
    for (int i = 0; i < 3; ++i)
        if (lambda_[i] * lambda_[i] <= sep) {
            if (why) {
                std::ostringstream os;
                os << "Lambda_" << i + 1 << " = " << lambda_[i] << " violates Lambda_i != 0";
                *why = os.str();
            }
            return false;
        }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(lambda_[i] * lambda_[i] - lambda_[j] * lambda_[j]) <= sep) {
                if (why) {
                    std::ostringstream os;
                    os << "Lambda_" << i + 1 << "^2 = Lambda_" << j + 1 << "^2 = "
                       << lambda_[i] * lambda_[i]
                       << " violates Lambda_i^2 != Lambda_j^2 for i != j";
                    *why = os.str();
                }
                return false;
            }
    return true;
}

void LambdaSpec::validate_generic() const {
    std::string why;
    if (!is_generic(&why)) throw nongeneric_error("non-generic Lambda: " + why);
}

LMState mu_to_lm(const AntisymMatrix& mu) {
    require_so4(mu, "mu_to_lm");
    LMState s;
    for (int i = 0; i < 3; ++i) {
        s.l[i] = 0.5 * pairing(mu, lm_basis_l(i));
        s.m[i] = 0.5 * pairing(mu, lm_basis_m(i));
    }
    return s;
}

AntisymMatrix lm_to_mu(const LMState& s) {
    AntisymMatrix mu(4);
    for (int i = 0; i < 3; ++i) {
        mu += s.l[i] * lm_basis_l(i);
        mu += s.m[i] * lm_basis_m(i);
    }
    return mu;
}

AntisymMatrix lm_generator(const Eigen::Vector3d& xi, const Eigen::Vector3d& eta) {
    AntisymMatrix y(4);
    for (int i = 0; i < 3; ++i) {
        y += (0.5 * xi[i]) * lm_basis_l(i);
        y += (0.5 * eta[i]) * lm_basis_m(i);
    }
    return y;
}

AntisymMatrix lm_gradient(const Eigen::Vector3d& gl, const Eigen::Vector3d& gm) {
    // l_i(mu) = <mu, basis_l(i)>/2, so the pairing-gradient of l_i is basis_l(i)/2.
    return lm_generator(gl, gm);
}

LambdaSpec lambda_from_inertia(const InertiaSpec& j) {
    if (j.dim() != 4) throw std::invalid_argument("lambda_from_inertia: requires n = 4");
    const auto& v = j.values();
    LambdaSpec lam(Eigen::Vector3d{-v[0] + v[1] + v[2] - v[3], -v[0] + v[1] - v[2] + v[3],
                                   -v[0] - v[1] + v[2] + v[3]});
    lam.validate_generic();
    return lam;
}

std::pair<double, double> lm_hamiltonians(const LambdaSpec& lam, const LMState& s) {
    const Eigen::Vector3d lv = lam.lambda();
    const double h = s.l.dot(lv.cwiseProduct(s.m));
    const double k = 0.5 * s.l.dot(lv.cwiseAbs2().cwiseProduct(s.l)) +
                     0.5 * s.m.dot(lv.cwiseAbs2().cwiseProduct(s.m)) -
                     s.l.dot(lam.theta().cwiseProduct(s.m));
    return {h, k};
}

LMState lm_vector_field(const LambdaSpec& lam, const LMState& s) {
    const Eigen::Vector3d lv = lam.lambda();
    LMState d;
    d.l = lv.cwiseProduct(s.m).cross(s.l);
    d.m = lv.cwiseProduct(s.l).cross(s.m);
    return d;
}

} // namespace soneuler
