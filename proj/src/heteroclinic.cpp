#include "soneuler/heteroclinic.hpp"

#include "soneuler/equilibria.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace soneuler {

AntisymMatrix HeteroclinicOrbit::at(double s) const {
    return soneuler::conjugate(group_exp(generator, s), x0);
}

AntisymMatrix HeteroclinicOrbit::derivative(double s) const {
    return commutator(generator, at(s));
}

double HeteroclinicOrbit::chi(double s) const { return z / delta * std::sin(s * delta); }

double HeteroclinicOrbit::time_of(double s) const {
    return std::log(std::tan(0.5 * s * delta)) / z;
}

HeteroclinicOrbit HeteroclinicOrbit::transformed(const PermutationMatrix& p) const {
    HeteroclinicOrbit out = *this;
    out.generator = p.conjugate(generator);
    out.x0 = p.conjugate(x0);
    out.x1 = p.conjugate(x1);
    return out;
}

std::pair<bool, double> necessary_condition(const InertiaSpec& j, const AntisymMatrix& x_eq,
                                            const AntisymMatrix& y) {
    const AntisymMatrix v = commutator(y, x_eq);
    const double vn = v.norm();
    if (vn < 1e-12 * std::max(1.0, y.norm() * x_eq.norm()))
        throw std::invalid_argument(
            "necessary_condition: [Y, x] = 0 (Y lies in the isotropy algebra)");
    const AntisymMatrix w = linearized_field(j, x_eq, v);
    const double z = pairing(v, w) / pairing(v, v);
    const double residual = (w - z * v).norm();
    return {residual < 1e-8 * vn, z};
}

namespace {

// Deterministic unit eigenvector of (m - z I) v = 0 via SVD; the entry of
// largest magnitude is made positive.
Eigen::Vector4d real_eigenvector(const Eigen::Matrix4d& m, double z) {
    const Eigen::Matrix4d shifted = m - z * Eigen::Matrix4d::Identity();
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(shifted, Eigen::ComputeFullV);
    Eigen::Vector4d v = svd.matrixV().col(3);
    int pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    if (v[pivot] < 0.0) v = -v;
    return v;
}

// Positive real eigenvalue magnitudes of the split 4x4 problem, descending.
std::vector<double> so4_real_magnitudes(const LambdaSpec& lam, double a) {
    std::vector<double> out;
    const auto cc = so4_characteristic(lam, a);
    if (cc.discriminant < 0.0) return out;
    const double sq = std::sqrt(cc.discriminant);
    for (const double r : {0.5 * (-cc.c2 + sq), 0.5 * (-cc.c2 - sq)})
        if (r > 1e-12 * std::max(1.0, cc.c2 * cc.c2)) out.push_back(std::sqrt(r));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

struct So4Eigen {
    double z;             // signed local eigenvalue
    Eigen::Vector3d xi;   // (v0, v2, 0)
    Eigen::Vector3d eta;  // (v1, v3, 0)
    double delta;
    double norm_residual;
};

So4Eigen so4_connection_data(const LambdaSpec& lam, double a, double z_signed) {
    const Eigen::Matrix4d l = so4_linearization_matrix(lam, a);
    const Eigen::Vector4d v = real_eigenvector(l, z_signed);
    So4Eigen e;
    e.z = z_signed;
    e.xi = {v[0], v[2], 0.0};
    e.eta = {v[1], v[3], 0.0};
    e.norm_residual = std::abs(e.xi.squaredNorm() - e.eta.squaredNorm());
    if (e.norm_residual > 1e-10)
        throw std::runtime_error("heteroclinic: eigenvector norm identity violated");
    e.delta = e.xi.norm();
    return e;
}

} // namespace

HeteroclinicOrbit build_so4(const LambdaSpec& lam, double a, int eigen_index) {
    const auto mags = so4_real_magnitudes(lam, a);
    if (eigen_index < 0 || eigen_index >= static_cast<int>(mags.size()))
        throw no_real_eigenvalue_error(
            "build_so4: the linearization has no real eigenvalue at the requested index");
    const auto data = so4_connection_data(lam, a, mags[eigen_index]);

    HeteroclinicOrbit orbit{AntisymMatrix(4), AntisymMatrix(4), AntisymMatrix(4)};
    orbit.generator = lm_generator(data.xi, data.eta);
    orbit.x0 = lm_to_mu({a * Eigen::Vector3d::UnitZ(), Eigen::Vector3d::UnitZ()});
    orbit.x1 = -orbit.x0;
    orbit.z = data.z;
    orbit.delta = data.delta;
    orbit.norm_identity_residual = data.norm_residual;
    return orbit;
}

HeteroclinicOrbit build_general(const InertiaSpec& j, const CartanElement& x,
                                const BlockProblem& block, int eigen_index) {
    if (j.dim() != x.dim()) throw std::invalid_argument("build_general: dimension mismatch");
    const int n = x.dim();
    HeteroclinicOrbit orbit{AntisymMatrix(n), AntisymMatrix(n), AntisymMatrix(n)};
    orbit.x0 = x.matrix();
    AntisymMatrix x_block(n);

    if (block.kind == BlockProblem::Kind::so4) {
        const auto mags = so4_real_magnitudes(*block.lambda_loc, block.a_loc);
        if (eigen_index < 0 || eigen_index >= static_cast<int>(mags.size()))
            throw no_real_eigenvalue_error(
                "build_general: block has no real eigenvalue at the requested index");
        // sign of the local eigenvalue chosen so the full eigenvalue
        // z = b_loc * z_loc is positive (flow runs x0 -> x1)
        const double z_loc = (block.b_loc > 0.0 ? 1.0 : -1.0) * mags[eigen_index];
        const auto data = so4_connection_data(*block.lambda_loc, block.a_loc, z_loc);
        const AntisymMatrix y4 = lm_generator(data.xi, data.eta);
        const std::array<int, 4> idx = {2 * block.slot_i, 2 * block.slot_i + 1, 2 * block.slot_j,
                                        2 * block.slot_j + 1};
        for (int r = 0; r < 4; ++r)
            for (int c = r + 1; c < 4; ++c) orbit.generator.set(idx[r], idx[c], y4(r, c));
        x_block.set(2 * block.slot_i, 2 * block.slot_i + 1, block.x_i);
        x_block.set(2 * block.slot_j, 2 * block.slot_j + 1, block.x_j);
        orbit.z = block.b_loc * z_loc;
        orbit.delta = data.delta;
        orbit.norm_identity_residual = data.norm_residual;
    } else {
        const int p = 2 * block.slot_i, q = 2 * block.slot_i + 1, r = n - 1;
        const double w = block.x_i;
        const double prod = (j[p] - j[r]) * (j[q] - j[r]);
        if (prod >= 0.0)
            throw no_real_eigenvalue_error("build_general: so(3) block has imaginary spectrum");
        if (eigen_index != 0)
            throw no_real_eigenvalue_error("build_general: so(3) block has a single real pair");
        const double z = std::abs(w) * std::sqrt(-prod);
        // eigenvector (alpha, beta) of the 2x2 block for +z
        const double beta = 1.0;
        const double alpha = w * (j[p] - j[r]) * beta / z;
        orbit.generator.set(p, r, beta / w);
        orbit.generator.set(q, r, -alpha / w);
        x_block.set(p, q, w);
        orbit.z = z;
        orbit.delta = std::sqrt(alpha * alpha + beta * beta) / std::abs(w);
        orbit.norm_identity_residual = 0.0;
    }
    orbit.x1 = orbit.x0 - 2.0 * x_block;
    return orbit;
}

namespace {

AntisymMatrix rk4_between(const InertiaSpec& j, AntisymMatrix mu, double span, double dt) {
    double t = 0.0;
    while (t < span - 1e-15) {
        const double h = std::min(dt, span - t);
        const AntisymMatrix k1 = vector_field(j, mu);
        const AntisymMatrix k2 = vector_field(j, mu + 0.5 * h * k1);
        const AntisymMatrix k3 = vector_field(j, mu + 0.5 * h * k2);
        const AntisymMatrix k4 = vector_field(j, mu + h * k3);
        mu += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
        if (!mu.all_finite()) throw integrator_failure("verify_orbit: non-finite state");
    }
    return mu;
}

} // namespace

OrbitVerification verify_orbit(const InertiaSpec& j, const HeteroclinicOrbit& orbit, int samples) {
    OrbitVerification rep;
    const double send = orbit.s_end();
    const double eps = 1e-3 / orbit.delta;

    rep.endpoint_residual_x0 = vector_field(j, orbit.x0).norm();
    rep.endpoint_residual_x1 = vector_field(j, orbit.x1).norm();

    for (int k = 0; k < samples; ++k) {
        const double s = eps + (send - 2.0 * eps) * k / std::max(1, samples - 1);
        const AntisymMatrix g = orbit.at(s);
        const AntisymMatrix field = vector_field(j, g);
        const AntisymMatrix resid = orbit.chi(s) * orbit.derivative(s) - field;
        rep.max_defining_residual = std::max(rep.max_defining_residual, resid.norm());
        rep.vector_field_scale = std::max(rep.vector_field_scale, field.norm());
    }

    // dynamical realization
    const double dt = 1e-4;
    const double t_shift = orbit.time_of(eps);
    AntisymMatrix mu = orbit.at(eps);
    double t = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double s = eps + (send - 2.0 * eps) * k / std::max(1, samples - 1);
        if (s < 0.1 || s > send - 0.1) continue;
        const double target = orbit.time_of(s) - t_shift;
        if (target <= t) continue;
        mu = rk4_between(j, mu, target - t, dt);
        t = target;
        rep.max_reparametrization_error =
            std::max(rep.max_reparametrization_error, (mu - orbit.at(s)).norm());
        ++rep.reparametrization_points;
    }
    const double scale0 = std::max(1.0, orbit.x0.norm());
    const double t_max =
        (std::log(scale0 * 1e4) + 5.0) / orbit.z + std::max(0.0, -t_shift) + 5.0;
    rep.reach_distance = (mu - orbit.x1).norm();
    while (rep.reach_distance > 1e-4 && t < t_max) {
        const double step = std::min(0.05, t_max - t);
        mu = rk4_between(j, mu, step, dt);
        t += step;
        rep.reach_distance = (mu - orbit.x1).norm();
    }
    rep.reached_target = rep.reach_distance <= 1e-4;
    rep.reach_time = t;

    rep.pass = rep.max_defining_residual < 1e-9 * std::max(1.0, rep.vector_field_scale) &&
               rep.endpoint_residual_x0 < 1e-10 * std::max(1.0, j.norm() * scale0 * scale0) &&
               rep.endpoint_residual_x1 < 1e-10 * std::max(1.0, j.norm() * scale0 * scale0) &&
               rep.reached_target && rep.max_reparametrization_error < 1e-3;
    return rep;
}

} // namespace soneuler
