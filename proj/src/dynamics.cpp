#include "soneuler/dynamics.hpp"

#include "soneuler/so4.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace soneuler {

InertiaSpec::InertiaSpec(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != n)
        throw std::invalid_argument("InertiaSpec: expected n diagonal values");
}

Eigen::MatrixXd InertiaSpec::dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
    for (int i = 0; i < n_; ++i) m(i, i) = values_[i];
    return m;
}

double InertiaSpec::norm() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return std::sqrt(s);
}

bool InertiaSpec::is_generic(std::string* why) const {
    const double tol = Tolerances::global().genericity;
    double max_sq = 0.0;
    for (double v : values_) max_sq = std::max(max_sq, v * v);
    const double sep = tol * std::max(1.0, max_sq);
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (std::abs(values_[i] * values_[i] - values_[j] * values_[j]) <= sep) {
                if (why) {
                    std::ostringstream os;
                    os << "J_" << i + 1 << "^2 = J_" << j + 1 << "^2 = " << values_[i] * values_[i]
                       << " violates J_i^2 != J_j^2 for i != j";
                    *why = os.str();
                }
                return false;
            }
    return true;
}

void InertiaSpec::validate_generic() const {
    std::string why;
    if (!is_generic(&why)) throw nongeneric_error("non-generic inertia: " + why);
}

InertiaSpec InertiaSpec::conjugated_by(const PermutationMatrix& p) const {
    return InertiaSpec(n_, p.pull_back_diagonal(values_));
}

double hamiltonian(const InertiaSpec& j, const AntisymMatrix& mu) {
    if (j.dim() != mu.dim()) throw std::invalid_argument("hamiltonian: dimension mismatch");
    // -1/2 tr(J mu^2) = 1/2 sum_i J_i sum_k mu_ik^2
    double h = 0.0;
    const int n = mu.dim();
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int k = 0; k < n; ++k) {
            const double v = mu(i, k);
            row += v * v;
        }
        h += j[i] * row;
    }
    return 0.5 * h;
}

AntisymMatrix vector_field(const InertiaSpec& j, const AntisymMatrix& mu) {
    if (j.dim() != mu.dim()) throw std::invalid_argument("vector_field: dimension mismatch");
    const Eigen::MatrixXd m = mu.dense();
    const Eigen::MatrixXd m2 = m * m; // symmetric
    Eigen::MatrixXd out = m2;
    for (int i = 0; i < mu.dim(); ++i) out.row(i) *= j[i];   // J mu^2
    for (int i = 0; i < mu.dim(); ++i) out.col(i) -= j[i] * m2.col(i); // - mu^2 J
    return AntisymMatrix::project(out);
}

AntisymMatrix angular_velocity(const InertiaSpec& j, const AntisymMatrix& mu) {
    if (j.dim() != mu.dim()) throw std::invalid_argument("angular_velocity: dimension mismatch");
    AntisymMatrix omega(mu.dim());
    for (int i = 0; i < mu.dim(); ++i)
        for (int k = i + 1; k < mu.dim(); ++k) omega.set(i, k, -(j[i] + j[k]) * mu(i, k));
    return omega;
}

std::vector<ManakovCoefficient> manakov_integrals(const InertiaSpec& j, const AntisymMatrix& mu,
                                                  int k_max) {
    if (k_max < 2) throw std::invalid_argument("manakov_integrals: k_max must be >= 2");
    const Eigen::MatrixXd jd = j.dense();
    const Eigen::MatrixXd m = mu.dense();
    std::vector<ManakovCoefficient> out;
    for (int k = 2; k <= k_max; ++k) {
        // sample p(lambda) = tr((lambda J + mu)^k) at k+1 Chebyshev nodes
        const int npts = k + 1;
        Eigen::VectorXd nodes(npts), tr(npts);
        for (int i = 0; i < npts; ++i) {
            nodes[i] = std::cos((2.0 * i + 1.0) * M_PI / (2.0 * npts));
            Eigen::MatrixXd l = nodes[i] * jd + m;
            Eigen::MatrixXd pw = l;
            for (int q = 1; q < k; ++q) pw = pw * l;
            tr[i] = pw.trace();
        }
        Eigen::MatrixXd vand(npts, npts);
        for (int i = 0; i < npts; ++i) {
            double p = 1.0;
            for (int c = 0; c < npts; ++c) {
                vand(i, c) = p;
                p *= nodes[i];
            }
        }
        const Eigen::VectorXd coeff = vand.fullPivLu().solve(tr);
        for (int deg = 0; deg < k; ++deg) out.push_back({k, deg, coeff[deg]});
    }
    return out;
}

namespace {

double trace_power(const AntisymMatrix& mu, int k) {
    const Eigen::MatrixXd m = mu.dense();
    Eigen::MatrixXd pw = m;
    for (int q = 1; q < k; ++q) pw = pw * m;
    return pw.trace();
}

Eigen::VectorXd invariant_row(const InertiaSpec& j, const AntisymMatrix& mu) {
    const auto mk = manakov_integrals(j, mu, 4);
    Eigen::VectorXd row(3 + mk.size());
    row[0] = hamiltonian(j, mu);
    row[1] = trace_power(mu, 2);
    row[2] = trace_power(mu, 4);
    for (size_t q = 0; q < mk.size(); ++q) row[3 + q] = mk[q].value;
    return row;
}

std::vector<std::string> invariant_names(int k_max) {
    std::vector<std::string> names = {"H", "tr_mu2", "tr_mu4"};
    for (int k = 2; k <= k_max; ++k)
        for (int deg = 0; deg < k; ++deg)
            names.push_back("trL" + std::to_string(k) + "_lam" + std::to_string(deg));
    return names;
}

} // namespace

Eigen::VectorXd Trajectory::invariant_drift() const {
    if (invariants.empty()) return Eigen::VectorXd();
    Eigen::VectorXd drift = Eigen::VectorXd::Zero(invariants.front().size());
    for (const auto& row : invariants)
        drift = drift.cwiseMax((row - invariants.front()).cwiseAbs());
    return drift;
}

Eigen::VectorXd Trajectory::invariant_drift_relative() const {
    Eigen::VectorXd drift = invariant_drift();
    for (int c = 0; c < drift.size(); ++c)
        drift[c] /= std::max(1.0, std::abs(invariants.front()[c]));
    return drift;
}

void Trajectory::write_csv(std::ostream& os) const {
    if (states.empty()) return;
    const int n = states.front().dim();
    os.precision(17);
    os << "t";
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) os << ",m_" << i + 1 << "_" << j + 1;
    if (n == 4) os << ",l1,l2,l3,m1,m2,m3";
    for (const auto& name : invariant_names) os << "," << name;
    os << "\n";
    for (size_t r = 0; r < states.size(); ++r) {
        os << times[r];
        const auto& u = states[r].upper();
        for (int c = 0; c < u.size(); ++c) os << "," << u[c];
        if (n == 4) {
            const LMState s = mu_to_lm(states[r]);
            for (int c = 0; c < 3; ++c) os << "," << s.l[c];
            for (int c = 0; c < 3; ++c) os << "," << s.m[c];
        }
        for (int c = 0; c < invariants[r].size(); ++c) os << "," << invariants[r][c];
        os << "\n";
    }
}

Trajectory integrate(const InertiaSpec& j, const AntisymMatrix& mu0, double t_end, double dt) {
    if (dt <= 0.0 || t_end <= 0.0)
        throw std::invalid_argument("integrate: dt and t_end must be positive");
    if (j.dim() != mu0.dim()) throw std::invalid_argument("integrate: dimension mismatch");

    Trajectory traj;
    traj.invariant_names = invariant_names(4);

    AntisymMatrix mu = mu0;
    double t = 0.0;
    traj.times.push_back(t);
    traj.states.push_back(mu);
    traj.invariants.push_back(invariant_row(j, mu));

    const auto f = [&](const AntisymMatrix& state) { return vector_field(j, state); };

    while (t < t_end - 0.5 * dt) {
        const double h = std::min(dt, t_end - t);
        const AntisymMatrix k1 = f(mu);
        const AntisymMatrix k2 = f(mu + 0.5 * h * k1);
        const AntisymMatrix k3 = f(mu + 0.5 * h * k2);
        const AntisymMatrix k4 = f(mu + h * k3);
        mu += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
        if (!mu.all_finite())
            throw integrator_failure("integrate: non-finite state at t = " + std::to_string(t));
        traj.times.push_back(t);
        traj.states.push_back(mu);
        traj.invariants.push_back(invariant_row(j, mu));
    }
    return traj;
}

} // namespace soneuler
