#include "soneuler/stability.hpp"

#include "soneuler/equilibria.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace soneuler {

namespace {

bool spectrum_order(const std::complex<double>& a, const std::complex<double>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

} // namespace

Eigen::VectorXd TangentBasis::coordinates(const AntisymMatrix& v) const {
    Eigen::VectorXd c(dim());
    for (int k = 0; k < dim(); ++k) c[k] = pairing(v, vectors[k]);
    return c;
}

AntisymMatrix TangentBasis::vector_from(const Eigen::VectorXd& c) const {
    AntisymMatrix v(base_point.dim());
    for (int k = 0; k < dim(); ++k) v += c[k] * vectors[k];
    return v;
}

AntisymMatrix TangentBasis::chart_point(const Eigen::VectorXd& u) const {
    AntisymMatrix y(base_point.dim());
    for (int k = 0; k < dim(); ++k) y += u[k] * generators[k];
    return conjugate(group_exp(y, 1.0), base_point);
}

TangentBasis tangent_basis(const AntisymMatrix& x_eq) {
    const int n = x_eq.dim();
    TangentBasis tb{x_eq, {}, {}};
    const double scale = std::max(1.0, x_eq.norm());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            AntisymMatrix gen(n);
            gen.set(a, b, 1.0);
            AntisymMatrix v = commutator(gen, x_eq);
            for (int k = 0; k < tb.dim(); ++k) {
                const double c = pairing(v, tb.vectors[k]);
                v -= c * tb.vectors[k];
                gen -= c * tb.generators[k];
            }
            const double nv = std::sqrt(pairing(v, v));
            if (nv > 1e-9 * scale) {
                tb.vectors.push_back((1.0 / nv) * v);
                tb.generators.push_back((1.0 / nv) * gen);
            }
        }
    const int expected = n * (n - 1) / 2 - n / 2;
    if (tb.dim() != expected) {
        std::ostringstream os;
        os << "tangent_basis: span dimension " << tb.dim() << " != " << expected
           << " (point too close to a degenerate orbit)";
        throw std::runtime_error(os.str());
    }
    return tb;
}

AntisymMatrix linearized_field(const InertiaSpec& j, const AntisymMatrix& x_eq,
                               const AntisymMatrix& v) {
    const Eigen::MatrixXd xm = x_eq.dense(), vm = v.dense();
    const Eigen::MatrixXd s = vm * xm + xm * vm; // symmetric
    Eigen::MatrixXd out(s.rows(), s.cols());
    for (int r = 0; r < s.rows(); ++r)
        for (int c = 0; c < s.cols(); ++c) out(r, c) = (j[r] - j[c]) * s(r, c);
    return AntisymMatrix::project(out);
}

Linearization linearize(const InertiaSpec& j, const AntisymMatrix& x_eq) {
    if (j.dim() != x_eq.dim()) throw std::invalid_argument("linearize: dimension mismatch");
    const auto [ok, res] = is_equilibrium(j, x_eq);
    if (!ok) {
        std::ostringstream os;
        os << "linearize: point is not an equilibrium (residual " << res << ")";
        throw std::invalid_argument(os.str());
    }
    Linearization lin{tangent_basis(x_eq), {}, {}};
    const int d = lin.basis.dim();
    lin.matrix.resize(d, d);
    for (int k = 0; k < d; ++k) {
        const AntisymMatrix w = linearized_field(j, x_eq, lin.basis.vectors[k]);
        lin.matrix.col(k) = lin.basis.coordinates(w);
        // the image must stay tangent to the orbit
        const AntisymMatrix back = lin.basis.vector_from(lin.matrix.col(k));
        const double off = (w - back).norm();
        if (off > 1e-8 * std::max(1.0, w.norm()))
            throw std::runtime_error("linearize: image left the tangent space");
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(lin.matrix);
    for (int k = 0; k < d; ++k) lin.spectrum.push_back(es.eigenvalues()[k]);
    std::sort(lin.spectrum.begin(), lin.spectrum.end(), spectrum_order);
    return lin;
}

CharacteristicCoefficients so4_characteristic(const LambdaSpec& lam, double a) {
    lam.validate_generic();
    if (a == 0.0)
        throw nongeneric_error("so4_characteristic: a = 0 violates a != 0 (degenerate equilibrium)");
    const double l1 = lam[0], l2 = lam[1], l3 = lam[2];
    CharacteristicCoefficients cc{};
    cc.c2 = (a * a + 1.0) * l3 * l3 + 2.0 * a * l1 * l2;
    cc.c0 = a * a * (l3 * l3 - l1 * l1) * (l3 * l3 - l2 * l2);
    cc.discriminant = cc.c2 * cc.c2 - 4.0 * cc.c0;
    // cross-check against the expanded form of the discriminant
    const double expanded =
        l3 * l3 *
        ((a * a - 1.0) * (a * a - 1.0) * l3 * l3 + 4.0 * a * a * (l1 * l1 + l2 * l2) +
         4.0 * a * (a * a + 1.0) * l1 * l2);
    const double scale = std::max({1.0, std::abs(cc.discriminant), cc.c2 * cc.c2});
    if (std::abs(cc.discriminant - expanded) > 1e-9 * scale)
        throw std::runtime_error("so4_characteristic: discriminant forms disagree");
    return cc;
}

Eigen::Matrix4d so4_linearization_matrix(const LambdaSpec& lam, double a) {
    const double l1 = lam[0], l2 = lam[1], l3 = lam[2];
    Eigen::Matrix4d m;
    m << 0, 0, -l3, l1,
         0, 0, a * l1, -a * l3,
         l3, -l2, 0, 0,
         -a * l2, a * l3, 0, 0;
    return m;
}

std::array<std::complex<double>, 4> so4_spectrum(const LambdaSpec& lam, double a) {
    const auto cc = so4_characteristic(lam, a);
    const std::complex<double> sq = std::sqrt(std::complex<double>(cc.discriminant, 0.0));
    const std::complex<double> r1 = 0.5 * (-cc.c2 + sq);
    const std::complex<double> r2 = 0.5 * (-cc.c2 - sq);
    std::array<std::complex<double>, 4> out{std::sqrt(r1), -std::sqrt(r1), std::sqrt(r2),
                                            -std::sqrt(r2)};
    std::sort(out.begin(), out.end(), spectrum_order);
    return out;
}

void so4_hessian_blocks(const LambdaSpec& lam, double a, Eigen::Matrix2d& h1, Eigen::Matrix2d& h2,
                        Eigen::Matrix2d& f1, Eigen::Matrix2d& f2) {
    const double l1 = lam[0], l2 = lam[1], l3 = lam[2];
    h1 = Eigen::Vector2d(l3 - l2, l3 + l2).asDiagonal();
    h2 = Eigen::Vector2d(l3 - l1, l3 + l1).asDiagonal();
    Eigen::Matrix2d r;
    r << a + 1.0, a - 1.0, a - 1.0, a + 1.0;
    f1 = (l3 * l3 - l2 * l2) * r * Eigen::Vector2d(l3 + l1, l3 - l1).asDiagonal() * r;
    f2 = (l3 * l3 - l1 * l1) * r * Eigen::Vector2d(l3 + l2, l3 - l2).asDiagonal() * r;
}

namespace {

bool definite_2x2_pair(const Eigen::Matrix2d& q1, const Eigen::Matrix2d& q2) {
    return q1.determinant() > 0.0 && q2.determinant() > 0.0 && q1.trace() * q2.trace() > 0.0;
}

} // namespace

LyapunovCertificate lyapunov_certificate(const LambdaSpec& lam, double a) {
    const auto cc = so4_characteristic(lam, a);
    const double l1 = lam[0], l2 = lam[1], l3 = lam[2];
    const bool cond_i = (l3 * l3 - l1 * l1) * (l3 * l3 - l2 * l2) > 0.0;
    if (!(cond_i && cc.c2 > 0.0 && cc.discriminant > 0.0))
        throw std::logic_error("lyapunov_certificate: called outside the stable region");

    LyapunovCertificate cert;
    so4_hessian_blocks(lam, a, cert.h1, cert.h2, cert.f1, cert.f2);
    cert.lambda3_dominant = (l3 * l3 > l1 * l1) && (l3 * l3 > l2 * l2);

    if (cert.lambda3_dominant) {
        // The vertex value lies inside the interval where det Q_i < 0 here;
        // any z of the right sign beyond both the interval and the trace
        // thresholds works, with explicit margin 1.
        const double shove = cc.c2 / 2.0 + std::sqrt(std::max(cc.discriminant, 0.0)) / 2.0 +
                             (a * a + 1.0) * (l3 * l3 - std::min(l1 * l1, l2 * l2)) / 2.0 + 1.0;
        cert.z = (l3 > 0.0 ? 1.0 : -1.0) * shove;
        cert.z_at_vertex = false;
    } else {
        cert.z = -cc.c2 / 2.0;
        cert.z_at_vertex = true;
    }
    cert.q1 = 4.0 * cert.z * cert.h1 + cert.f1;
    cert.q2 = 4.0 * cert.z * cert.h2 + cert.f2;
    cert.q_definite = definite_2x2_pair(cert.q1, cert.q2);
    if (!cert.q_definite)
        throw std::runtime_error("lyapunov_certificate: definiteness conditions failed");

    const Eigen::Vector4d hdiag(cert.h1(0, 0), cert.h1(1, 1), cert.h2(0, 0), cert.h2(1, 1));
    cert.energy_hessian_definite =
        (hdiag.array() > 0.0).all() || (hdiag.array() < 0.0).all();
    return cert;
}

StabilityReport classify_so4(const LambdaSpec& lam, double a) {
    StabilityReport rep;
    {
        std::string why;
        if (!lam.is_generic(&why)) {
            rep.verdict = StabilityVerdict::nongeneric_rejected;
            rep.note = "non-generic Lambda: " + why;
            return rep;
        }
        if (a == 0.0) {
            rep.verdict = StabilityVerdict::nongeneric_rejected;
            rep.note = "a = 0 violates a != 0 (degenerate equilibrium)";
            return rep;
        }
    }
    const auto cc = so4_characteristic(lam, a);
    rep.characteristic = cc;
    const double l1 = lam[0], l2 = lam[1], l3 = lam[2];
    rep.conditions.cond_i = (l3 * l3 - l1 * l1) * (l3 * l3 - l2 * l2) > 0.0;
    rep.conditions.cond_ii = cc.c2 > 0.0;
    const double dzero = Tolerances::global().discriminant_zero_rel * std::max(cc.c2 * cc.c2, 1.0);
    rep.conditions.cond_iiib = std::abs(cc.discriminant) < dzero;
    rep.conditions.cond_iiia = cc.discriminant > 0.0 && !rep.conditions.cond_iiib;

    const auto spec4 = so4_spectrum(lam, a);
    rep.spectrum.assign(spec4.begin(), spec4.end());

    if (rep.conditions.cond_i && rep.conditions.cond_ii && rep.conditions.cond_iiia) {
        rep.verdict = StabilityVerdict::stable;
        rep.certificate = lyapunov_certificate(lam, a);
        return rep;
    }
    rep.verdict = StabilityVerdict::unstable;
    if (rep.conditions.cond_i && rep.conditions.cond_ii && rep.conditions.cond_iiib) {
        rep.note =
            "boundary case: the discriminant vanishes, so the spectrum is imaginary but "
            "arbitrarily close equilibria (a +- eps) have quartets with nonzero real part";
        return rep;
    }
    // witness: eigenvalue with the largest real part
    auto it = std::max_element(rep.spectrum.begin(), rep.spectrum.end(),
                               [](const auto& p, const auto& q) { return p.real() < q.real(); });
    rep.witness = *it;
    return rep;
}

bool BlockProblem::has_real_eigenvalue(double tol_rel) const {
    return !real_eigenvalue_magnitudes(tol_rel).empty();
}

std::vector<double> BlockProblem::real_eigenvalue_magnitudes(double tol_rel) const {
    if (tol_rel < 0.0) tol_rel = Tolerances::global().imaginary_eig_rel;
    double scale = 0.0;
    for (const auto& z : eigenvalues) scale = std::max(scale, std::abs(z));
    const double tol = tol_rel * (1.0 + scale);
    std::vector<double> mags;
    for (const auto& z : eigenvalues)
        if (std::abs(z.imag()) < tol && std::abs(z.real()) > tol) mags.push_back(std::abs(z.real()));
    std::sort(mags.begin(), mags.end(), std::greater<>());
    mags.erase(std::unique(mags.begin(), mags.end(),
                           [&](double p, double q) { return std::abs(p - q) < tol; }),
               mags.end());
    return mags;
}

std::vector<BlockProblem> block_decompose(const InertiaSpec& j, const CartanElement& x) {
    if (j.dim() != x.dim()) throw std::invalid_argument("block_decompose: dimension mismatch");
    x.validate_generic();
    j.validate_generic();
    const int n = x.dim();
    const int m = x.block_count();
    const auto& xv = x.values();

    std::vector<BlockProblem> blocks;
    for (int i = 0; i < m; ++i)
        for (int k = i + 1; k < m; ++k) {
            BlockProblem b;
            b.kind = BlockProblem::Kind::so4;
            b.slot_i = i;
            b.slot_j = k;
            b.x_i = xv[i];
            b.x_j = xv[k];
            b.inertia_i = {j[2 * i], j[2 * i + 1]};
            b.inertia_j = {j[2 * k], j[2 * k + 1]};
            InertiaSpec sub(4, {j[2 * i], j[2 * i + 1], j[2 * k], j[2 * k + 1]});
            try {
                b.lambda_loc = lambda_from_inertia(sub);
            } catch (const nongeneric_error& e) {
                std::ostringstream os;
                os << "block_decompose: slot pair (" << i + 1 << "," << k + 1 << "): " << e.what();
                throw nongeneric_error(os.str());
            }
            b.b_loc = 0.5 * (xv[i] + xv[k]);
            b.a_loc = (xv[k] - xv[i]) / (xv[i] + xv[k]);
            const auto local = so4_spectrum(*b.lambda_loc, b.a_loc);
            for (const auto& z : local) b.eigenvalues.push_back(b.b_loc * z);
            std::sort(b.eigenvalues.begin(), b.eigenvalues.end(), spectrum_order);
            blocks.push_back(std::move(b));
        }
    if (n % 2 == 1) {
        const int tail = n - 1;
        for (int i = 0; i < m; ++i) {
            BlockProblem b;
            b.kind = BlockProblem::Kind::so3;
            b.slot_i = i;
            b.x_i = xv[i];
            b.inertia_i = {j[2 * i], j[2 * i + 1]};
            b.inertia_j = {j[tail], 0.0};
            // classical 2x2 problem: zeta^2 = -x_i^2 (J_p - J_r)(J_q - J_r)
            const double prod = (j[2 * i] - j[tail]) * (j[2 * i + 1] - j[tail]);
            const std::complex<double> z =
                std::sqrt(std::complex<double>(-xv[i] * xv[i] * prod, 0.0));
            b.eigenvalues = {z, -z};
            std::sort(b.eigenvalues.begin(), b.eigenvalues.end(), spectrum_order);
            blocks.push_back(std::move(b));
        }
    }
    size_t total = 0;
    for (const auto& b : blocks) total += b.eigenvalues.size();
    if (total != static_cast<size_t>(n * (n - 1) / 2 - n / 2))
        throw std::runtime_error("block_decompose: eigenvalue count mismatch");
    return blocks;
}

namespace {

// Definiteness margin of a symmetric matrix: min eigenvalue if positive
// definite, -max eigenvalue if negative definite, negative otherwise.
double definiteness_margin(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    return std::max(lo, -hi);
}

// Nelder-Mead maximization of f over R^k.
Eigen::VectorXd nelder_mead_max(const std::function<double(const Eigen::VectorXd&)>& f,
                                const Eigen::VectorXd& start, double step, int iters) {
    const int k = static_cast<int>(start.size());
    std::vector<std::pair<double, Eigen::VectorXd>> simplex;
    simplex.reserve(k + 1);
    simplex.emplace_back(f(start), start);
    for (int i = 0; i < k; ++i) {
        Eigen::VectorXd p = start;
        p[i] += step;
        simplex.emplace_back(f(p), p);
    }
    const auto by_value = [](const auto& a, const auto& b) { return a.first > b.first; };
    for (int it = 0; it < iters; ++it) {
        std::sort(simplex.begin(), simplex.end(), by_value);
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(k);
        for (int i = 0; i < k; ++i) centroid += simplex[i].second;
        centroid /= k;
        const auto& worst = simplex.back();
        const Eigen::VectorXd refl = centroid + (centroid - worst.second);
        const double frefl = f(refl);
        if (frefl > simplex.front().first) {
            const Eigen::VectorXd expd = centroid + 2.0 * (centroid - worst.second);
            const double fexpd = f(expd);
            simplex.back() = fexpd > frefl ? std::make_pair(fexpd, expd)
                                           : std::make_pair(frefl, refl);
        } else if (frefl > simplex[k - 1].first) {
            simplex.back() = {frefl, refl};
        } else {
            const Eigen::VectorXd contr = centroid + 0.5 * (worst.second - centroid);
            const double fcontr = f(contr);
            if (fcontr > worst.first) {
                simplex.back() = {fcontr, contr};
            } else {
                for (int i = 1; i <= k; ++i) {
                    simplex[i].second = simplex[0].second + 0.5 * (simplex[i].second - simplex[0].second);
                    simplex[i].first = f(simplex[i].second);
                }
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(), by_value);
    return simplex.front().second;
}

} // namespace

std::optional<DefinitenessCertificate> definiteness_search(
    const InertiaSpec& j, const AntisymMatrix& x_eq,
    const std::vector<std::function<double(const AntisymMatrix&)>>& integrals) {
    if (integrals.empty()) return std::nullopt;
    if (!is_equilibrium(j, x_eq).first)
        throw std::invalid_argument("definiteness_search: point is not an equilibrium");
    const TangentBasis tb = tangent_basis(x_eq);
    const int d = tb.dim();
    const int k = static_cast<int>(integrals.size());

    // Restricted gradient and Hessian of each integral by central differences
    // in the orbit chart.
    const double h = 1e-3 * std::max(1.0, x_eq.norm());
    const double hg = 1e-5 * std::max(1.0, x_eq.norm());
    std::vector<Eigen::MatrixXd> hessians(k);
    double grad_norm = 0.0;
    double value_scale = 1.0;
    for (int q = 0; q < k; ++q) {
        const auto& f = integrals[q];
        value_scale = std::max(value_scale, std::abs(f(x_eq)));
        Eigen::VectorXd g(d);
        for (int i = 0; i < d; ++i) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
            e[i] = hg;
            g[i] = (f(tb.chart_point(e)) - f(tb.chart_point(-e))) / (2.0 * hg);
        }
        grad_norm = std::max(grad_norm, g.norm());
        Eigen::MatrixXd hess(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = r; c < d; ++c) {
                Eigen::VectorXd er = Eigen::VectorXd::Zero(d), ec = Eigen::VectorXd::Zero(d);
                er[r] = h;
                ec[c] = h;
                const double v = (f(tb.chart_point(er + ec)) - f(tb.chart_point(er - ec)) -
                                  f(tb.chart_point(ec - er)) + f(tb.chart_point(-er - ec))) /
                                 (4.0 * h * h);
                hess(r, c) = v;
                hess(c, r) = v;
            }
        hessians[q] = hess;
    }

    double hess_scale = 1.0;
    for (const auto& m : hessians) hess_scale = std::max(hess_scale, m.cwiseAbs().maxCoeff());

    const auto margin_of = [&](const Eigen::VectorXd& coeff) {
        const double nrm = coeff.norm();
        if (nrm < 1e-12) return -hess_scale;
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
        for (int q = 0; q < k; ++q) m += (coeff[q] / nrm) * hessians[q];
        return definiteness_margin(m);
    };

    // 21-point grid per axis on [-10, 10]
    Eigen::VectorXd best = Eigen::VectorXd::Zero(k);
    double best_margin = -1e300;
    std::vector<int> idx(k, 0);
    const int npts = 21;
    while (true) {
        Eigen::VectorXd c(k);
        for (int q = 0; q < k; ++q) c[q] = -10.0 + 20.0 * idx[q] / (npts - 1);
        const double mg = margin_of(c);
        if (mg > best_margin) {
            best_margin = mg;
            best = c;
        }
        int q = 0;
        while (q < k && ++idx[q] == npts) idx[q++] = 0;
        if (q == k) break;
    }
    best = nelder_mead_max(margin_of, best, 0.5, 400);
    best_margin = margin_of(best);

    const bool grad_ok = grad_norm < 1e-6 * value_scale;
    if (best_margin <= 1e-6 * hess_scale || !grad_ok) return std::nullopt;
    DefinitenessCertificate cert;
    cert.coefficients = best / best.norm();
    cert.margin = best_margin;
    cert.gradient_norm = grad_norm;
    return cert;
}

double spectrum_multiset_distance(std::vector<std::complex<double>> a,
                                  std::vector<std::complex<double>> b) {
    if (a.size() != b.size()) return 1e300;
    double worst = 0.0;
    for (const auto& z : a) {
        size_t kmin = 0;
        double dmin = 1e300;
        for (size_t k = 0; k < b.size(); ++k) {
            const double dd = std::abs(z - b[k]);
            if (dd < dmin) {
                dmin = dd;
                kmin = k;
            }
        }
        worst = std::max(worst, dmin);
        b.erase(b.begin() + kmin);
    }
    return worst;
}

bool quartet_symmetric(const std::vector<std::complex<double>>& spectrum, double tol) {
    std::vector<std::complex<double>> neg, conj;
    for (const auto& z : spectrum) {
        neg.push_back(-z);
        conj.push_back(std::conj(z));
    }
    return spectrum_multiset_distance(spectrum, neg) < tol &&
           spectrum_multiset_distance(spectrum, conj) < tol;
}

} // namespace soneuler
