#include "soneuler/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace soneuler {

namespace {

double equilibrium_residual(const InertiaSpec& j, const AntisymMatrix& mu) {
    // ||[J, mu^2]||_F; [J, S]_ik = (J_i - J_k) S_ik for symmetric S = mu^2.
    const Eigen::MatrixXd m = mu.dense();
    const Eigen::MatrixXd m2 = m * m;
    double s = 0.0;
    for (int i = 0; i < mu.dim(); ++i)
        for (int k = 0; k < mu.dim(); ++k) {
            const double v = (j[i] - j[k]) * m2(i, k);
            s += v * v;
        }
    return std::sqrt(s);
}

} // namespace

std::pair<bool, double> is_equilibrium(const InertiaSpec& j, const AntisymMatrix& mu) {
    if (j.dim() != mu.dim()) throw std::invalid_argument("is_equilibrium: dimension mismatch");
    const double res = equilibrium_residual(j, mu);
    const double scale = j.norm() * mu.norm() * mu.norm();
    return {res < Tolerances::global().equilibrium_rel * std::max(1e-300, scale), res};
}

std::vector<EquilibriumPoint> enumerate_equilibria(const CartanElement& x, const InertiaSpec& j) {
    if (x.dim() != j.dim()) throw std::invalid_argument("enumerate_equilibria: dimension mismatch");
    x.validate_generic();
    j.validate_generic();

    const int n = x.dim();
    const bool even_only = (n % 2 == 0);
    const AntisymMatrix base = x.matrix();
    const double scale = j.norm() * base.norm() * base.norm();
    const double residual_bound = 1e-10 * scale;

    std::vector<EquilibriumPoint> out;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        PermutationMatrix p(perm);
        if (even_only && p.sign() < 0) continue;
        AntisymMatrix point = p.conjugate(base);
        const double res = equilibrium_residual(j, point);
        if (res >= residual_bound) {
            std::ostringstream os;
            os << "enumerate_equilibria: residual " << res << " exceeds bound " << residual_bound;
            throw std::runtime_error(os.str());
        }
        out.push_back({std::move(p), std::move(point), res});
    } while (std::next_permutation(perm.begin(), perm.end()));

    // Distinct permutations must land on distinct points. Full pairwise check
    // for small counts; for large counts duplicates are exact (entries are
    // relocated +-x_k), so a lexicographic sort puts them adjacent.
    const double sep = Tolerances::global().distinct_rel * base.norm();
    const auto too_close = [&](size_t a, size_t b) {
        return (out[a].point - out[b].point).norm() <= sep;
    };
    if (out.size() <= 720) {
        for (size_t a = 0; a < out.size(); ++a)
            for (size_t b = a + 1; b < out.size(); ++b)
                if (too_close(a, b))
                    throw std::runtime_error(
                        "enumerate_equilibria: two permutations produced the same point");
    } else {
        std::vector<size_t> order(out.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            const auto& ua = out[a].point.upper();
            const auto& ub = out[b].point.upper();
            return std::lexicographical_compare(ua.data(), ua.data() + ua.size(), ub.data(),
                                                ub.data() + ub.size());
        });
        for (size_t q = 1; q < order.size(); ++q)
            if (too_close(order[q - 1], order[q]))
                throw std::runtime_error(
                    "enumerate_equilibria: two permutations produced the same point");
    }
    return out;
}

int count_square_patterns(const std::vector<EquilibriumPoint>& eq) {
    std::set<std::vector<long long>> patterns;
    for (const auto& e : eq) {
        const Eigen::MatrixXd m = e.point.dense();
        const Eigen::MatrixXd m2 = m * m;
        std::vector<long long> key(e.point.dim());
        for (int i = 0; i < e.point.dim(); ++i) key[i] = std::llround(m2(i, i) * 1e9);
        patterns.insert(std::move(key));
    }
    return static_cast<int>(patterns.size());
}

} // namespace soneuler
