#pragma once

#include "soneuler/antisym.hpp"
#include "soneuler/dynamics.hpp"

#include <utility>
#include <vector>

namespace soneuler {

/// One equilibrium of mu' = [J, mu^2] on the orbit through x: the conjugate
/// of x by a permutation matrix, with its residual ||[J, point^2]||_F.
struct EquilibriumPoint {
    PermutationMatrix permutation;
    AntisymMatrix point;
    double residual;
};

/// All equilibria on the orbit through a generic Cartan element: conjugates
/// of x by even permutations when n is even, by all permutations when n is
/// odd, in lexicographic order. Rejects non-generic inputs; asserts pairwise
/// distinctness and the residual bound.
std::vector<EquilibriumPoint> enumerate_equilibria(const CartanElement& x, const InertiaSpec& j);

/// Residual test: returns (residual < equilibrium tolerance * ||J|| ||mu||^2,
/// residual) with residual = ||[J, mu^2]||_F.
std::pair<bool, double> is_equilibrium(const InertiaSpec& j, const AntisymMatrix& mu);

/// Number of distinct diagonal patterns of point^2 among the equilibria,
/// i.e. the coset count n!/2^m.
int count_square_patterns(const std::vector<EquilibriumPoint>& eq);

} // namespace soneuler
