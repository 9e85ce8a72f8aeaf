#pragma once

#include <map>
#include <vector>

#include "chaoskit/grid_kernel.hpp"

namespace chaoskit {

/// Orthogonal polynomials of the atomic state measure mu, built by
/// Gram-Schmidt from the monomials 1, x, x^2, ... restricted to the atom
/// support. Degenerate directions are dropped, so the retained family is an
/// orthogonal basis of the (finite dimensional) space L2(mu).
struct OrthoBasis {
    /// Monomial coefficients of p_i (coeffs[i][j] multiplies x^j).
    std::vector<std::vector<double>> coeffs;
    /// Values p_i(x_s) on the dense states of the model.
    std::vector<std::vector<double>> values;
    /// Squared norms q_i = ||p_i||^2 in L2(mu); all positive.
    std::vector<double> norms_sq;

    int size() const { return static_cast<int>(norms_sq.size()); }
};

OrthoBasis build_basis(const LevyModel& model);

/// The state-integrated kernels of the orthogonal-martingale expansion:
/// component (i_1..i_n) maps each strictly increasing time tuple to
///   n! * sum_atoms f(tuple) * prod_j p_{i_j}(x_j) w_j / q_{i_j}.
/// Component indices are 0-based positions in the basis.
struct SimplexTransform {
    int n = 0;
    int level = 0;
    std::map<std::vector<int>, std::map<CellTuple, double>> components;

    double get(const std::vector<int>& index, const CellTuple& increasing_cells) const;
};

/// Requires a symmetric kernel; exact finite sums over the atoms.
SimplexTransform ns_transform(const GridKernel& f, const OrthoBasis& basis,
                              const LevyModel& model);

/// Residual of the norm identity
///   n! ||f||^2 = sum over index tuples of (prod q_i) * simplex L2 norm of g.
/// An exact change of orthogonal basis in the state coordinates; the residual
/// is float noise.
double ns_parseval_residual(const GridKernel& f, const OrthoBasis& basis,
                            const LevyModel& model);

/// Residual of the permutation covariance of the transformed kernels: for
/// increasing t and the permutation sigma sorting the images g(t_sigma(m)),
///   transform(f)_{(i_1..i_n)}(sorted images)
///     = transform(pullback(f, g))_{(i_{sigma^-1(1)}..i_{sigma^-1(n)})}(t).
double ns_covariance_residual(const GridKernel& f, const OrthoBasis& basis, const DyadicMap& g,
                              const LevyModel& model);

}  // namespace chaoskit
