#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "chaoskit/grid_kernel.hpp"
#include "chaoskit/levy_model.hpp"

namespace chaoskit {

struct McReport {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

/// Exact pathwise multiple integral: sum over stored tuples of the kernel
/// value times the product of M evaluations. Distinct time cells make the M
/// factors live on disjoint boxes, so no diagonal correction is needed.
double multiple_integral(const PathSample& path, const GridKernel& f, const LevyModel& model);

/// constant + sum of multiple integrals per degree.
double evaluate_chaos(const PathSample& path, const ChaosVector& cv, const LevyModel& model);

/// Pathwise residual of the commutative diagram:
/// | I_n(pullback(f, g^-1))(path) - I_n(f)(permute_path(g, path)) |.
/// An exact reindexing identity; the residual is float noise.
double verify_diagram(const GridKernel& f, const DyadicMap& g, const PathSample& path,
                      const LevyModel& model);

/// MC estimate of E[I_n(f~)^2]; the acceptance target is n! ||f~||^2.
/// Symmetrizes the kernel first.
McReport isometry_check(const GridKernel& f, const LevyModel& model, std::size_t samples,
                        std::uint64_t seed);

struct CoefficientEstimate {
    CellTuple support;  // unordered: cells strictly increasing
    double estimate = 0.0;
    double std_error = 0.0;
};

struct ChaosExtraction {
    ChaosVector vector;           // estimated kernels, all slot orderings filled
    double constant_std_error = 0.0;
    std::vector<CoefficientEstimate> coefficients;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

/// Estimates the chaos kernels of a path functional by projecting onto the
/// orthogonal basis of symmetrized off-diagonal indicators. No linear solve:
/// distinct unordered supports are exactly orthogonal on the grid.
ChaosExtraction chaos_coefficients(const LevyModel& model,
                                   const std::function<double(const PathSample&)>& functional,
                                   int n_max, int level, std::size_t samples, std::uint64_t seed);

}  // namespace chaoskit
