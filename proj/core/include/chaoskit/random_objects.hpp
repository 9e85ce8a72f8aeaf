#pragma once

#include <random>

#include "chaoskit/grid_kernel.hpp"
#include "chaoskit/group.hpp"

namespace chaoskit {

/// Uniformly random cell permutation at the given level (canonicalized).
DyadicMap random_dyadic_map(std::mt19937_64& rng, int level);

/// Sparse kernel with the requested number of off-diagonal entries, values
/// uniform in [-1, 1]. Fewer entries result when draws collide.
GridKernel random_kernel(std::mt19937_64& rng, int degree, int level, int atom_count,
                         int entries);

/// symmetrize(random_kernel(...)).
GridKernel random_symmetric_kernel(std::mt19937_64& rng, int degree, int level, int atom_count,
                                   int entries);

/// Random partition of all level-d cells into `blocks` nonempty blocks.
Partition random_partition(std::mt19937_64& rng, int level, int blocks);

}  // namespace chaoskit
