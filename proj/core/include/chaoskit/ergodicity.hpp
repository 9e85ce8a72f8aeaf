#pragma once

#include <cstdint>
#include <vector>

#include "chaoskit/grid_kernel.hpp"
#include "chaoskit/group.hpp"

namespace chaoskit {

struct PairReport {
    int level = 0;  // level of the two-cell union
    std::uint32_t cell_a = 0, cell_b = 0;
    std::size_t stabilizer_generators = 0;
    bool transitive = false;
};

/// Finite-resolution local-ergodicity certificate: for every two-cell union
/// A inside E at every level in [level(E), d_max], the subgroup fixing A's
/// complement pointwise must act transitively on A's level-d_max subcells.
struct ErgodicityCertificate {
    CellSet set;
    int d_max = 0;
    std::vector<PairReport> pairs;
    bool passed = false;
};

ErgodicityCertificate check_locally_ergodic(const CellSet& E, const GroupSpec& group, int d_max);

/// An orbit of the diagonal action together with its mm^(x)n mass. On the
/// finite grid these orbits are exactly the positive-mass atoms of the
/// invariant sigma-algebra: any invariant kernel is constant on each.
struct QuasiAtom {
    std::vector<CellTuple> members;
    double mass = 0.0;
};

std::vector<QuasiAtom> quasi_atoms(const GroupSpec& group, int n, int level, int atom_count,
                                   const LevyModel& model);

struct ReduceResult {
    GridKernel kernel;
    double residual = 0.0;  // L2 distance moved
};

/// Cuboid-constant representative: orbit projection followed by averaging
/// over each cuboid of the partition. Group-invariant inputs move by at most
/// float noise.
ReduceResult reduce_kernel(const GridKernel& f, const Partition& partition,
                           const GroupSpec& group, const LevyModel& model);

struct ShiftCounterexample {
    GridKernel kernel;
    bool shift_invariant = false;      // under the cyclic shifts s_1..s_d, exact
    bool full_invariant = false;       // under all level-d permutations
    double projection_residual = 0.0;  // L2 distance to the full-group projection
};

/// The degree-2 kernel g2(|s-t|) h2(x,y) sampled on the grid. g2 must satisfy
/// the half-symmetry g2[k] == g2[2^d - k] (BadSymmetry otherwise), which
/// makes the kernel exactly invariant under every periodic shift while a
/// non-constant g2 stays outside the fully invariant class.
ShiftCounterexample shift_counterexample(int level, const std::vector<double>& g2,
                                         const std::vector<std::vector<double>>& h2,
                                         const LevyModel& model);

/// L2 distance between two kernels on the same grid.
double l2_distance(const GridKernel& f, const GridKernel& h, const LevyModel& model);

}  // namespace chaoskit
