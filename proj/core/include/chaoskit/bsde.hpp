#pragma once

#include <vector>

#include "chaoskit/grid_kernel.hpp"

namespace chaoskit {

/// Affine generator f(s, y, z_1..z_N) = a(s) y + sum_k b_k(s) z_k + c(s),
/// with z_k = <Z_{s,.}, h_k>_mu. Per-cell coefficient arrays; affine keeps
/// every Picard iterate inside the truncated chaos space exactly.
struct AffineGenerator {
    std::vector<double> a;                 // per time cell
    std::vector<std::vector<double>> b;    // [driver k][time cell]
    std::vector<double> c;                 // per time cell
    std::vector<std::vector<double>> drivers;  // h_k values per dense state

    void check_sized(int n_cells, int n_states) const;
};

/// The integrand field of the martingale representation: one chaos vector
/// per (time cell s, state x), with kernels supported on cells < s.
struct ZField {
    int level = 0;
    int states = 0;
    std::vector<std::vector<ChaosVector>> z;  // [cell][state]

    static ZField zero(int n_max, int level, int states, int atom_count);
};

/// Exact grid Clark formula: the chaos vector of Z_{s,x} has degree-(n-1)
/// kernels n * f_n(., (s,x)) restricted to cells below s. Pathwise,
///   F - E F = sum_{s,x} Z_{s,x}(path) * M(s,x)
/// holds up to float noise. Kernels of F must be symmetric.
ZField martingale_repr(const ChaosVector& F);

/// Pathwise reconstruction residual of the representation above.
double repr_residual(const ChaosVector& F, const ZField& Z, const PathSample& path,
                     const LevyModel& model);

struct PicardState {
    std::vector<ChaosVector> y;  // indexed by grid time 0..2^level
    ZField z;

    static PicardState zero(int n_max, int level, int states, int atom_count);
};

/// One application of the Picard operators: the new Y conditions the terminal
/// value plus the left-endpoint time integral of the generator; the new Z is
/// the martingale representation of the full-horizon integrand.
PicardState picard_step(const ChaosVector& F, const AffineGenerator& gen,
                        const PicardState& prev, const LevyModel& model);

struct PicardHistory {
    std::vector<double> distances;  // successive chaos-norm distances
    bool converged = false;
};

/// Iterates picard_step from (0, 0) until the successive distance drops to
/// tol or the iteration cap is hit. A cap hit is reported, not fatal.
std::pair<PicardState, PicardHistory> picard_solve(const ChaosVector& F,
                                                   const AffineGenerator& gen, int iterations,
                                                   double tol, const LevyModel& model);

struct PropagationFailure {
    int iterate = 0;
    int t_cell = 0;
    int degree = 0;
    bool z_side = false;
};

struct PropagationReport {
    bool all_pass = false;
    int iterations = 0;
    std::vector<PropagationFailure> failures;
};

/// Runs the Picard scheme and checks that cuboid-constancy of the terminal
/// kernels survives every iterate: each Y_t kernel on the partition
/// restricted to cells < t, each Z_{s,x} kernel on the partition restricted
/// to cells < s. Exact at grid scale for per-block-constant generators.
PropagationReport invariance_propagation_check(const ChaosVector& F, const AffineGenerator& gen,
                                               const Partition& partition, int iterations,
                                               const LevyModel& model, double tol = 1e-12);

}  // namespace chaoskit
