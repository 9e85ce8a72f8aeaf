#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "chaoskit/dyadic_map.hpp"
#include "chaoskit/errors.hpp"

namespace chaoskit {

struct JumpAtom {
    double x;       // jump size, nonzero
    double lambda;  // intensity, positive
};

/// A square-integrable, mean-zero Levy model: Brownian coefficient sigma plus
/// finitely many compensated jump atoms. The induced state measure
///     mu = sigma^2 * delta_0 + sum_j lambda_j x_j^2 * delta_{x_j}
/// is purely atomic, so every L2 computation downstream is a finite sum.
///
/// States are indexed densely: index 0 is the Brownian state when sigma > 0,
/// followed by the jump atoms in order. With sigma = 0 the jump atoms start
/// at index 0.
class LevyModel {
public:
    LevyModel(double sigma, std::vector<JumpAtom> atoms);

    double sigma() const { return sigma_; }
    const std::vector<JumpAtom>& atoms() const { return atoms_; }
    bool has_brownian() const { return sigma_ > 0.0; }

    int state_count() const { return static_cast<int>(weights_.size()); }

    /// mu weight of a dense state index.
    double state_weight(int s) const;

    /// The x value carried by a dense state (0 for the Brownian state).
    double state_x(int s) const;

    /// Jump-atom position of a dense state; -1 for the Brownian state.
    int state_jump_index(int s) const;

    /// (global state index, mu weight) pairs, global index 0 reserved for the
    /// Brownian state and omitted when sigma = 0.
    std::vector<std::pair<int, double>> mu_weights() const;

    /// mm-measure of one cell x state box at the given level.
    double cell_state_measure(int level, int state) const {
        return state_weight(state) / static_cast<double>(std::size_t{1} << level);
    }

private:
    double sigma_;
    std::vector<JumpAtom> atoms_;
    std::vector<double> weights_;  // dense state weights
    std::vector<double> xs_;       // dense state x values
};

/// One discretized path: per-cell Brownian increments and per-(cell, atom)
/// Poisson counts. Enough data to evaluate the random measure M exactly on
/// every cell x state box.
struct PathSample {
    int level = 0;
    std::vector<double> gauss;             // 2^level entries, N(0, 2^-level)
    std::vector<std::vector<int>> counts;  // [cell][jump atom]
};

/// Deterministic sampling: the same (model, level, seed) always produces the
/// same path. Use independent seeds (e.g. path_stream_seed) for MC batches.
PathSample sample_path(const LevyModel& model, int level, std::uint64_t seed);

/// Derives a per-path seed from a base seed, suitable for parallel streams.
std::uint64_t path_stream_seed(std::uint64_t base_seed, std::uint64_t path_index);

/// M(I_cell x {state}): sigma * dW for the Brownian state, x_j * (count -
/// lambda_j 2^-d) for jump states. Centered with variance equal to the
/// mm-measure of the box.
double random_measure_eval(const LevyModel& model, const PathSample& path, int cell, int state);

/// Path increment over the contiguous cell range [first_cell, last_cell):
/// X_I = sigma * sum dW + sum_j x_j (sum N_j - lambda_j |I|).
double increment(const LevyModel& model, const PathSample& path, int first_cell, int last_cell);

/// The permuted path realizing T_g: cell data gathered from the image cells,
/// so that evaluating a functional on the result applies T_g.
PathSample permute_path(const DyadicMap& g, const PathSample& path);

}  // namespace chaoskit
