#pragma once

#include <map>
#include <vector>

#include "chaoskit/cell_tuple.hpp"
#include "chaoskit/group.hpp"
#include "chaoskit/levy_model.hpp"

namespace chaoskit {

/// A degree-n chaos kernel on the dyadic grid: a sparse real tensor indexed
/// by off-diagonal CellTuples (tuples with a repeated time cell carry no
/// value, matching the excluded diagonal of the multiple integrals). Absent
/// entries are zero.
class GridKernel {
public:
    GridKernel(int degree, int level, int atom_count)
        : degree_(degree), level_(level), atom_count_(atom_count) {
        if (degree < 1 || degree > kMaxDegree)
            throw IndexOutOfRange("GridKernel: degree out of range");
        if (level < 0 || level > 8) throw IndexOutOfRange("GridKernel: level out of range");
        if (atom_count < 1) throw IndexOutOfRange("GridKernel: atom_count must be positive");
    }

    int degree() const { return degree_; }
    int level() const { return level_; }
    int atom_count() const { return atom_count_; }
    int cell_count() const { return 1 << level_; }

    double get(const CellTuple& t) const {
        auto it = values_.find(t);
        return it == values_.end() ? 0.0 : it->second;
    }

    /// Stores a value; setting 0 erases. Throws on diagonal or out-of-range
    /// tuples.
    void set(const CellTuple& t, double v);

    /// Accumulates into an entry; diagonal tuples are rejected the same way.
    void add(const CellTuple& t, double v);

    const std::map<CellTuple, double>& entries() const { return values_; }
    std::size_t size() const { return values_.size(); }

    void check_compatible(const LevyModel& model) const {
        if (model.state_count() != atom_count_)
            throw ModelMismatch("kernel atom_count differs from the model's state count");
    }

private:
    void validate(const CellTuple& t) const;

    int degree_, level_, atom_count_;
    std::map<CellTuple, double> values_;
};

/// A truncated chaos expansion: constant term plus kernels of degree 1..N.
struct ChaosVector {
    double constant = 0.0;
    std::vector<GridKernel> kernels;  // kernels[i] has degree i+1

    static ChaosVector zero(int n_max, int level, int atom_count);

    int level() const;
    int atom_count() const;
    int max_degree() const { return static_cast<int>(kernels.size()); }

    ChaosVector& operator+=(const ChaosVector& other);
    ChaosVector& operator*=(double factor);
    friend ChaosVector operator+(ChaosVector a, const ChaosVector& b) { return a += b; }
    friend ChaosVector operator*(double s, ChaosVector v) { return v *= s; }
};

// --- kernel operations -----------------------------------------------------

/// Squared L2 norm under mm^(x)n: sum of value^2 times the product of cell x
/// state measures.
double l2_norm_sq(const GridKernel& f, const LevyModel& model);

/// (1/n!) sum over slot permutations. Idempotent, norm-nonincreasing.
GridKernel symmetrize(const GridKernel& f);

/// The substitution operator: (pullback(f, g))(x) = f(g[n] x). A linear
/// isometry and a right action in g.
GridKernel pullback(const GridKernel& f, const DyadicMap& g);

/// Tensor product on concatenated tuples; entries landing on a repeated time
/// cell are dropped (off-diagonal convention).
GridKernel tensor(const GridKernel& f, const GridKernel& h);

struct ContractionResult {
    GridKernel kernel;            // degree n+m-2k-r; unused when that is zero
    double scalar = 0.0;          // the value when the output degree is zero
    double dropped_mass_sq = 0.0; // L2 mass lost to the off-diagonal convention
};

/// The partial pairing f (x)_k^r h: integrates out k paired coordinates
/// against mm, multiplies the x-values of the r shared coordinates, and
/// re-expresses the result on off-diagonal tuples.
ContractionResult contraction(const GridKernel& f, const GridKernel& h, int k, int r,
                              const LevyModel& model);

/// Convenience: full contraction of two degree-n kernels, the L2 inner
/// product.
double inner_product(const GridKernel& f, const GridKernel& h, const LevyModel& model);

/// Conditional expectation onto the invariants of the diagonal group action:
/// averages the kernel over each orbit of its index space. Exactly invariant
/// output, idempotent, an L2 contraction; commutes with symmetrize.
GridKernel orbit_project(const GridKernel& f, const GroupSpec& group);

/// True iff max |f - pullback(f, g)| <= tol over all generators (generator
/// invariance implies group invariance).
bool is_invariant(const GridKernel& f, const GroupSpec& group, double tol);

/// Disjoint cell blocks at the kernel's level.
struct Partition {
    int level = 0;
    std::vector<std::vector<std::uint32_t>> blocks;

    /// Block index per cell, -1 outside the union.
    std::vector<int> block_of_cell() const;
};

/// True iff per atom tuple the kernel is constant (as a function, absent
/// entries counting as zero) on the off-diagonal part of every cuboid
/// E_{l1} x ... x E_{ln}. Tuples leaving the partition union are
/// unconstrained.
bool is_cuboid_constant(const GridKernel& f, const Partition& partition, double tol);

/// Zeroes every tuple containing a time cell >= t_cell; the grid form of
/// conditioning on the information up to t_cell / 2^level.
GridKernel restrict_time(const GridKernel& f, int t_cell);

/// The degree-n kernel of the stochastic exponential on (a, t]: value 1/n!
/// on every off-diagonal tuple with all cells in [a_cell, t_cell), for every
/// atom combination.
GridKernel dolean_kernel(int a_cell, int t_cell, int n, int level, const LevyModel& model);

/// norm^2 = constant^2 + sum_n n! ||f_n||^2 (kernels assumed symmetric).
double chaos_norm_sq(const ChaosVector& cv, const LevyModel& model);

}  // namespace chaoskit
