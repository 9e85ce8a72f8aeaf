#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "chaoskit/cell_tuple.hpp"
#include "chaoskit/dyadic_map.hpp"

namespace chaoskit {

/// A finitely generated group of dyadic maps, handled through its generator
/// list. closure_cap bounds explicit element enumeration wherever a routine
/// needs the full group.
struct GroupSpec {
    std::vector<DyadicMap> generators;
    std::size_t closure_cap = 10080;

    /// Maximal degree over the generators (0 for identity-only groups).
    int degree() const;
};

/// A union of cells at a fixed dyadic level.
struct CellSet {
    int level = 0;
    std::vector<std::uint32_t> cells;

    bool contains(std::uint32_t cell) const;

    /// The member cells re-indexed at a finer level.
    std::vector<std::uint32_t> refine(int d_target) const;
};

/// BFS closure of the generated group, deduplicated through canonical forms.
/// Throws ClosureCapExceeded when the group has more than spec.closure_cap
/// elements.
std::vector<DyadicMap> enumerate_closure(const GroupSpec& spec);

/// Adjacent transpositions of the level-d cells inside E (identity outside),
/// the smallest generating set of all level-d permutations supported in E.
/// Returns {identity} when E covers a single level-d cell.
std::vector<DyadicMap> restricted_group_generators(const CellSet& E, int d);

/// The diagonal action g[n]: time cells pass through g, atoms stay put.
/// Throws LevelMismatch when d < deg(g) or a cell is out of range at level d.
CellTuple diagonal_apply(const DyadicMap& g, const CellTuple& x, int d);

/// Same action with the cell images precomputed by refine(g, d).
CellTuple diagonal_apply(const std::vector<std::uint32_t>& cell_images, const CellTuple& x);

/// Orbit partition of the off-diagonal tuple space under the diagonal action.
struct OrbitPartition {
    /// orbit id per tuple; ids are contiguous starting at 0.
    std::map<CellTuple, int> orbit_of;
    int orbit_count = 0;

    std::vector<std::vector<CellTuple>> orbits() const;
};

/// Partitions all off-diagonal n-tuples over 2^level cells and atom_count
/// atoms into orbits of the generated group. The group itself must be
/// enumerable within the closure cap.
OrbitPartition orbits(const GroupSpec& spec, int n, int level, int atom_count);

/// True iff the generated group acts transitively on the given level-d cells.
/// Every generator must fix the complement pointwise
/// (GeneratorMovesComplement otherwise).
bool is_transitive_on(const GroupSpec& spec, const std::vector<std::uint32_t>& cells, int d);

namespace detail {

/// Orbits of a set of points under permutations given as image arrays.
/// Returns a representative id per point (union-find roots).
std::vector<std::uint32_t> point_orbits(const std::vector<std::vector<std::uint32_t>>& images,
                                        std::uint32_t n_points);

/// True iff the image array differs from the identity in exactly two places.
bool is_transposition(const std::vector<std::uint32_t>& images);

}  // namespace detail

}  // namespace chaoskit
