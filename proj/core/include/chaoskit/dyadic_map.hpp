#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "chaoskit/errors.hpp"

namespace chaoskit {

/// A measure preserving permutation of (0,1] that shifts dyadic cells of
/// width 2^-d onto each other. Cell k (0-based) is ( k/2^d, (k+1)/2^d ].
///
/// Values are always kept in canonical form: the stored level is the minimal
/// level at which the point map can be represented, so equality of the
/// (level, perm) pair is equality of point maps.
class DyadicMap {
public:
    /// The identity map, canonical at level 0.
    DyadicMap() : level_(0), perm_{0} {}

    /// Builds the map shifting cell k onto cell images[k]. Canonicalizes to
    /// the minimal level. Throws NotABijection if images is not a permutation.
    static DyadicMap from_permutation(int level, std::vector<std::uint32_t> images);

    /// The cyclic shift by 2^-d: cell images [1, 2, ..., 2^d-1, 0].
    static DyadicMap periodic_shift(int level);

    /// Swap of cells a and b at the given level, identity elsewhere.
    static DyadicMap transposition(int level, std::uint32_t a, std::uint32_t b);

    /// Minimal representation level; equals the stored level.
    int degree() const { return level_; }
    int level() const { return level_; }

    const std::vector<std::uint32_t>& perm() const { return perm_; }

    bool is_identity() const { return level_ == 0; }

    /// Point evaluation g(t) for t in (0,1].
    double apply_point(double t) const;

    /// Cell images at a finer level: each cell expands into consecutive fine
    /// cells in order (a shift, never a reversal). Throws LevelTooCoarse if
    /// d_target < degree().
    std::vector<std::uint32_t> refine(int d_target) const;

    DyadicMap inverse() const;

    friend auto operator<=>(const DyadicMap&, const DyadicMap&) = default;

private:
    int level_;
    std::vector<std::uint32_t> perm_;
};

/// compose(g, h)(t) = g(h(t)); the result is canonical.
DyadicMap compose(const DyadicMap& g, const DyadicMap& h);

}  // namespace chaoskit
