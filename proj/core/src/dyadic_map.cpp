#include "chaoskit/dyadic_map.hpp"

#include <cmath>
#include <utility>

namespace chaoskit {

namespace {

// A level-d representation collapses to level d-1 iff every even cell maps to
// an even cell and its odd neighbour follows right behind it.
bool coarsenable(const std::vector<std::uint32_t>& perm) {
    for (std::size_t k = 0; k < perm.size(); k += 2) {
        if (perm[k] % 2 != 0 || perm[k + 1] != perm[k] + 1) return false;
    }
    return true;
}

void canonicalize(int& level, std::vector<std::uint32_t>& perm) {
    while (level > 0 && coarsenable(perm)) {
        std::vector<std::uint32_t> coarse(perm.size() / 2);
        for (std::size_t k = 0; k < coarse.size(); ++k) coarse[k] = perm[2 * k] / 2;
        perm = std::move(coarse);
        --level;
    }
}

}  // namespace

DyadicMap DyadicMap::from_permutation(int level, std::vector<std::uint32_t> images) {
    if (level < 0 || images.size() != (std::size_t{1} << level))
        throw NotABijection("from_permutation: image array size must be 2^level");
    std::vector<bool> seen(images.size(), false);
    for (auto v : images) {
        if (v >= images.size() || seen[v])
            throw NotABijection("from_permutation: images do not form a bijection");
        seen[v] = true;
    }
    canonicalize(level, images);
    DyadicMap g;
    g.level_ = level;
    g.perm_ = std::move(images);
    return g;
}

DyadicMap DyadicMap::periodic_shift(int level) {
    if (level < 1) throw IndexOutOfRange("periodic_shift: level must be >= 1");
    std::vector<std::uint32_t> images(std::size_t{1} << level);
    for (std::size_t k = 0; k < images.size(); ++k)
        images[k] = static_cast<std::uint32_t>((k + 1) % images.size());
    return from_permutation(level, std::move(images));
}

DyadicMap DyadicMap::transposition(int level, std::uint32_t a, std::uint32_t b) {
    std::vector<std::uint32_t> images(std::size_t{1} << level);
    for (std::size_t k = 0; k < images.size(); ++k) images[k] = static_cast<std::uint32_t>(k);
    if (a >= images.size() || b >= images.size())
        throw IndexOutOfRange("transposition: cell index out of range");
    std::swap(images[a], images[b]);
    return from_permutation(level, std::move(images));
}

double DyadicMap::apply_point(double t) const {
    const double n = static_cast<double>(std::size_t{1} << level_);
    auto k = static_cast<long>(std::ceil(t * n)) - 1;
    if (k < 0) k = 0;
    if (k >= static_cast<long>(perm_.size())) k = static_cast<long>(perm_.size()) - 1;
    return t + (static_cast<double>(perm_[k]) - static_cast<double>(k)) / n;
}

std::vector<std::uint32_t> DyadicMap::refine(int d_target) const {
    if (d_target < level_)
        throw LevelTooCoarse("refine: target level below the map's degree");
    const std::uint32_t factor = std::uint32_t{1} << (d_target - level_);
    std::vector<std::uint32_t> images(std::size_t{1} << d_target);
    for (std::size_t k = 0; k < perm_.size(); ++k)
        for (std::uint32_t r = 0; r < factor; ++r)
            images[k * factor + r] = perm_[k] * factor + r;
    return images;
}

DyadicMap DyadicMap::inverse() const {
    std::vector<std::uint32_t> inv(perm_.size());
    for (std::size_t k = 0; k < perm_.size(); ++k) inv[perm_[k]] = static_cast<std::uint32_t>(k);
    return from_permutation(level_, std::move(inv));
}

DyadicMap compose(const DyadicMap& g, const DyadicMap& h) {
    const int d = std::max(g.degree(), h.degree());
    const auto ig = g.refine(d);
    const auto ih = h.refine(d);
    std::vector<std::uint32_t> images(ig.size());
    for (std::size_t k = 0; k < images.size(); ++k) images[k] = ig[ih[k]];
    return DyadicMap::from_permutation(d, std::move(images));
}

}  // namespace chaoskit
