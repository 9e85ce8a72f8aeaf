#include "chaoskit/random_objects.hpp"

#include <algorithm>
#include <numeric>

namespace chaoskit {

DyadicMap random_dyadic_map(std::mt19937_64& rng, int level) {
    std::vector<std::uint32_t> images(std::size_t{1} << level);
    std::iota(images.begin(), images.end(), 0u);
    std::shuffle(images.begin(), images.end(), rng);
    return DyadicMap::from_permutation(level, std::move(images));
}

GridKernel random_kernel(std::mt19937_64& rng, int degree, int level, int atom_count,
                         int entries) {
    GridKernel f(degree, level, atom_count);
    std::uniform_int_distribution<int> cell_dist(0, (1 << level) - 1);
    std::uniform_int_distribution<int> atom_dist(0, atom_count - 1);
    std::uniform_real_distribution<double> value_dist(-1.0, 1.0);
    for (int e = 0; e < entries; ++e) {
        CellTuple t;
        bool ok = true;
        for (int i = 0; i < degree && ok; ++i) {
            const int c = cell_dist(rng);
            for (int j = 0; j < i; ++j) ok &= (t.cell(j) != c);
            if (ok) t.push_back(c, atom_dist(rng));
        }
        if (ok) f.set(t, value_dist(rng));
    }
    return f;
}

GridKernel random_symmetric_kernel(std::mt19937_64& rng, int degree, int level, int atom_count,
                                   int entries) {
    return symmetrize(random_kernel(rng, degree, level, atom_count, entries));
}

Partition random_partition(std::mt19937_64& rng, int level, int blocks) {
    const int n_cells = 1 << level;
    if (blocks < 1 || blocks > n_cells)
        throw IndexOutOfRange("random_partition: impossible block count");
    std::vector<std::uint32_t> cells(n_cells);
    std::iota(cells.begin(), cells.end(), 0u);
    std::shuffle(cells.begin(), cells.end(), rng);

    // Random cut points guaranteeing nonempty blocks.
    std::vector<int> cuts{0, n_cells};
    std::uniform_int_distribution<int> cut_dist(1, n_cells - 1);
    while (static_cast<int>(cuts.size()) < blocks + 1) {
        const int c = cut_dist(rng);
        if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());

    Partition part;
    part.level = level;
    for (int b = 0; b < blocks; ++b) {
        std::vector<std::uint32_t> block(cells.begin() + cuts[b], cells.begin() + cuts[b + 1]);
        std::sort(block.begin(), block.end());
        part.blocks.push_back(std::move(block));
    }
    return part;
}

}  // namespace chaoskit
