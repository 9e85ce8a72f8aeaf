#include "chaoskit/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace chaoskit {

int GroupSpec::degree() const {
    int d = 0;
    for (const auto& g : generators) d = std::max(d, g.degree());
    return d;
}

bool CellSet::contains(std::uint32_t cell) const {
    return std::find(cells.begin(), cells.end(), cell) != cells.end();
}

std::vector<std::uint32_t> CellSet::refine(int d_target) const {
    if (d_target < level) throw LevelTooCoarse("CellSet::refine: target level too coarse");
    const std::uint32_t factor = std::uint32_t{1} << (d_target - level);
    std::vector<std::uint32_t> fine;
    fine.reserve(cells.size() * factor);
    for (auto c : cells)
        for (std::uint32_t r = 0; r < factor; ++r) fine.push_back(c * factor + r);
    std::sort(fine.begin(), fine.end());
    return fine;
}

std::vector<DyadicMap> enumerate_closure(const GroupSpec& spec) {
    if (spec.generators.empty()) throw EmptySet("enumerate_closure: no generators");
    // Multiply by generators and their inverses so the BFS closes the group
    // even when a generator's inverse is not reachable by forward products
    // within the cap ordering.
    std::vector<DyadicMap> muls;
    for (const auto& g : spec.generators) {
        muls.push_back(g);
        muls.push_back(g.inverse());
    }
    std::set<DyadicMap> seen;
    std::deque<DyadicMap> frontier;
    seen.insert(DyadicMap{});
    frontier.push_back(DyadicMap{});
    while (!frontier.empty()) {
        DyadicMap e = frontier.front();
        frontier.pop_front();
        for (const auto& m : muls) {
            DyadicMap next = compose(m, e);
            if (seen.insert(next).second) {
                if (seen.size() > spec.closure_cap)
                    throw ClosureCapExceeded("enumerate_closure: group larger than closure_cap");
                frontier.push_back(next);
            }
        }
    }
    return {seen.begin(), seen.end()};
}

std::vector<DyadicMap> restricted_group_generators(const CellSet& E, int d) {
    if (E.cells.empty()) throw EmptySet("restricted_group_generators: empty cell set");
    if (d < E.level) throw LevelTooCoarse("restricted_group_generators: d below the set's level");
    const auto fine = E.refine(d);
    if (fine.size() == 1) return {DyadicMap{}};
    std::vector<DyadicMap> gens;
    gens.reserve(fine.size() - 1);
    for (std::size_t i = 0; i + 1 < fine.size(); ++i)
        gens.push_back(DyadicMap::transposition(d, fine[i], fine[i + 1]));
    return gens;
}

CellTuple diagonal_apply(const std::vector<std::uint32_t>& cell_images, const CellTuple& x) {
    CellTuple out = x;
    for (int i = 0; i < x.degree(); ++i) {
        const int c = x.cell(i);
        if (c < 0 || static_cast<std::size_t>(c) >= cell_images.size())
            throw LevelMismatch("diagonal_apply: tuple cell outside the grid");
        out.set_cell(i, static_cast<int>(cell_images[c]));
    }
    return out;
}

CellTuple diagonal_apply(const DyadicMap& g, const CellTuple& x, int d) {
    if (d < g.degree()) throw LevelMismatch("diagonal_apply: level below deg(g)");
    return diagonal_apply(g.refine(d), x);
}

std::vector<std::vector<CellTuple>> OrbitPartition::orbits() const {
    std::vector<std::vector<CellTuple>> out(orbit_count);
    for (const auto& [t, id] : orbit_of) out[id].push_back(t);
    return out;
}

namespace {

// Enumerates all off-diagonal tuples (distinct time cells, arbitrary atoms)
// in lexicographic order and calls fn on each.
template <typename Fn>
void for_each_off_diagonal(int n, int n_cells, int atom_count, Fn&& fn) {
    CellTuple t;
    auto rec = [&](auto&& self, int slot) -> void {
        if (slot == n) {
            fn(t);
            return;
        }
        for (int c = 0; c < n_cells; ++c) {
            bool used = false;
            for (int i = 0; i < slot; ++i) used |= (t.cell(i) == c);
            if (used) continue;
            for (int a = 0; a < atom_count; ++a) {
                t.push_back(c, a);
                self(self, slot + 1);
                t = t.without_slot(slot);
            }
        }
    };
    rec(rec, 0);
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    }
};

}  // namespace

OrbitPartition orbits(const GroupSpec& spec, int n, int level, int atom_count) {
    if (spec.generators.empty()) throw EmptySet("orbits: no generators");
    if (level < spec.degree()) throw LevelMismatch("orbits: level below group degree");
    enumerate_closure(spec);  // desk-scale guard; orbits come from generator moves alone

    const int n_cells = 1 << level;
    std::map<CellTuple, int> index;
    std::vector<CellTuple> tuples;
    for_each_off_diagonal(n, n_cells, atom_count, [&](const CellTuple& t) {
        index.emplace(t, static_cast<int>(tuples.size()));
        tuples.push_back(t);
    });

    UnionFind uf(tuples.size());
    for (const auto& g : spec.generators) {
        const auto images = g.refine(level);
        for (std::size_t i = 0; i < tuples.size(); ++i) {
            const CellTuple moved = diagonal_apply(images, tuples[i]);
            uf.unite(static_cast<int>(i), index.at(moved));
        }
    }

    OrbitPartition part;
    std::map<int, int> root_to_id;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        const int root = uf.find(static_cast<int>(i));
        auto [it, fresh] = root_to_id.emplace(root, part.orbit_count);
        if (fresh) ++part.orbit_count;
        part.orbit_of.emplace(tuples[i], it->second);
    }
    return part;
}

namespace detail {

std::vector<std::uint32_t> point_orbits(const std::vector<std::vector<std::uint32_t>>& images,
                                        std::uint32_t n_points) {
    UnionFind uf(n_points);
    for (const auto& img : images)
        for (std::uint32_t p = 0; p < n_points; ++p)
            uf.unite(static_cast<int>(p), static_cast<int>(img[p]));
    std::vector<std::uint32_t> root(n_points);
    for (std::uint32_t p = 0; p < n_points; ++p)
        root[p] = static_cast<std::uint32_t>(uf.find(static_cast<int>(p)));
    return root;
}

bool is_transposition(const std::vector<std::uint32_t>& images) {
    int moved = 0;
    for (std::size_t k = 0; k < images.size(); ++k) moved += (images[k] != k);
    return moved == 2;
}

}  // namespace detail

bool is_transitive_on(const GroupSpec& spec, const std::vector<std::uint32_t>& cells, int d) {
    if (cells.empty()) throw EmptySet("is_transitive_on: empty cell set");
    if (d < spec.degree()) throw LevelMismatch("is_transitive_on: level below group degree");
    const std::uint32_t n_points = std::uint32_t{1} << d;
    std::vector<bool> inside(n_points, false);
    for (auto c : cells) inside[c] = true;

    std::vector<std::vector<std::uint32_t>> images;
    images.reserve(spec.generators.size());
    for (const auto& g : spec.generators) {
        auto img = g.refine(d);
        for (std::uint32_t p = 0; p < n_points; ++p)
            if (!inside[p] && img[p] != p)
                throw GeneratorMovesComplement("is_transitive_on: generator moves the complement");
        images.push_back(std::move(img));
    }

    const auto root = detail::point_orbits(images, n_points);
    for (std::size_t i = 1; i < cells.size(); ++i)
        if (root[cells[i]] != root[cells[0]]) return false;
    return true;
}

}  // namespace chaoskit
