#include "chaoskit/ergodicity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace chaoskit {

namespace {

// Pointwise stabilizer of the cells outside A, as image arrays at level d.
//
// Two exact routes. When every generator is a transposition of level-d cells
// the generated group is the product of symmetric groups on the connected
// components of the transposition graph, so the stabilizer of A^c is the
// product of symmetric groups on (component intersect A); adjacent
// transpositions of those intersections generate it. Otherwise the group is
// enumerated (subject to the closure cap) and filtered element by element.
std::vector<std::vector<std::uint32_t>> stabilizer_images(const GroupSpec& group, int d,
                                                          const std::vector<bool>& in_a) {
    std::vector<std::vector<std::uint32_t>> gen_images;
    gen_images.reserve(group.generators.size());
    bool all_transpositions = true;
    for (const auto& g : group.generators) {
        gen_images.push_back(g.refine(d));
        all_transpositions &= (g.is_identity() || detail::is_transposition(gen_images.back()));
    }
    const std::uint32_t n_points = std::uint32_t{1} << d;

    std::vector<std::vector<std::uint32_t>> stab;
    if (all_transpositions) {
        const auto root = detail::point_orbits(gen_images, n_points);
        std::map<std::uint32_t, std::vector<std::uint32_t>> components;
        for (std::uint32_t p = 0; p < n_points; ++p)
            if (in_a[p]) components[root[p]].push_back(p);
        for (const auto& [r, cells] : components)
            for (std::size_t i = 0; i + 1 < cells.size(); ++i)
                stab.push_back(DyadicMap::transposition(d, cells[i], cells[i + 1]).refine(d));
        return stab;
    }

    for (const auto& e : enumerate_closure(group)) {
        auto img = e.refine(d);
        bool fixes_complement = true;
        for (std::uint32_t p = 0; p < n_points && fixes_complement; ++p)
            fixes_complement = in_a[p] || img[p] == p;
        if (fixes_complement && !e.is_identity()) stab.push_back(std::move(img));
    }
    return stab;
}

}  // namespace

ErgodicityCertificate check_locally_ergodic(const CellSet& E, const GroupSpec& group,
                                            int d_max) {
    if (E.cells.empty()) throw EmptySet("check_locally_ergodic: empty set");
    if (d_max < E.level)
        throw LevelTooCoarse("check_locally_ergodic: d_max below the set's level");
    if (d_max < group.degree())
        throw LevelTooCoarse("check_locally_ergodic: d_max below the group degree");

    ErgodicityCertificate cert;
    cert.set = E;
    cert.d_max = d_max;
    cert.passed = true;

    for (int n = E.level; n <= d_max; ++n) {
        std::vector<std::uint32_t> level_cells;  // level-n cells contained in E
        const std::uint32_t factor = std::uint32_t{1} << (n - E.level);
        for (auto c : E.cells)
            for (std::uint32_t r = 0; r < factor; ++r) level_cells.push_back(c * factor + r);
        std::sort(level_cells.begin(), level_cells.end());

        for (std::size_t i = 0; i < level_cells.size(); ++i) {
            for (std::size_t j = i + 1; j < level_cells.size(); ++j) {
                const std::uint32_t fine_per_cell = std::uint32_t{1} << (d_max - n);
                std::vector<bool> in_a(std::size_t{1} << d_max, false);
                std::vector<std::uint32_t> a_cells;
                for (auto coarse : {level_cells[i], level_cells[j]})
                    for (std::uint32_t r = 0; r < fine_per_cell; ++r) {
                        in_a[coarse * fine_per_cell + r] = true;
                        a_cells.push_back(coarse * fine_per_cell + r);
                    }

                const auto stab = stabilizer_images(group, d_max, in_a);
                const auto root = detail::point_orbits(stab, std::uint32_t{1} << d_max);
                bool transitive = true;
                for (std::size_t m = 1; m < a_cells.size(); ++m)
                    transitive &= (root[a_cells[m]] == root[a_cells[0]]);

                cert.pairs.push_back(
                    {n, level_cells[i], level_cells[j], stab.size(), transitive});
                cert.passed &= transitive;
            }
        }
    }
    return cert;
}

std::vector<QuasiAtom> quasi_atoms(const GroupSpec& group, int n, int level, int atom_count,
                                   const LevyModel& model) {
    const OrbitPartition part = orbits(group, n, level, atom_count);
    std::vector<QuasiAtom> atoms(part.orbit_count);
    for (const auto& [t, id] : part.orbit_of) {
        double w = 1.0;
        for (int i = 0; i < t.degree(); ++i) w *= model.cell_state_measure(level, t.atom(i));
        atoms[id].members.push_back(t);
        atoms[id].mass += w;
    }
    return atoms;
}

double l2_distance(const GridKernel& f, const GridKernel& h, const LevyModel& model) {
    if (f.degree() != h.degree() || f.level() != h.level())
        throw LevelMismatch("l2_distance: kernels live on different grids");
    std::set<CellTuple> keys;
    for (const auto& [t, v] : f.entries()) keys.insert(t);
    for (const auto& [t, v] : h.entries()) keys.insert(t);
    double sum = 0.0;
    for (const auto& t : keys) {
        const double diff = f.get(t) - h.get(t);
        if (diff == 0.0) continue;
        double w = 1.0;
        for (int i = 0; i < t.degree(); ++i) w *= model.cell_state_measure(f.level(), t.atom(i));
        sum += diff * diff * w;
    }
    return std::sqrt(sum);
}

namespace {

void for_each_cuboid_tuple(const std::vector<int>& signature, const Partition& partition,
                           const std::vector<int>& atoms,
                           const std::function<void(const CellTuple&)>& fn) {
    const int n = static_cast<int>(signature.size());
    CellTuple t;
    auto rec = [&](auto&& self, int slot) -> void {
        if (slot == n) {
            fn(t);
            return;
        }
        for (auto c : partition.blocks[signature[slot]]) {
            bool used = false;
            for (int i = 0; i < slot; ++i) used |= (t.cell(i) == static_cast<int>(c));
            if (used) continue;
            t.push_back(static_cast<int>(c), atoms[slot]);
            self(self, slot + 1);
            t = t.without_slot(slot);
        }
    };
    rec(rec, 0);
}

}  // namespace

ReduceResult reduce_kernel(const GridKernel& f, const Partition& partition,
                           const GroupSpec& group, const LevyModel& model) {
    if (partition.level != f.level())
        throw LevelMismatch("reduce_kernel: partition level differs from kernel level");
    const GridKernel projected = orbit_project(f, group);
    const auto owner = partition.block_of_cell();

    // Average over each cuboid x atom-tuple class; tuples leaving the
    // partition union keep their projected values.
    GridKernel out(f.degree(), f.level(), f.atom_count());
    std::map<std::pair<std::vector<int>, std::vector<int>>, double> sums;
    for (const auto& [t, v] : projected.entries()) {
        std::vector<int> signature(t.degree());
        bool inside = true;
        for (int i = 0; i < t.degree() && inside; ++i) {
            signature[i] = owner[t.cell(i)];
            inside = signature[i] >= 0;
        }
        if (inside)
            sums[{signature, t.atoms()}] += v;
        else
            out.set(t, v);
    }
    for (const auto& [key, total] : sums) {
        std::map<int, int> multiplicity;
        for (int b : key.first) ++multiplicity[b];
        double members = 1.0;
        for (const auto& [b, k] : multiplicity) {
            const double s = static_cast<double>(partition.blocks[b].size());
            for (int i = 0; i < k; ++i) members *= (s - i);
        }
        const double avg = total / members;
        if (avg == 0.0) continue;
        for_each_cuboid_tuple(key.first, partition, key.second,
                              [&](const CellTuple& t) { out.set(t, avg); });
    }
    return {out, l2_distance(f, out, model)};
}

ShiftCounterexample shift_counterexample(int level, const std::vector<double>& g2,
                                         const std::vector<std::vector<double>>& h2,
                                         const LevyModel& model) {
    const int n_cells = 1 << level;
    if (static_cast<int>(g2.size()) != n_cells)
        throw IndexOutOfRange("shift_counterexample: g2 needs one entry per grid distance");
    for (int k = 1; k < n_cells; ++k)
        if (std::abs(g2[k] - g2[n_cells - k]) > 1e-12)
            throw BadSymmetry("shift_counterexample: g2 violates the half-symmetry");
    const int states = model.state_count();
    if (static_cast<int>(h2.size()) != states)
        throw ModelMismatch("shift_counterexample: h2 must be states x states");
    for (const auto& row : h2)
        if (static_cast<int>(row.size()) != states)
            throw ModelMismatch("shift_counterexample: h2 must be states x states");
    for (int a = 0; a < states; ++a)
        for (int b = 0; b < states; ++b)
            if (std::abs(h2[a][b] - h2[b][a]) > 1e-12)
                throw BadSymmetry("shift_counterexample: h2 must be symmetric");

    GridKernel kernel(2, level, states);
    for (int c1 = 0; c1 < n_cells; ++c1)
        for (int c2 = 0; c2 < n_cells; ++c2) {
            if (c1 == c2) continue;
            for (int a = 0; a < states; ++a)
                for (int b = 0; b < states; ++b) {
                    const double v = g2[std::abs(c1 - c2)] * h2[a][b];
                    if (v != 0.0) kernel.set(CellTuple{{c1, a}, {c2, b}}, v);
                }
        }

    GroupSpec shifts;
    for (int d = 1; d <= level; ++d) shifts.generators.push_back(DyadicMap::periodic_shift(d));
    const CellSet full{0, {0}};
    GroupSpec full_group{restricted_group_generators(full, level), std::size_t{1} << 20};

    ShiftCounterexample result{kernel, is_invariant(kernel, shifts, 1e-12),
                               is_invariant(kernel, full_group, 1e-12), 0.0};
    result.projection_residual = l2_distance(kernel, orbit_project(kernel, full_group), model);
    return result;
}

}  // namespace chaoskit
