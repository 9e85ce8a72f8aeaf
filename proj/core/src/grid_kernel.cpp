#include "chaoskit/grid_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace chaoskit {

void GridKernel::validate(const CellTuple& t) const {
    if (t.degree() != degree_) throw IndexOutOfRange("GridKernel: tuple degree mismatch");
    for (int i = 0; i < t.degree(); ++i) {
        if (t.cell(i) >= cell_count())
            throw IndexOutOfRange("GridKernel: cell index outside the grid");
        if (t.atom(i) >= atom_count_) throw UnknownAtom("GridKernel: atom index out of range");
    }
    if (t.has_repeated_cell())
        throw IndexOutOfRange("GridKernel: diagonal tuples carry no value");
}

void GridKernel::set(const CellTuple& t, double v) {
    validate(t);
    if (v == 0.0)
        values_.erase(t);
    else
        values_[t] = v;
}

void GridKernel::add(const CellTuple& t, double v) {
    validate(t);
    auto [it, fresh] = values_.emplace(t, v);
    if (!fresh) {
        it->second += v;
        if (it->second == 0.0) values_.erase(it);
    }
}

ChaosVector ChaosVector::zero(int n_max, int level, int atom_count) {
    ChaosVector cv;
    for (int n = 1; n <= n_max; ++n) cv.kernels.emplace_back(n, level, atom_count);
    return cv;
}

int ChaosVector::level() const {
    return kernels.empty() ? 0 : kernels.front().level();
}

int ChaosVector::atom_count() const {
    return kernels.empty() ? 1 : kernels.front().atom_count();
}

ChaosVector& ChaosVector::operator+=(const ChaosVector& other) {
    constant += other.constant;
    for (std::size_t i = 0; i < other.kernels.size(); ++i) {
        if (i >= kernels.size())
            kernels.emplace_back(static_cast<int>(i) + 1, other.kernels[i].level(),
                                 other.kernels[i].atom_count());
        for (const auto& [t, v] : other.kernels[i].entries()) kernels[i].add(t, v);
    }
    return *this;
}

ChaosVector& ChaosVector::operator*=(double factor) {
    constant *= factor;
    for (auto& k : kernels) {
        GridKernel scaled(k.degree(), k.level(), k.atom_count());
        for (const auto& [t, v] : k.entries()) scaled.set(t, v * factor);
        k = std::move(scaled);
    }
    return *this;
}

double l2_norm_sq(const GridKernel& f, const LevyModel& model) {
    f.check_compatible(model);
    double sum = 0.0;
    for (const auto& [t, v] : f.entries()) {
        double w = 1.0;
        for (int i = 0; i < t.degree(); ++i) w *= model.cell_state_measure(f.level(), t.atom(i));
        sum += v * v * w;
    }
    return sum;
}

GridKernel symmetrize(const GridKernel& f) {
    GridKernel out(f.degree(), f.level(), f.atom_count());
    const int n = f.degree();
    std::vector<int> perm(n);
    double factorial = 1.0;
    for (int i = 1; i <= n; ++i) factorial *= i;
    for (const auto& [t, v] : f.entries()) {
        std::iota(perm.begin(), perm.end(), 0);
        do {
            out.add(t.permuted(perm), v / factorial);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

GridKernel pullback(const GridKernel& f, const DyadicMap& g) {
    if (f.level() < g.degree()) throw LevelTooCoarse("pullback: kernel level below deg(g)");
    const auto inv_images = g.inverse().refine(f.level());
    GridKernel out(f.degree(), f.level(), f.atom_count());
    for (const auto& [t, v] : f.entries()) out.set(diagonal_apply(inv_images, t), v);
    return out;
}

GridKernel tensor(const GridKernel& f, const GridKernel& h) {
    if (f.level() != h.level() || f.atom_count() != h.atom_count())
        throw ModelMismatch("tensor: kernels live on different grids");
    GridKernel out(f.degree() + h.degree(), f.level(), f.atom_count());
    for (const auto& [tf, vf] : f.entries())
        for (const auto& [th, vh] : h.entries()) {
            const CellTuple joined = tf.concat(th);
            if (joined.has_repeated_cell()) continue;
            out.add(joined, vf * vh);
        }
    return out;
}

namespace {

// Splits an entry tuple into consecutive groups of the given sizes.
std::vector<CellTuple> split_tuple(const CellTuple& t, const std::vector<int>& sizes) {
    std::vector<CellTuple> parts(sizes.size());
    int pos = 0;
    for (std::size_t p = 0; p < sizes.size(); ++p)
        for (int i = 0; i < sizes[p]; ++i, ++pos) parts[p].push_back(t.cell(pos), t.atom(pos));
    return parts;
}

}  // namespace

ContractionResult contraction(const GridKernel& f, const GridKernel& h, int k, int r,
                              const LevyModel& model) {
    f.check_compatible(model);
    h.check_compatible(model);
    if (f.level() != h.level())
        throw ModelMismatch("contraction: kernels live on different grids");
    const int n = f.degree(), m = h.degree();
    if (k < 0 || r < 0 || k > std::min(n, m) || r > std::min(n, m) - k)
        throw IndexOutOfRange("contraction: invalid (k, r) pair");
    const int out_degree = n + m - 2 * k - r;

    // h indexed by its leading (rho, gamma) block.
    std::map<std::pair<CellTuple, CellTuple>, std::vector<std::pair<CellTuple, double>>> h_index;
    for (const auto& [t, v] : h.entries()) {
        auto parts = split_tuple(t, {k, r, m - k - r});
        h_index[{parts[0], parts[1]}].emplace_back(parts[2], v);
    }

    std::map<CellTuple, double> kept, dropped;
    double scalar = 0.0;
    for (const auto& [t, vf] : f.entries()) {
        auto parts = split_tuple(t, {n - k - r, r, k});
        const CellTuple &alpha = parts[0], &gamma = parts[1], &rho = parts[2];
        auto hit = h_index.find({rho, gamma});
        if (hit == h_index.end()) continue;
        double weight = 1.0;
        for (int i = 0; i < k; ++i) weight *= model.cell_state_measure(f.level(), rho.atom(i));
        for (int i = 0; i < r; ++i) weight *= model.state_x(gamma.atom(i));
        if (weight == 0.0) continue;
        for (const auto& [beta, vh] : hit->second) {
            const double term = vf * vh * weight;
            if (out_degree == 0) {
                scalar += term;
                continue;
            }
            const CellTuple out = alpha.concat(beta).concat(gamma);
            auto& slot = out.has_repeated_cell() ? dropped : kept;
            slot[out] += term;
        }
    }

    ContractionResult result{GridKernel(std::max(out_degree, 1), f.level(), f.atom_count()),
                             scalar, 0.0};
    if (out_degree > 0)
        for (const auto& [t, v] : kept) result.kernel.set(t, v);
    for (const auto& [t, v] : dropped) {
        double w = 1.0;
        for (int i = 0; i < t.degree(); ++i) w *= model.cell_state_measure(f.level(), t.atom(i));
        result.dropped_mass_sq += v * v * w;
    }
    return result;
}

double inner_product(const GridKernel& f, const GridKernel& h, const LevyModel& model) {
    if (f.degree() != h.degree()) throw ModelMismatch("inner_product: degree mismatch");
    f.check_compatible(model);
    double sum = 0.0;
    for (const auto& [t, v] : f.entries()) {
        const double other = h.get(t);
        if (other == 0.0) continue;
        double w = 1.0;
        for (int i = 0; i < t.degree(); ++i) w *= model.cell_state_measure(f.level(), t.atom(i));
        sum += v * other * w;
    }
    return sum;
}

GridKernel orbit_project(const GridKernel& f, const GroupSpec& group) {
    if (group.generators.empty()) throw EmptySet("orbit_project: no generators");
    if (f.level() < group.degree())
        throw LevelTooCoarse("orbit_project: kernel level below group degree");
    enumerate_closure(group);  // desk-scale guard on the group size

    std::vector<std::vector<std::uint32_t>> images;
    images.reserve(group.generators.size());
    for (const auto& g : group.generators) images.push_back(g.refine(f.level()));

    GridKernel out(f.degree(), f.level(), f.atom_count());
    std::set<CellTuple> visited;
    for (const auto& [seed, unused] : f.entries()) {
        (void)unused;
        if (visited.count(seed)) continue;
        // Orbit of the support tuple under generator moves; members outside
        // the support contribute zero to the average but count in the size.
        std::vector<CellTuple> orbit{seed};
        std::set<CellTuple> in_orbit{seed};
        for (std::size_t head = 0; head < orbit.size(); ++head) {
            for (const auto& img : images) {
                const CellTuple moved = diagonal_apply(img, orbit[head]);
                if (in_orbit.insert(moved).second) orbit.push_back(moved);
            }
        }
        double sum = 0.0;
        for (const auto& t : orbit) sum += f.get(t);
        const double avg = sum / static_cast<double>(orbit.size());
        for (const auto& t : orbit) {
            visited.insert(t);
            if (avg != 0.0) out.set(t, avg);
        }
    }
    return out;
}

bool is_invariant(const GridKernel& f, const GroupSpec& group, double tol) {
    for (const auto& g : group.generators) {
        if (f.level() < g.degree())
            throw LevelTooCoarse("is_invariant: kernel level below generator degree");
        const GridKernel moved = pullback(f, g);
        for (const auto& [t, v] : f.entries())
            if (std::abs(v - moved.get(t)) > tol) return false;
        for (const auto& [t, v] : moved.entries())
            if (std::abs(v - f.get(t)) > tol) return false;
    }
    return true;
}

std::vector<int> Partition::block_of_cell() const {
    std::vector<int> owner(std::size_t{1} << level, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (auto c : blocks[b]) {
            if (c >= owner.size()) throw IndexOutOfRange("Partition: cell outside the grid");
            if (owner[c] != -1) throw IndexOutOfRange("Partition: blocks overlap");
            owner[c] = static_cast<int>(b);
        }
    return owner;
}

bool is_cuboid_constant(const GridKernel& f, const Partition& partition, double tol) {
    if (partition.level != f.level())
        throw LevelMismatch("is_cuboid_constant: partition level differs from kernel level");
    const auto owner = partition.block_of_cell();

    struct Group {
        double vmin = 0.0, vmax = 0.0;
        std::size_t count = 0;
    };
    // Key: block signature per slot plus the atom tuple.
    std::map<std::pair<std::vector<int>, std::vector<int>>, Group> groups;
    for (const auto& [t, v] : f.entries()) {
        std::vector<int> signature(t.degree());
        bool inside = true;
        for (int i = 0; i < t.degree() && inside; ++i) {
            signature[i] = owner[t.cell(i)];
            inside = signature[i] >= 0;
        }
        if (!inside) continue;
        auto& g = groups[{signature, t.atoms()}];
        if (g.count == 0) {
            g.vmin = g.vmax = v;
        } else {
            g.vmin = std::min(g.vmin, v);
            g.vmax = std::max(g.vmax, v);
        }
        ++g.count;
    }

    for (const auto& [key, g] : groups) {
        if (g.vmax - g.vmin > tol) return false;
        // Off-diagonal tuple count of the cuboid: a falling factorial per
        // block, since cells repeat only within a block.
        std::map<int, int> multiplicity;
        for (int b : key.first) ++multiplicity[b];
        double expected = 1.0;
        for (const auto& [b, k] : multiplicity) {
            const double s = static_cast<double>(partition.blocks[b].size());
            for (int i = 0; i < k; ++i) expected *= (s - i);
        }
        const bool all_entries_present = static_cast<double>(g.count) == expected;
        if (!all_entries_present && (std::abs(g.vmin) > tol || std::abs(g.vmax) > tol))
            return false;  // absent entries are zeros and disagree
    }
    return true;
}

GridKernel restrict_time(const GridKernel& f, int t_cell) {
    if (t_cell < 0 || t_cell > f.cell_count())
        throw IndexOutOfRange("restrict_time: boundary index out of range");
    GridKernel out(f.degree(), f.level(), f.atom_count());
    for (const auto& [t, v] : f.entries())
        if (t.max_cell() < t_cell) out.set(t, v);
    return out;
}

GridKernel dolean_kernel(int a_cell, int t_cell, int n, int level, const LevyModel& model) {
    if (a_cell >= t_cell) throw EmptyInterval("dolean_kernel: a_cell must be below t_cell");
    if (a_cell < 0 || t_cell > (1 << level))
        throw IndexOutOfRange("dolean_kernel: cell boundaries outside the grid");
    GridKernel out(n, level, model.state_count());
    double factorial = 1.0;
    for (int i = 1; i <= n; ++i) factorial *= i;
    const double value = 1.0 / factorial;

    CellTuple t;
    auto rec = [&](auto&& self, int slot) -> void {
        if (slot == n) {
            out.set(t, value);
            return;
        }
        for (int c = a_cell; c < t_cell; ++c) {
            bool used = false;
            for (int i = 0; i < slot; ++i) used |= (t.cell(i) == c);
            if (used) continue;
            for (int a = 0; a < model.state_count(); ++a) {
                t.push_back(c, a);
                self(self, slot + 1);
                t = t.without_slot(slot);
            }
        }
    };
    rec(rec, 0);
    return out;
}

double chaos_norm_sq(const ChaosVector& cv, const LevyModel& model) {
    double sum = cv.constant * cv.constant;
    double factorial = 1.0;
    for (std::size_t i = 0; i < cv.kernels.size(); ++i) {
        factorial *= static_cast<double>(i + 1);
        sum += factorial * l2_norm_sq(cv.kernels[i], model);
    }
    return sum;
}

}  // namespace chaoskit
