#include "chaoskit/bsde.hpp"

#include <cmath>

namespace chaoskit {

void AffineGenerator::check_sized(int n_cells, int n_states) const {
    if (static_cast<int>(a.size()) != n_cells || static_cast<int>(c.size()) != n_cells)
        throw ModelMismatch("AffineGenerator: a and c must have one entry per time cell");
    if (b.size() != drivers.size())
        throw ModelMismatch("AffineGenerator: one b array per driver");
    for (const auto& bk : b)
        if (static_cast<int>(bk.size()) != n_cells)
            throw ModelMismatch("AffineGenerator: b_k must have one entry per time cell");
    for (const auto& h : drivers)
        if (static_cast<int>(h.size()) != n_states)
            throw ModelMismatch("AffineGenerator: h_k must have one entry per state");
}

ZField ZField::zero(int n_max, int level, int states, int atom_count) {
    ZField field;
    field.level = level;
    field.states = states;
    field.z.assign(std::size_t{1} << level,
                   std::vector<ChaosVector>(states, ChaosVector::zero(n_max, level, atom_count)));
    return field;
}

ZField martingale_repr(const ChaosVector& F) {
    const int level = F.level();
    const int states = F.atom_count();
    const int n_max = F.max_degree();
    ZField field = ZField::zero(std::max(n_max - 1, 0), level, states, states);

    for (int n = 1; n <= n_max; ++n) {
        const GridKernel& f_n = F.kernels[n - 1];
        for (const auto& [t, v] : f_n.entries()) {
            // Use the entries whose last slot is the newest cell; symmetry of
            // f_n makes them cover each reduced tuple exactly once.
            const int s = t.cell(n - 1);
            if (t.max_cell() != s) continue;
            bool strictly_newest = true;
            for (int i = 0; i + 1 < n; ++i) strictly_newest &= (t.cell(i) < s);
            if (!strictly_newest) continue;
            const int x = t.atom(n - 1);
            ChaosVector& target = field.z[s][x];
            if (n == 1)
                target.constant += v;
            else
                target.kernels[n - 2].add(t.without_slot(n - 1), n * v);
        }
    }
    return field;
}

double repr_residual(const ChaosVector& F, const ZField& Z, const PathSample& path,
                     const LevyModel& model) {
    double reconstructed = F.constant;
    for (std::size_t s = 0; s < Z.z.size(); ++s)
        for (int x = 0; x < Z.states; ++x) {
            const double m = random_measure_eval(model, path, static_cast<int>(s), x);
            if (m != 0.0) reconstructed += evaluate_chaos(path, Z.z[s][x], model) * m;
        }
    return std::abs(reconstructed - evaluate_chaos(path, F, model));
}

PicardState PicardState::zero(int n_max, int level, int states, int atom_count) {
    PicardState st;
    st.y.assign((std::size_t{1} << level) + 1, ChaosVector::zero(n_max, level, atom_count));
    st.z = ZField::zero(std::max(n_max - 1, 0), level, states, atom_count);
    return st;
}

namespace {

// Restriction of every kernel (and the full vector) to cells < t_cell; the
// grid form of conditioning on F_t.
ChaosVector condition(const ChaosVector& cv, int t_cell) {
    ChaosVector out = cv;
    for (auto& k : out.kernels) k = restrict_time(k, t_cell);
    return out;
}

// The generator value at the left endpoint of cell s, as a chaos vector.
ChaosVector generator_at(const AffineGenerator& gen, const PicardState& prev,
                         const LevyModel& model, int s, int n_max) {
    const int level = prev.z.level;
    ChaosVector value = ChaosVector::zero(n_max, level, prev.y[s].atom_count());
    value.constant = gen.c[s];
    if (gen.a[s] != 0.0) value += gen.a[s] * prev.y[s];
    for (std::size_t k = 0; k < gen.drivers.size(); ++k) {
        if (gen.b[k][s] == 0.0) continue;
        ChaosVector z_proj = ChaosVector::zero(n_max, level, prev.y[s].atom_count());
        for (int x = 0; x < prev.z.states; ++x) {
            const double w = gen.drivers[k][x] * model.state_weight(x);
            if (w != 0.0) z_proj += w * prev.z.z[s][x];
        }
        value += gen.b[k][s] * z_proj;
    }
    return value;
}

}  // namespace

PicardState picard_step(const ChaosVector& F, const AffineGenerator& gen,
                        const PicardState& prev, const LevyModel& model) {
    const int level = F.level();
    const int n_cells = 1 << level;
    const int n_max = F.max_degree();
    gen.check_sized(n_cells, model.state_count());
    if (static_cast<int>(prev.y.size()) != n_cells + 1)
        throw LevelMismatch("picard_step: state sized for a different grid");

    const double dt = 1.0 / static_cast<double>(n_cells);
    std::vector<ChaosVector> gen_values;
    gen_values.reserve(n_cells);
    for (int s = 0; s < n_cells; ++s)
        gen_values.push_back(generator_at(gen, prev, model, s, n_max));

    PicardState next = PicardState::zero(n_max, level, model.state_count(), F.atom_count());

    // Y'_t = restrict(F + sum_{s >= t} gen_s dt, t), built from the top down
    // so each time point adds one more cell of the integral.
    ChaosVector running = F;
    next.y[n_cells] = condition(running, n_cells);
    for (int t = n_cells - 1; t >= 0; --t) {
        running += dt * gen_values[t];
        next.y[t] = condition(running, t);
    }

    // Z' represents the full-horizon integrand F + int_0^1 gen ds.
    next.z = martingale_repr(running);
    return next;
}

namespace {

double state_distance(const PicardState& a, const PicardState& b, const LevyModel& model) {
    double dist = 0.0;
    for (std::size_t t = 0; t < a.y.size(); ++t) {
        ChaosVector diff = a.y[t];
        diff += -1.0 * b.y[t];
        dist = std::max(dist, std::sqrt(chaos_norm_sq(diff, model)));
    }
    for (std::size_t s = 0; s < a.z.z.size(); ++s)
        for (int x = 0; x < a.z.states; ++x) {
            ChaosVector diff = a.z.z[s][x];
            diff += -1.0 * b.z.z[s][x];
            dist = std::max(dist, std::sqrt(chaos_norm_sq(diff, model)));
        }
    return dist;
}

}  // namespace

std::pair<PicardState, PicardHistory> picard_solve(const ChaosVector& F,
                                                   const AffineGenerator& gen, int iterations,
                                                   double tol, const LevyModel& model) {
    PicardState state =
        PicardState::zero(F.max_degree(), F.level(), model.state_count(), F.atom_count());
    PicardHistory history;
    for (int it = 0; it < iterations; ++it) {
        PicardState next = picard_step(F, gen, state, model);
        const double dist = state_distance(next, state, model);
        history.distances.push_back(dist);
        state = std::move(next);
        if (dist <= tol) {
            history.converged = true;
            break;
        }
    }
    return {std::move(state), std::move(history)};
}

namespace {

// The partition restricted to cells < t_cell, dropping emptied blocks.
Partition restrict_partition(const Partition& partition, int t_cell) {
    Partition out;
    out.level = partition.level;
    for (const auto& block : partition.blocks) {
        std::vector<std::uint32_t> cut;
        for (auto c : block)
            if (static_cast<int>(c) < t_cell) cut.push_back(c);
        if (!cut.empty()) out.blocks.push_back(std::move(cut));
    }
    return out;
}

}  // namespace

PropagationReport invariance_propagation_check(const ChaosVector& F, const AffineGenerator& gen,
                                               const Partition& partition, int iterations,
                                               const LevyModel& model, double tol) {
    const int n_cells = 1 << F.level();
    PropagationReport report;
    report.iterations = iterations;

    PicardState state =
        PicardState::zero(F.max_degree(), F.level(), model.state_count(), F.atom_count());
    for (int it = 1; it <= iterations; ++it) {
        state = picard_step(F, gen, state, model);
        for (int t = 0; t <= n_cells; ++t) {
            const Partition sub = restrict_partition(partition, t);
            for (const auto& kernel : state.y[t].kernels)
                if (!is_cuboid_constant(kernel, sub, tol))
                    report.failures.push_back({it, t, kernel.degree(), false});
        }
        for (int s = 0; s < n_cells; ++s) {
            const Partition sub = restrict_partition(partition, s);
            for (int x = 0; x < state.z.states; ++x)
                for (const auto& kernel : state.z.z[s][x].kernels)
                    if (!is_cuboid_constant(kernel, sub, tol))
                        report.failures.push_back({it, s, kernel.degree(), true});
        }
    }
    report.all_pass = report.failures.empty();
    return report;
}

}  // namespace chaoskit
