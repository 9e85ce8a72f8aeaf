#include "chaoskit/chaos_mc.hpp"

#include <cmath>

namespace chaoskit {

double multiple_integral(const PathSample& path, const GridKernel& f, const LevyModel& model) {
    if (path.level != f.level())
        throw LevelMismatch("multiple_integral: path and kernel level differ");
    f.check_compatible(model);
    double sum = 0.0;
    for (const auto& [t, v] : f.entries()) {
        double prod = v;
        for (int i = 0; i < t.degree() && prod != 0.0; ++i)
            prod *= random_measure_eval(model, path, t.cell(i), t.atom(i));
        sum += prod;
    }
    return sum;
}

double evaluate_chaos(const PathSample& path, const ChaosVector& cv, const LevyModel& model) {
    double sum = cv.constant;
    for (const auto& k : cv.kernels) sum += multiple_integral(path, k, model);
    return sum;
}

double verify_diagram(const GridKernel& f, const DyadicMap& g, const PathSample& path,
                      const LevyModel& model) {
    const double lhs = multiple_integral(path, pullback(f, g.inverse()), model);
    const double rhs = multiple_integral(permute_path(g, path), f, model);
    return std::abs(lhs - rhs);
}

McReport isometry_check(const GridKernel& f, const LevyModel& model, std::size_t samples,
                        std::uint64_t seed) {
    const GridKernel sym = symmetrize(f);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const PathSample path = sample_path(model, f.level(), path_stream_seed(seed, i));
        const double value = multiple_integral(path, sym, model);
        const double sq = value * value;
        sum += sq;
        sum_sq += sq * sq;
    }
    McReport report;
    report.samples = samples;
    report.seed = seed;
    report.estimate = sum / static_cast<double>(samples);
    const double var =
        std::max(0.0, sum_sq / static_cast<double>(samples) - report.estimate * report.estimate);
    report.std_error = std::sqrt(var / static_cast<double>(samples));
    return report;
}

namespace {

// All supports with strictly increasing cells and arbitrary atoms.
void enumerate_supports(int n, int n_cells, int atom_count, std::vector<CellTuple>& out) {
    CellTuple t;
    auto rec = [&](auto&& self, int slot, int min_cell) -> void {
        if (slot == n) {
            out.push_back(t);
            return;
        }
        for (int c = min_cell; c < n_cells; ++c)
            for (int a = 0; a < atom_count; ++a) {
                t.push_back(c, a);
                self(self, slot + 1, c + 1);
                t = t.without_slot(slot);
            }
    };
    rec(rec, 0, 0);
}

}  // namespace

ChaosExtraction chaos_coefficients(const LevyModel& model,
                                   const std::function<double(const PathSample&)>& functional,
                                   int n_max, int level, std::size_t samples, std::uint64_t seed) {
    if (samples < 2) throw IndexOutOfRange("chaos_coefficients: need at least two samples");
    const int n_cells = 1 << level;

    // Basis bookkeeping: per support S the per-path statistic is
    //   F * prod_{(c,a) in S} M(c,a) / (n! * mm(S)),
    // whose expectation is the kernel value on S. Orthogonality of distinct
    // supports and of distinct degrees is exact on the off-diagonal grid.
    std::vector<CellTuple> supports;
    std::vector<double> scale;  // 1 / (n! * mm weight)
    std::vector<std::size_t> degree_offset(n_max + 2, 0);
    for (int n = 1; n <= n_max; ++n) {
        degree_offset[n] = supports.size();
        enumerate_supports(n, n_cells, model.state_count(), supports);
        degree_offset[n + 1] = supports.size();
    }
    scale.resize(supports.size());
    for (std::size_t i = 0; i < supports.size(); ++i) {
        const auto& s = supports[i];
        double factorial = 1.0, weight = 1.0;
        for (int j = 1; j <= s.degree(); ++j) factorial *= j;
        for (int j = 0; j < s.degree(); ++j) weight *= model.cell_state_measure(level, s.atom(j));
        scale[i] = 1.0 / (factorial * weight);
    }

    std::vector<double> sum(supports.size(), 0.0), sum_sq(supports.size(), 0.0);
    double f0_sum = 0.0, f0_sum_sq = 0.0;
    for (std::size_t p = 0; p < samples; ++p) {
        const PathSample path = sample_path(model, level, path_stream_seed(seed, p));
        const double f_value = functional(path);
        f0_sum += f_value;
        f0_sum_sq += f_value * f_value;
        for (std::size_t i = 0; i < supports.size(); ++i) {
            const auto& s = supports[i];
            double prod = f_value * scale[i];
            for (int j = 0; j < s.degree() && prod != 0.0; ++j)
                prod *= random_measure_eval(model, path, s.cell(j), s.atom(j));
            sum[i] += prod;
            sum_sq[i] += prod * prod;
        }
    }

    const double inv_n = 1.0 / static_cast<double>(samples);
    auto std_error = [&](double s1, double s2) {
        const double mean = s1 * inv_n;
        const double var = std::max(0.0, s2 * inv_n - mean * mean);
        return std::sqrt(var * inv_n);
    };

    ChaosExtraction out;
    out.samples = samples;
    out.seed = seed;
    out.vector = ChaosVector::zero(n_max, level, model.state_count());
    out.vector.constant = f0_sum * inv_n;
    out.constant_std_error = std_error(f0_sum, f0_sum_sq);
    out.coefficients.reserve(supports.size());
    std::vector<int> perm;
    for (std::size_t i = 0; i < supports.size(); ++i) {
        CoefficientEstimate est;
        est.support = supports[i];
        est.estimate = sum[i] * inv_n;
        est.std_error = std_error(sum[i], sum_sq[i]);
        out.coefficients.push_back(est);
        if (est.estimate != 0.0) {
            GridKernel& kernel = out.vector.kernels[supports[i].degree() - 1];
            perm.resize(supports[i].degree());
            std::iota(perm.begin(), perm.end(), 0);
            do {
                kernel.set(supports[i].permuted(perm), est.estimate);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
    return out;
}

}  // namespace chaoskit
