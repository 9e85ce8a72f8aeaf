#include "chaoskit/teugels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace chaoskit {

namespace {

double mu_inner(const LevyModel& model, const std::vector<double>& a,
                const std::vector<double>& b) {
    double sum = 0.0;
    for (int s = 0; s < model.state_count(); ++s) sum += a[s] * b[s] * model.state_weight(s);
    return sum;
}

}  // namespace

OrthoBasis build_basis(const LevyModel& model) {
    const int dim = model.state_count();
    OrthoBasis basis;

    std::vector<double> monomial(dim, 1.0);    // x^j evaluated on the states
    std::vector<double> coeff_template{1.0};   // coefficients of x^j
    double scale = 0.0;
    for (int s = 0; s < dim; ++s) scale = std::max(scale, model.state_weight(s));

    for (int j = 0; j < dim; ++j) {
        std::vector<double> values = monomial;
        std::vector<double> coeffs(j + 1, 0.0);
        coeffs[j] = 1.0;

        // Modified Gram-Schmidt with one re-orthogonalization pass.
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i < basis.size(); ++i) {
                const double c = mu_inner(model, values, basis.values[i]) / basis.norms_sq[i];
                for (int s = 0; s < dim; ++s) values[s] -= c * basis.values[i][s];
                for (std::size_t m = 0; m < basis.coeffs[i].size(); ++m)
                    coeffs[m] -= c * basis.coeffs[i][m];
            }
        }
        const double q = mu_inner(model, values, values);
        if (q > 1e-12 * scale) {
            basis.values.push_back(std::move(values));
            basis.coeffs.push_back(std::move(coeffs));
            basis.norms_sq.push_back(q);
        }

        for (int s = 0; s < dim; ++s) monomial[s] *= model.state_x(s);
    }
    return basis;
}

double SimplexTransform::get(const std::vector<int>& index,
                             const CellTuple& increasing_cells) const {
    auto comp = components.find(index);
    if (comp == components.end()) return 0.0;
    auto it = comp->second.find(increasing_cells);
    return it == comp->second.end() ? 0.0 : it->second;
}

SimplexTransform ns_transform(const GridKernel& f, const OrthoBasis& basis,
                              const LevyModel& model) {
    f.check_compatible(model);
    for (double q : basis.norms_sq)
        if (q <= 0.0) throw DegenerateBasis("ns_transform: basis carries a zero norm");
    const int n = f.degree();
    double factorial = 1.0;
    for (int i = 1; i <= n; ++i) factorial *= i;

    SimplexTransform out;
    out.n = n;
    out.level = f.level();

    // Symmetry of f makes any slot order carry the same information, so only
    // strictly increasing cell tuples are visited (each once).
    std::set<CellTuple> cell_sets;
    for (const auto& [t, v] : f.entries()) {
        if (!t.cells_strictly_increasing()) continue;
        CellTuple cells_only;
        for (int i = 0; i < n; ++i) cells_only.push_back(t.cell(i), 0);
        cell_sets.insert(cells_only);
    }

    const int states = model.state_count();
    for (const auto& cells_only : cell_sets) {
        // Gather the state section of f over this time tuple.
        std::vector<std::vector<int>> atom_combos;
        std::vector<double> section;
        {
            std::vector<int> atoms(n, 0);
            CellTuple probe = cells_only;
            while (true) {
                for (int i = 0; i < n; ++i) probe.set_atom(i, atoms[i]);
                const double fv = f.get(probe);
                if (fv != 0.0) {
                    atom_combos.push_back(atoms);
                    section.push_back(fv);
                }
                int slot = n - 1;
                while (slot >= 0 && ++atoms[slot] == states) atoms[slot--] = 0;
                if (slot < 0) break;
            }
        }
        if (section.empty()) continue;

        std::vector<int> index(n, 0);
        while (true) {
            double sum = 0.0;
            for (std::size_t e = 0; e < section.size(); ++e) {
                double prod = section[e];
                for (int i = 0; i < n; ++i) {
                    const int a = atom_combos[e][i];
                    prod *= basis.values[index[i]][a] * model.state_weight(a) /
                            basis.norms_sq[index[i]];
                }
                sum += prod;
            }
            if (sum != 0.0) out.components[index][cells_only] = factorial * sum;
            int slot = n - 1;
            while (slot >= 0 && ++index[slot] == basis.size()) index[slot--] = 0;
            if (slot < 0) break;
        }
    }
    return out;
}

double ns_parseval_residual(const GridKernel& f, const OrthoBasis& basis,
                            const LevyModel& model) {
    const int n = f.degree();
    double factorial = 1.0;
    for (int i = 1; i <= n; ++i) factorial *= i;
    const double lhs = factorial * l2_norm_sq(f, model);

    const SimplexTransform transform = ns_transform(f, basis, model);
    const double cell_volume = 1.0 / static_cast<double>(std::size_t{1} << f.level());
    double rhs = 0.0;
    for (const auto& [index, kernel] : transform.components) {
        double q_prod = 1.0;
        for (int i : index) q_prod *= basis.norms_sq[i];
        double norm = 0.0;
        for (const auto& [cells, value] : kernel) norm += value * value;
        rhs += q_prod * norm * std::pow(cell_volume, n);
    }
    return std::abs(lhs - rhs);
}

double ns_covariance_residual(const GridKernel& f, const OrthoBasis& basis, const DyadicMap& g,
                              const LevyModel& model) {
    const int n = f.degree();
    const SimplexTransform lhs = ns_transform(f, basis, model);
    const SimplexTransform rhs = ns_transform(pullback(f, g), basis, model);
    const auto images = g.refine(f.level());

    double residual = 0.0;
    // Iterate strictly increasing tuples through the rhs component supports
    // plus all index tuples; compare against the lhs at the sorted images.
    std::vector<CellTuple> increasing;
    {
        CellTuple t;
        auto rec = [&](auto&& self, int slot, int min_cell) -> void {
            if (slot == n) {
                increasing.push_back(t);
                return;
            }
            for (int c = min_cell; c < f.cell_count(); ++c) {
                t.push_back(c, 0);
                self(self, slot + 1, c + 1);
                t = t.without_slot(slot);
            }
        };
        rec(rec, 0, 0);
    }

    std::vector<int> index(n, 0);
    while (true) {
        for (const auto& t : increasing) {
            // sigma sorts the image cells ascending.
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                return images[t.cell(a)] < images[t.cell(b)];
            });
            CellTuple sorted_images;
            for (int m = 0; m < n; ++m)
                sorted_images.push_back(static_cast<int>(images[t.cell(order[m])]), 0);
            std::vector<int> permuted_index(n);
            std::vector<int> sigma_inv(n);
            for (int m = 0; m < n; ++m) sigma_inv[order[m]] = m;
            for (int j = 0; j < n; ++j) permuted_index[j] = index[sigma_inv[j]];

            const double a = lhs.get(index, sorted_images);
            const double b = rhs.get(permuted_index, t);
            residual = std::max(residual, std::abs(a - b));
        }
        int slot = n - 1;
        while (slot >= 0 && ++index[slot] == basis.size()) index[slot--] = 0;
        if (slot < 0) break;
    }
    return residual;
}

}  // namespace chaoskit
