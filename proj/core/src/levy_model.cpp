#include "chaoskit/levy_model.hpp"

#include <cmath>
#include <random>

namespace chaoskit {

LevyModel::LevyModel(double sigma, std::vector<JumpAtom> atoms)
    : sigma_(sigma), atoms_(std::move(atoms)) {
    if (sigma_ < 0.0) throw ModelMismatch("LevyModel: sigma must be >= 0");
    if (sigma_ == 0.0 && atoms_.empty())
        throw ModelMismatch("LevyModel: mu would be identically zero");
    for (std::size_t j = 0; j < atoms_.size(); ++j) {
        if (atoms_[j].x == 0.0) throw ModelMismatch("LevyModel: jump size must be nonzero");
        if (atoms_[j].lambda <= 0.0) throw ModelMismatch("LevyModel: intensity must be positive");
        for (std::size_t i = 0; i < j; ++i)
            if (atoms_[i].x == atoms_[j].x)
                throw ModelMismatch("LevyModel: jump sizes must be pairwise distinct");
    }
    if (sigma_ > 0.0) {
        weights_.push_back(sigma_ * sigma_);
        xs_.push_back(0.0);
    }
    for (const auto& a : atoms_) {
        weights_.push_back(a.lambda * a.x * a.x);
        xs_.push_back(a.x);
    }
}

double LevyModel::state_weight(int s) const {
    if (s < 0 || s >= state_count()) throw UnknownAtom("state_weight: unknown state index");
    return weights_[s];
}

double LevyModel::state_x(int s) const {
    if (s < 0 || s >= state_count()) throw UnknownAtom("state_x: unknown state index");
    return xs_[s];
}

int LevyModel::state_jump_index(int s) const {
    if (s < 0 || s >= state_count()) throw UnknownAtom("state_jump_index: unknown state index");
    return has_brownian() ? s - 1 : s;
}

std::vector<std::pair<int, double>> LevyModel::mu_weights() const {
    std::vector<std::pair<int, double>> out;
    if (has_brownian()) out.emplace_back(0, sigma_ * sigma_);
    for (std::size_t j = 0; j < atoms_.size(); ++j)
        out.emplace_back(static_cast<int>(j) + 1, atoms_[j].lambda * atoms_[j].x * atoms_[j].x);
    return out;
}

std::uint64_t path_stream_seed(std::uint64_t base_seed, std::uint64_t path_index) {
    // splitmix64 of the pair; distinct indices give well separated streams.
    std::uint64_t z = base_seed + 0x9e3779b97f4a7c15ull * (path_index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

PathSample sample_path(const LevyModel& model, int level, std::uint64_t seed) {
    const std::size_t n_cells = std::size_t{1} << level;
    PathSample path;
    path.level = level;
    path.gauss.assign(n_cells, 0.0);
    path.counts.assign(n_cells, std::vector<int>(model.atoms().size(), 0));

    std::mt19937_64 rng(seed);
    const double cell_width = 1.0 / static_cast<double>(n_cells);
    if (model.has_brownian()) {
        std::normal_distribution<double> normal(0.0, std::sqrt(cell_width));
        for (auto& g : path.gauss) g = normal(rng);
    }
    for (std::size_t j = 0; j < model.atoms().size(); ++j) {
        std::poisson_distribution<int> poisson(model.atoms()[j].lambda * cell_width);
        for (std::size_t c = 0; c < n_cells; ++c) path.counts[c][j] = poisson(rng);
    }
    return path;
}

double random_measure_eval(const LevyModel& model, const PathSample& path, int cell, int state) {
    if (cell < 0 || static_cast<std::size_t>(cell) >= path.gauss.size())
        throw IndexOutOfRange("random_measure_eval: cell out of range");
    if (state < 0 || state >= model.state_count())
        throw UnknownAtom("random_measure_eval: unknown state index");
    const int j = model.state_jump_index(state);
    if (j < 0) return model.sigma() * path.gauss[cell];
    const double compensator =
        model.atoms()[j].lambda / static_cast<double>(std::size_t{1} << path.level);
    return model.atoms()[j].x * (static_cast<double>(path.counts[cell][j]) - compensator);
}

double increment(const LevyModel& model, const PathSample& path, int first_cell, int last_cell) {
    if (first_cell < 0 || last_cell <= first_cell ||
        static_cast<std::size_t>(last_cell) > path.gauss.size())
        throw IndexOutOfRange("increment: empty or out-of-range cell range");
    double sum = 0.0;
    for (int c = first_cell; c < last_cell; ++c)
        for (int s = 0; s < model.state_count(); ++s)
            sum += random_measure_eval(model, path, c, s);
    return sum;
}

PathSample permute_path(const DyadicMap& g, const PathSample& path) {
    if (path.level < g.degree()) throw LevelTooCoarse("permute_path: path level below deg(g)");
    const auto images = g.refine(path.level);
    PathSample out;
    out.level = path.level;
    out.gauss.resize(path.gauss.size());
    out.counts.resize(path.counts.size());
    for (std::size_t c = 0; c < images.size(); ++c) {
        out.gauss[c] = path.gauss[images[c]];
        out.counts[c] = path.counts[images[c]];
    }
    return out;
}

}  // namespace chaoskit
