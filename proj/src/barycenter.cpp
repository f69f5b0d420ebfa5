#include "ratings/barycenter.hpp"

#include <algorithm>
#include <stdexcept>

namespace ratings {

QuantileGrid frechet_quantile_grid(std::span<const EmpiricalDistribution> dists) {
    if (dists.empty()) {
        throw std::invalid_argument("frechet_mean: empty distribution list");
    }

    std::vector<double> levels;
    std::size_t total = 0;
    for (const auto& d : dists) total += d.atom_count();
    levels.reserve(total);
    for (const auto& d : dists) {
        const auto cw = d.cum_weights();
        levels.insert(levels.end(), cw.begin(), cw.end());
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    const auto n_levels = static_cast<std::ptrdiff_t>(levels.size());
    std::vector<double> values(levels.size(), 0.0);
    const double n = static_cast<double>(dists.size());
    // Each level is independent; the inner sum runs in fixed source order so
    // the result does not depend on the thread count.
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t li = 0; li < n_levels; ++li) {
        const double p = levels[static_cast<std::size_t>(li)];
        double s = 0.0;
        for (const auto& d : dists) s += d.quantile_clamped(p);
        values[static_cast<std::size_t>(li)] = s / n;
    }
    return QuantileGrid(std::move(levels), std::move(values));
}

Barycenter frechet_mean(std::span<const EmpiricalDistribution> dists) {
    return {frechet_quantile_grid(dists).materialize(), dists.size()};
}

double frechet_functional(const EmpiricalDistribution& candidate,
                          std::span<const EmpiricalDistribution> dists) {
    if (dists.empty()) {
        throw std::invalid_argument("frechet_functional: empty distribution list");
    }
    double acc = 0.0;
    for (const auto& d : dists) {
        const double w = w2_distance(d, candidate);
        acc += w * w;
    }
    return acc / static_cast<double>(dists.size());
}

}  // namespace ratings
