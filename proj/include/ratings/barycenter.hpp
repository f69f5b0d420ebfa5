#pragma once

#include <span>

#include "ratings/empirical_distribution.hpp"

namespace ratings {

/// Wasserstein-2 Frechet mean of finitely many distributions on [0,1].
/// Its quantile function is the pointwise average of the source quantile
/// functions, materialized exactly on the union of all breakpoint levels.
struct Barycenter {
    EmpiricalDistribution distribution;
    std::size_t source_count;
};

Barycenter frechet_mean(std::span<const EmpiricalDistribution> dists);

/// Averaged quantile function on the union breakpoint grid, not yet atomized.
QuantileGrid frechet_quantile_grid(std::span<const EmpiricalDistribution> dists);

/// (1/n) sum_k W2(dists[k], candidate)^2. Minimized by the Frechet mean.
double frechet_functional(const EmpiricalDistribution& candidate,
                          std::span<const EmpiricalDistribution> dists);

}  // namespace ratings
