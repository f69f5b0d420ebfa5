#pragma once

#include <span>

#include "ratings/barycenter.hpp"
#include "ratings/empirical_distribution.hpp"
#include "ratings/rating_data.hpp"

namespace ratings {

/// Per-user empirical rating distributions (one per row, equal weights).
std::vector<EmpiricalDistribution> user_distributions(const CompleteRatings& data);

/// Equal-weights average per item.
ScoreTable average_scores(const CompleteRatings& data);

/// Primitive aggregate rating: each user's rating transported onto the
/// barycenter scale, averaged per item.
ScoreTable primitive_scores(const CompleteRatings& data);

/// Final rating: primitive scores rescaled from their own distribution back
/// onto the barycenter via the monotone transport map.
ScoreTable rating_scores(const CompleteRatings& data);

/// All three score tables from one pass over the shared barycenter.
struct EstimatorBundle {
    ScoreTable average;
    ScoreTable primitive;
    ScoreTable rating;
    Barycenter barycenter;
};

EstimatorBundle estimate_all(const CompleteRatings& data);

/// Split of the L2(mu) estimation error into a scale term (Wasserstein
/// distance of the pushforward from mu) and an order term (distance of the
/// mu-preserving rearrangement from the identity).
struct LossDecomposition {
    double total;
    double scale_term;
    double order_term;
};

/// mu must be the equal-weight distribution on the (distinct) truth values;
/// `truth` is aligned with estimated.item_ids.
LossDecomposition loss_decomposition(const ScoreTable& estimated,
                                     std::span<const double> truth,
                                     const EmpiricalDistribution& mu);

/// The mu-preserving rearrangement realized by ranking: atom j (in truth
/// order) maps to the atom whose rank equals the rank of the estimate at
/// atom j, ties broken by atom order. Returned per item, aligned with truth.
std::vector<double> loss_rearrangement(std::span<const double> estimated,
                                       std::span<const double> truth);

/// sqrt of the equal-weight mean squared error; the L2(mu) loss for an
/// atomic mu with equal weights on distinct atoms.
double l2_loss(std::span<const double> estimated, std::span<const double> truth);

namespace kernels {

/// Core of primitive_scores: sum_k of the barycenter quantile at user k's CDF
/// value, per item, divided by n. Parallel over items.
std::vector<double> transported_item_means(
    const CompleteRatings& data, std::span<const EmpiricalDistribution> dists,
    const EmpiricalDistribution& barycenter);

}  // namespace kernels

}  // namespace ratings
