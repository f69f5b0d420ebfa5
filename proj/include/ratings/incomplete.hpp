#pragma once

#include "ratings/barycenter.hpp"
#include "ratings/rating_data.hpp"

namespace ratings {

/// Per-user equal-weight distribution over that user's own ratings.
std::vector<EmpiricalDistribution> user_empirical_distributions(const SparseRatings& data);

/// Primitive scores for sparse data: the barycenter is built from all n
/// users' empirical distributions, and each item averages only over its
/// raters N_x.
ScoreTable incomplete_primitive_scores(const SparseRatings& data);

/// Final scores for sparse data: primitive scores rescaled onto the
/// barycenter of the empirical user distributions.
ScoreTable incomplete_rating_scores(const SparseRatings& data);

struct IncompleteEstimatorBundle {
    ScoreTable average;  // plain mean over each item's raters
    ScoreTable primitive;
    ScoreTable rating;
    Barycenter barycenter;
};

IncompleteEstimatorBundle incomplete_estimate_all(const SparseRatings& data);

}  // namespace ratings
