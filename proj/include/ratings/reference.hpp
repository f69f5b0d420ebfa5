#pragma once

#include "ratings/rating_data.hpp"

namespace ratings::reference {

/// Serial implementations that follow the defining formulas directly, with no
/// shared barycenter and no parallelism. They are the comparison baseline for
/// the production kernels in tests and in the benchmark tool.

/// Primitive rating by the literal double sum: per item with ratings r_1..r_n,
/// (1/n^2) sum_k sum_j F_j^-1(F_k(r_k)).
ScoreTable primitive_scores(const CompleteRatings& data);

/// Final rating by the literal rescaling: (1/n) sum_l F_l^-1(F_nu(r0)).
ScoreTable rating_scores(const CompleteRatings& data);

/// Incomplete-data primitive rating by the literal per-item average over the
/// raters of each item.
ScoreTable incomplete_primitive_scores(const SparseRatings& data);

/// Win counts by a serial triple loop over users and their co-rated pairs.
/// Returned keyed like evaluation::pairwise_counts.
std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t>>
pairwise_win_counts(const SparseRatings& data);

}  // namespace ratings::reference
