#pragma once

#include <span>

#include "ratings/alpha_law.hpp"
#include "ratings/rating_data.hpp"

namespace ratings {

/// Rank k of M becomes the numerical rating 1 - (k-1)/M.
/// Throws unless ranks is a permutation of 1..M.
std::vector<double> ranks_to_ratings(std::span<const int> ranks);

/// Classical coefficient of concordance for n rankings of M >= 2 items.
double kendalls_w(const std::vector<std::vector<int>>& rank_rows);

/// Agreement statistics for rating profiles. w_scale compares the variance of
/// the barycenter against the mean per-user variance; w_ratings does the same
/// for the distribution of primitive scores.
struct ConcordanceReport {
    double w_scale;
    double w_ratings;
    std::vector<double> per_user_variance;
    double mean_user_variance;
    double barycenter_variance;
    double primitive_pushforward_variance;
};

/// Throws std::domain_error when every user's ratings are constant (zero
/// denominator).
ConcordanceReport concordance_report(const CompleteRatings& data);

/// Sparse-data variant using the empirical per-user distributions and the
/// incomplete primitive scores; coincides with the dense report on complete
/// data.
ConcordanceReport concordance_report(const SparseRatings& data);

/// Asymptotic (w_scale, w_ratings) for affine scale laws with E|alpha| = 1,
/// estimated by Monte Carlo over the alpha law:
///   w_scale  -> (E|alpha|)^2 / E[alpha^2]
///   w_ratings -> (E|alpha|)^2 (E sgn alpha)^2 / E[alpha^2]
struct ConcordanceLimits {
    double w_scale_limit;
    double w_ratings_limit;
};

ConcordanceLimits concordance_limits(const AlphaLaw& law, std::size_t draws,
                                     std::uint64_t seed);

}  // namespace ratings
