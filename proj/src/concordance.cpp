#include "ratings/concordance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ratings/estimators.hpp"
#include "ratings/incomplete.hpp"

namespace ratings {

std::vector<double> ranks_to_ratings(std::span<const int> ranks) {
    const std::size_t m = ranks.size();
    std::vector<bool> seen(m, false);
    for (int r : ranks) {
        if (r < 1 || static_cast<std::size_t>(r) > m || seen[static_cast<std::size_t>(r) - 1]) {
            throw std::invalid_argument("ranks_to_ratings: not a permutation of 1..M");
        }
        seen[static_cast<std::size_t>(r) - 1] = true;
    }
    std::vector<double> out(m);
    for (std::size_t j = 0; j < m; ++j) {
        out[j] = 1.0 - static_cast<double>(ranks[j] - 1) / static_cast<double>(m);
    }
    return out;
}

double kendalls_w(const std::vector<std::vector<int>>& rank_rows) {
    if (rank_rows.empty()) {
        throw std::invalid_argument("kendalls_w: no rankings");
    }
    const std::size_t m = rank_rows.front().size();
    if (m < 2) {
        throw std::invalid_argument("kendalls_w: need at least two items");
    }
    const std::size_t n = rank_rows.size();
    std::vector<double> mean_rank(m, 0.0);
    for (const auto& row : rank_rows) {
        if (row.size() != m) {
            throw std::invalid_argument("kendalls_w: ragged rank matrix");
        }
        ranks_to_ratings(row);  // permutation check
        for (std::size_t j = 0; j < m; ++j) mean_rank[j] += row[j];
    }
    const double grand = (static_cast<double>(m) + 1.0) / 2.0;
    double var = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double d = mean_rank[j] / static_cast<double>(n) - grand;
        var += d * d;
    }
    var /= static_cast<double>(m);
    const double md = static_cast<double>(m);
    return var / ((md * md - 1.0) / 12.0);
}

namespace {

double variance_of(std::span<const double> values) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) {
        const double d = v - mean;
        var += d * d;
    }
    return var / static_cast<double>(values.size());
}

ConcordanceReport build_report(std::span<const EmpiricalDistribution> dists,
                               const EmpiricalDistribution& barycenter,
                               std::span<const double> primitive) {
    ConcordanceReport rep;
    rep.per_user_variance.reserve(dists.size());
    double denom = 0.0;
    for (const auto& d : dists) {
        rep.per_user_variance.push_back(d.variance());
        denom += rep.per_user_variance.back();
    }
    denom /= static_cast<double>(dists.size());
    if (!(denom > 0.0)) {
        throw std::domain_error("concordance_report: all users rate constantly");
    }
    rep.mean_user_variance = denom;
    rep.barycenter_variance = barycenter.variance();
    rep.primitive_pushforward_variance = variance_of(primitive);
    rep.w_scale = rep.barycenter_variance / denom;
    rep.w_ratings = rep.primitive_pushforward_variance / denom;
    return rep;
}

}  // namespace

ConcordanceReport concordance_report(const CompleteRatings& data) {
    const auto dists = user_distributions(data);
    const auto bary = frechet_mean(dists);
    const auto primitive = kernels::transported_item_means(data, dists, bary.distribution);
    return build_report(dists, bary.distribution, primitive);
}

ConcordanceReport concordance_report(const SparseRatings& data) {
    const auto bundle = incomplete_estimate_all(data);
    const auto dists = user_empirical_distributions(data);
    return build_report(dists, bundle.barycenter.distribution, bundle.primitive.scores);
}

ConcordanceLimits concordance_limits(const AlphaLaw& law, std::size_t draws,
                                     std::uint64_t seed) {
    if (draws == 0) {
        throw std::invalid_argument("concordance_limits: need at least one draw");
    }
    std::mt19937_64 rng(seed);
    double abs_sum = 0.0, sq_sum = 0.0, sgn_sum = 0.0;
    for (std::size_t k = 0; k < draws; ++k) {
        const double a = law.draw(k, rng);
        abs_sum += std::abs(a);
        sq_sum += a * a;
        if (a > 0.0) {
            sgn_sum += 1.0;
        } else if (a < 0.0) {
            sgn_sum -= 1.0;
        }
    }
    const double d = static_cast<double>(draws);
    const double mean_abs = abs_sum / d;
    const double mean_sq = sq_sum / d;
    const double mean_sgn = sgn_sum / d;
    return {mean_abs * mean_abs / mean_sq,
            mean_abs * mean_abs * mean_sgn * mean_sgn / mean_sq};
}

}  // namespace ratings
