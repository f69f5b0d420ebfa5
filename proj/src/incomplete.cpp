#include "ratings/incomplete.hpp"

#include "ratings/accumulate.hpp"

namespace ratings {

std::vector<EmpiricalDistribution> user_empirical_distributions(const SparseRatings& data) {
    const auto n = static_cast<std::ptrdiff_t>(data.user_count());
    std::vector<EmpiricalDistribution> dists(data.user_count(),
                                             EmpiricalDistribution::from_samples({0.0}));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t u = 0; u < n; ++u) {
        const auto row = data.of_user(static_cast<std::size_t>(u));
        std::vector<double> vals;
        vals.reserve(row.size());
        for (const auto& t : row) vals.push_back(t.rating);
        dists[static_cast<std::size_t>(u)] = EmpiricalDistribution::from_samples(vals);
    }
    return dists;
}

namespace {

std::vector<double> transported_rater_means(const SparseRatings& data,
                                            std::span<const EmpiricalDistribution> dists,
                                            const EmpiricalDistribution& barycenter) {
    const auto m = static_cast<std::ptrdiff_t>(data.item_count());
    std::vector<double> out(data.item_count());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        const auto raters = data.of_item(static_cast<std::size_t>(i));
        std::vector<double> transported;
        transported.reserve(raters.size());
        for (std::uint32_t idx : raters) {
            const auto& t = data.triple(idx);
            transported.push_back(barycenter.quantile_clamped(dists[t.user].cdf(t.rating)));
        }
        out[static_cast<std::size_t>(i)] =
            multiset_sum(transported) / static_cast<double>(raters.size());
    }
    return out;
}

std::vector<double> rater_means(const SparseRatings& data) {
    const auto m = static_cast<std::ptrdiff_t>(data.item_count());
    std::vector<double> out(data.item_count());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        const auto raters = data.of_item(static_cast<std::size_t>(i));
        double s = 0.0;
        for (std::uint32_t idx : raters) s += data.triple(idx).rating;
        out[static_cast<std::size_t>(i)] = s / static_cast<double>(raters.size());
    }
    return out;
}

}  // namespace

ScoreTable incomplete_primitive_scores(const SparseRatings& data) {
    const auto dists = user_empirical_distributions(data);
    const auto bary = frechet_mean(dists);
    return {data.item_ids(), transported_rater_means(data, dists, bary.distribution),
            EstimatorTag::primitive};
}

ScoreTable incomplete_rating_scores(const SparseRatings& data) {
    return incomplete_estimate_all(data).rating;
}

IncompleteEstimatorBundle incomplete_estimate_all(const SparseRatings& data) {
    const auto dists = user_empirical_distributions(data);
    auto bary = frechet_mean(dists);

    IncompleteEstimatorBundle bundle{
        {data.item_ids(), rater_means(data), EstimatorTag::average},
        {data.item_ids(), transported_rater_means(data, dists, bary.distribution),
         EstimatorTag::primitive},
        {data.item_ids(), {}, EstimatorTag::rating},
        std::move(bary)};

    const auto nu = EmpiricalDistribution::from_samples(bundle.primitive.scores);
    bundle.rating.scores.resize(data.item_count());
    for (std::size_t i = 0; i < data.item_count(); ++i) {
        bundle.rating.scores[i] =
            bundle.barycenter.distribution.quantile_clamped(nu.cdf(bundle.primitive.scores[i]));
    }
    return bundle;
}

}  // namespace ratings
