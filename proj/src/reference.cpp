#include "ratings/reference.hpp"

#include <map>

#include "ratings/accumulate.hpp"

#include "ratings/empirical_distribution.hpp"

namespace ratings::reference {

namespace {

std::vector<EmpiricalDistribution> serial_user_distributions(const CompleteRatings& data) {
    std::vector<EmpiricalDistribution> dists;
    dists.reserve(data.user_count());
    for (std::size_t u = 0; u < data.user_count(); ++u) {
        dists.push_back(EmpiricalDistribution::from_samples(data.row(u)));
    }
    return dists;
}

}  // namespace

ScoreTable primitive_scores(const CompleteRatings& data) {
    const auto dists = serial_user_distributions(data);
    const std::size_t n = data.user_count();
    std::vector<double> scores(data.item_count());
    for (std::size_t i = 0; i < data.item_count(); ++i) {
        std::vector<double> transported;
        transported.reserve(n * n);
        for (std::size_t k = 0; k < n; ++k) {
            const double p = dists[k].cdf(data.at(k, i));
            for (std::size_t j = 0; j < n; ++j) {
                transported.push_back(dists[j].quantile_clamped(p));
            }
        }
        scores[i] = multiset_sum(transported) / (static_cast<double>(n) * static_cast<double>(n));
    }
    return {data.item_ids(), std::move(scores), EstimatorTag::primitive};
}

ScoreTable rating_scores(const CompleteRatings& data) {
    const auto dists = serial_user_distributions(data);
    auto r0 = primitive_scores(data);
    const auto nu = EmpiricalDistribution::from_samples(r0.scores);
    const std::size_t n = data.user_count();
    std::vector<double> scores(data.item_count());
    for (std::size_t i = 0; i < data.item_count(); ++i) {
        const double p = nu.cdf(r0.scores[i]);
        double acc = 0.0;
        for (std::size_t l = 0; l < n; ++l) acc += dists[l].quantile_clamped(p);
        scores[i] = acc / static_cast<double>(n);
    }
    return {data.item_ids(), std::move(scores), EstimatorTag::rating};
}

ScoreTable incomplete_primitive_scores(const SparseRatings& data) {
    std::vector<EmpiricalDistribution> dists;
    dists.reserve(data.user_count());
    for (std::size_t u = 0; u < data.user_count(); ++u) {
        const auto row = data.of_user(u);
        std::vector<double> vals;
        vals.reserve(row.size());
        for (const auto& t : row) vals.push_back(t.rating);
        dists.push_back(EmpiricalDistribution::from_samples(vals));
    }
    const std::size_t n = data.user_count();
    std::vector<double> scores(data.item_count());
    for (std::size_t i = 0; i < data.item_count(); ++i) {
        const auto raters = data.of_item(i);
        std::vector<double> transported;
        transported.reserve(raters.size());
        for (std::uint32_t idx : raters) {
            const auto& t = data.triple(idx);
            const double p = dists[t.user].cdf(t.rating);
            std::vector<double> inner(n);
            for (std::size_t j = 0; j < n; ++j) inner[j] = dists[j].quantile_clamped(p);
            transported.push_back(multiset_sum(inner) / static_cast<double>(n));
        }
        scores[i] = multiset_sum(transported) / static_cast<double>(raters.size());
    }
    return {data.item_ids(), std::move(scores), EstimatorTag::primitive};
}

std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t>>
pairwise_win_counts(const SparseRatings& data) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> wins;
    for (std::size_t u = 0; u < data.user_count(); ++u) {
        const auto row = data.of_user(u);
        for (std::size_t a = 0; a < row.size(); ++a) {
            for (std::size_t b = a + 1; b < row.size(); ++b) {
                if (row[a].rating > row[b].rating) {
                    ++wins[{row[a].item, row[b].item}];
                } else if (row[b].rating > row[a].rating) {
                    ++wins[{row[b].item, row[a].item}];
                }
            }
        }
    }
    return {wins.begin(), wins.end()};
}

}  // namespace ratings::reference
