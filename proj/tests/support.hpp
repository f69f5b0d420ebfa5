#pragma once

// Random instance generators shared by the unit tests and the acceptance
// suite.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "ratings/rating_data.hpp"

namespace support {

inline std::vector<double> random_samples(std::mt19937_64& rng, std::size_t count) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> values(count);
    for (double& v : values) v = u(rng);
    return values;
}

inline std::vector<std::string> index_ids(const char* prefix, std::size_t count) {
    std::vector<std::string> ids(count);
    for (std::size_t i = 0; i < count; ++i) ids[i] = prefix + std::to_string(i);
    return ids;
}

/// Every user applies a random strictly increasing map to common item scores:
/// user k's rating of the item with score rank t is user k's t-th smallest
/// draw. All users share the induced item ordering.
inline ratings::CompleteRatings universal_preference_instance(std::mt19937_64& rng, std::size_t n,
                                                              std::size_t m) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> scores(m);
    for (double& s : scores) s = u(rng);
    std::vector<std::size_t> rank_of(m);  // rank of each item among the scores
    {
        std::vector<std::size_t> order(m);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
        for (std::size_t r = 0; r < m; ++r) rank_of[order[r]] = r;
    }
    std::vector<double> values(n * m);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> draws(m);
        for (double& d : draws) d = u(rng);
        std::sort(draws.begin(), draws.end());
        for (std::size_t j = 0; j < m; ++j) values[k * m + j] = draws[rank_of[j]];
    }
    return {index_ids("u", n), index_ids("i", m), std::move(values)};
}

/// Rows are translates of one base row (within [0,1]).
inline ratings::CompleteRatings translated_profiles_instance(std::mt19937_64& rng, std::size_t n,
                                                             std::size_t m) {
    std::uniform_real_distribution<double> u(0.0, 0.6);
    std::uniform_real_distribution<double> shift(0.0, 0.35);
    std::vector<double> base(m);
    for (double& b : base) b = u(rng);
    std::vector<double> values(n * m);
    for (std::size_t k = 0; k < n; ++k) {
        const double c = shift(rng);
        for (std::size_t j = 0; j < m; ++j) values[k * m + j] = base[j] + c;
    }
    return {index_ids("u", n), index_ids("i", m), std::move(values)};
}

/// Users come in mirror pairs: the second row of each pair is 1 - the first.
/// Opinions on every item are then equally balanced and the primitive scores
/// are constant.
inline ratings::CompleteRatings balanced_opposition_instance(std::mt19937_64& rng,
                                                             std::size_t pairs, std::size_t m) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::size_t n = 2 * pairs;
    std::vector<double> values(n * m);
    for (std::size_t p = 0; p < pairs; ++p) {
        std::vector<double> base(m);
        for (double& b : base) b = u(rng);
        std::sort(base.begin(), base.end());  // distinct with probability one
        std::shuffle(base.begin(), base.end(), rng);
        for (std::size_t j = 0; j < m; ++j) {
            values[(2 * p) * m + j] = base[j];
            values[(2 * p + 1) * m + j] = 1.0 - base[j];
        }
    }
    return {index_ids("u", n), index_ids("i", m), std::move(values)};
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, std::size_t m) {
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

inline std::vector<std::vector<int>> random_rank_matrix(std::mt19937_64& rng, std::size_t n,
                                                        std::size_t m) {
    std::vector<std::vector<int>> rows;
    rows.reserve(n);
    for (std::size_t k = 0; k < n; ++k) rows.push_back(random_permutation(rng, m));
    return rows;
}

}  // namespace support
