#pragma once

#include <unordered_map>

#include "ratings/rating_data.hpp"

namespace ratings {

/// Rank 1 to the highest score; ties broken by item identifier ascending.
Ranking ranking_from_scores(const ScoreTable& scores);

/// Normalized average change in ranking, (1/(M(M-1))) sum |r_k - s_k|.
/// Rankings must cover the same item set (matched by identifier), M >= 2.
double rank_distance_d1(const Ranking& r, const Ranking& s);

/// Win counts over co-rated pairs: a user rating item i strictly above item j
/// adds one win for (i, j); ties add nothing.
class PairwiseCounts {
public:
    explicit PairwiseCounts(std::vector<std::string> item_ids) : item_ids_(std::move(item_ids)) {}

    std::uint32_t wins(std::uint32_t winner, std::uint32_t loser) const {
        auto it = wins_.find(key(winner, loser));
        return it == wins_.end() ? 0 : it->second;
    }
    void add_win(std::uint32_t winner, std::uint32_t loser, std::uint32_t count = 1) {
        wins_[key(winner, loser)] += count;
    }

    const std::vector<std::string>& item_ids() const { return item_ids_; }
    std::size_t item_count() const { return item_ids_.size(); }
    const std::unordered_map<std::uint64_t, std::uint32_t>& raw() const { return wins_; }

    static std::uint64_t key(std::uint32_t winner, std::uint32_t loser) {
        return (static_cast<std::uint64_t>(winner) << 32) | loser;
    }

private:
    std::vector<std::string> item_ids_;
    std::unordered_map<std::uint64_t, std::uint32_t> wins_;
};

PairwiseCounts pairwise_counts(const SparseRatings& data);

/// Fraction of unordered pairs with a strict majority winner whose score
/// ordering matches it. Pairs with tied majorities or tied scores are left
/// out of the denominator. Throws std::domain_error with no eligible pair.
double pairwise_agreement(const ScoreTable& scores, const PairwiseCounts& counts);

/// Rank Centrality: stationary distribution of the Markov chain whose
/// transitions follow empirical loss fractions, 1/d_max scaled. Disconnected
/// comparison graphs are scored per component (stationary mass scaled by
/// component size) and flagged.
struct BtlResult {
    ScoreTable scores;
    bool connected;
    std::size_t component_count;
};

BtlResult btl_scores(const PairwiseCounts& counts);

/// Per-user mean utilities over rated items in the ranking's top K, averaged
/// across users with at least one eligible rating.
///   rating utility   u1 = the rating itself
///   quantile utility u2 = quantile of the rating within the user's ratings
///        of the union context items (each union item counted with its
///        multiplicity)
///   binary utility   u3 = 1{rating >= user's overall mean rating}
struct UtilityReport {
    double rating_utility;
    double quantile_utility;
    double binary_utility;
    std::size_t users_counted;
};

/// union_context: item indices with multiplicity (items in both compared
/// top-K lists appear twice). Defaults to the ranking's own top K.
UtilityReport utility_report(const SparseRatings& data, const Ranking& ranking, std::size_t K,
                             const std::vector<std::uint32_t>* union_context = nullptr);

/// Top-K union multiset of two rankings over the same item set.
std::vector<std::uint32_t> top_k_union(const Ranking& a, const Ranking& b, std::size_t K);

}  // namespace ratings
