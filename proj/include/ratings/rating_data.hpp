#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ratings {

/// Dense n x M grid of ratings in [0,1], every cell present.
class CompleteRatings {
public:
    CompleteRatings(std::vector<std::string> user_ids, std::vector<std::string> item_ids,
                    std::vector<double> values);

    std::size_t user_count() const { return user_ids_.size(); }
    std::size_t item_count() const { return item_ids_.size(); }

    double at(std::size_t user, std::size_t item) const {
        return values_[user * item_count() + item];
    }
    std::span<const double> row(std::size_t user) const {
        return {values_.data() + user * item_count(), item_count()};
    }

    const std::vector<std::string>& user_ids() const { return user_ids_; }
    const std::vector<std::string>& item_ids() const { return item_ids_; }
    std::span<const double> values() const { return values_; }

private:
    std::vector<std::string> user_ids_;
    std::vector<std::string> item_ids_;
    std::vector<double> values_;  // row-major
};

enum class EstimatorTag { average, primitive, rating };

const char* estimator_tag_name(EstimatorTag tag);

/// item -> aggregate score, aligned with item_ids.
struct ScoreTable {
    std::vector<std::string> item_ids;
    std::vector<double> scores;
    EstimatorTag tag = EstimatorTag::average;
};

struct RatingTriple {
    std::uint32_t user;
    std::uint32_t item;
    double rating;
};

/// Sparse (user, item, rating) triples with per-user and per-item views.
/// No duplicate (user, item) pairs; every user and item has at least one
/// rating.
class SparseRatings {
public:
    struct NamedTriple {
        std::string user_id;
        std::string item_id;
        double rating;
    };

    static SparseRatings from_named_triples(const std::vector<NamedTriple>& triples);
    static SparseRatings from_indexed(std::vector<std::string> user_ids,
                                      std::vector<std::string> item_ids,
                                      std::vector<RatingTriple> triples);
    static SparseRatings from_complete(const CompleteRatings& data);

    std::size_t user_count() const { return user_ids_.size(); }
    std::size_t item_count() const { return item_ids_.size(); }
    std::size_t rating_count() const { return triples_.size(); }

    /// Triples of one user, ordered by item index.
    std::span<const RatingTriple> of_user(std::size_t user) const {
        return {triples_.data() + user_begin_[user],
                user_begin_[user + 1] - user_begin_[user]};
    }
    /// Indices into the triple array for the raters of one item (N_x),
    /// ordered by user index.
    std::span<const std::uint32_t> of_item(std::size_t item) const {
        return {item_triples_.data() + item_begin_[item],
                item_begin_[item + 1] - item_begin_[item]};
    }
    const RatingTriple& triple(std::uint32_t idx) const { return triples_[idx]; }

    const std::vector<std::string>& user_ids() const { return user_ids_; }
    const std::vector<std::string>& item_ids() const { return item_ids_; }
    std::span<const RatingTriple> triples() const { return triples_; }

    bool is_complete() const { return rating_count() == user_count() * item_count(); }

    /// Dense view; throws unless is_complete().
    CompleteRatings to_complete() const;

private:
    void build_views();

    std::vector<std::string> user_ids_;
    std::vector<std::string> item_ids_;
    std::vector<RatingTriple> triples_;        // sorted by (user, item)
    std::vector<std::size_t> user_begin_;      // CSR offsets into triples_
    std::vector<std::uint32_t> item_triples_;  // triple indices grouped by item
    std::vector<std::size_t> item_begin_;
};

/// item -> rank in 1..M, rank 1 is the highest score. Bijection onto 1..M.
struct Ranking {
    std::vector<std::string> item_ids;
    std::vector<int> rank_of;  // aligned with item_ids

    std::size_t item_count() const { return item_ids.size(); }
    /// Item indices ordered best first.
    std::vector<std::size_t> order() const;
};

}  // namespace ratings
