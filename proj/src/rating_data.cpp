#include "ratings/rating_data.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace ratings {

CompleteRatings::CompleteRatings(std::vector<std::string> user_ids,
                                 std::vector<std::string> item_ids,
                                 std::vector<double> values)
    : user_ids_(std::move(user_ids)),
      item_ids_(std::move(item_ids)),
      values_(std::move(values)) {
    if (user_ids_.empty() || item_ids_.empty()) {
        throw std::invalid_argument("CompleteRatings: need at least one user and item");
    }
    if (values_.size() != user_ids_.size() * item_ids_.size()) {
        throw std::invalid_argument("CompleteRatings: value grid size mismatch");
    }
    for (double v : values_) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("CompleteRatings: rating outside [0,1]");
        }
    }
}

const char* estimator_tag_name(EstimatorTag tag) {
    switch (tag) {
        case EstimatorTag::average: return "average";
        case EstimatorTag::primitive: return "primitive";
        case EstimatorTag::rating: return "rating";
    }
    return "unknown";
}

SparseRatings SparseRatings::from_named_triples(const std::vector<NamedTriple>& named) {
    if (named.empty()) {
        throw std::invalid_argument("SparseRatings: no ratings");
    }
    std::unordered_map<std::string, std::uint32_t> user_index, item_index;
    std::vector<std::string> user_ids, item_ids;
    std::vector<RatingTriple> triples;
    triples.reserve(named.size());
    for (const auto& t : named) {
        auto [ui, unew] = user_index.try_emplace(t.user_id,
                                                 static_cast<std::uint32_t>(user_ids.size()));
        if (unew) user_ids.push_back(t.user_id);
        auto [ii, inew] = item_index.try_emplace(t.item_id,
                                                 static_cast<std::uint32_t>(item_ids.size()));
        if (inew) item_ids.push_back(t.item_id);
        triples.push_back({ui->second, ii->second, t.rating});
    }
    return from_indexed(std::move(user_ids), std::move(item_ids), std::move(triples));
}

SparseRatings SparseRatings::from_indexed(std::vector<std::string> user_ids,
                                          std::vector<std::string> item_ids,
                                          std::vector<RatingTriple> triples) {
    SparseRatings s;
    s.user_ids_ = std::move(user_ids);
    s.item_ids_ = std::move(item_ids);
    s.triples_ = std::move(triples);
    if (s.triples_.empty()) {
        throw std::invalid_argument("SparseRatings: no ratings");
    }
    for (const auto& t : s.triples_) {
        if (t.user >= s.user_ids_.size() || t.item >= s.item_ids_.size()) {
            throw std::invalid_argument("SparseRatings: triple index out of range");
        }
        if (!(t.rating >= 0.0 && t.rating <= 1.0)) {
            throw std::invalid_argument("SparseRatings: rating outside [0,1]");
        }
    }
    std::sort(s.triples_.begin(), s.triples_.end(),
              [](const RatingTriple& a, const RatingTriple& b) {
                  return a.user != b.user ? a.user < b.user : a.item < b.item;
              });
    for (std::size_t i = 1; i < s.triples_.size(); ++i) {
        if (s.triples_[i].user == s.triples_[i - 1].user &&
            s.triples_[i].item == s.triples_[i - 1].item) {
            throw std::invalid_argument("SparseRatings: duplicate rating for user '" +
                                        s.user_ids_[s.triples_[i].user] + "', item '" +
                                        s.item_ids_[s.triples_[i].item] + "'");
        }
    }
    s.build_views();
    return s;
}

SparseRatings SparseRatings::from_complete(const CompleteRatings& data) {
    std::vector<RatingTriple> triples;
    triples.reserve(data.user_count() * data.item_count());
    for (std::uint32_t u = 0; u < data.user_count(); ++u) {
        for (std::uint32_t i = 0; i < data.item_count(); ++i) {
            triples.push_back({u, i, data.at(u, i)});
        }
    }
    return from_indexed(data.user_ids(), data.item_ids(), std::move(triples));
}

void SparseRatings::build_views() {
    const std::size_t n = user_ids_.size();
    const std::size_t m = item_ids_.size();

    user_begin_.assign(n + 1, 0);
    for (const auto& t : triples_) ++user_begin_[t.user + 1];
    for (std::size_t u = 0; u < n; ++u) {
        if (user_begin_[u + 1] == 0) {
            throw std::invalid_argument("SparseRatings: user '" + user_ids_[u] +
                                        "' has no ratings");
        }
        user_begin_[u + 1] += user_begin_[u];
    }

    item_begin_.assign(m + 1, 0);
    for (const auto& t : triples_) ++item_begin_[t.item + 1];
    for (std::size_t i = 0; i < m; ++i) {
        if (item_begin_[i + 1] == 0) {
            throw std::invalid_argument("SparseRatings: item '" + item_ids_[i] +
                                        "' has no ratings");
        }
        item_begin_[i + 1] += item_begin_[i];
    }
    item_triples_.resize(triples_.size());
    std::vector<std::size_t> cursor(item_begin_.begin(), item_begin_.end() - 1);
    // Triples are user-sorted, so each item's rater list comes out user-ordered.
    for (std::uint32_t idx = 0; idx < triples_.size(); ++idx) {
        item_triples_[cursor[triples_[idx].item]++] = idx;
    }
}

CompleteRatings SparseRatings::to_complete() const {
    if (!is_complete()) {
        throw std::invalid_argument("to_complete: data has missing ratings");
    }
    std::vector<double> values(user_count() * item_count());
    for (const auto& t : triples_) {
        values[t.user * item_count() + t.item] = t.rating;
    }
    return CompleteRatings(user_ids_, item_ids_, std::move(values));
}

std::vector<std::size_t> Ranking::order() const {
    const std::size_t m = item_ids.size();
    std::vector<std::size_t> by_rank(m, m);
    if (rank_of.size() != m) {
        throw std::invalid_argument("Ranking: rank vector size mismatch");
    }
    for (std::size_t i = 0; i < m; ++i) {
        const int r = rank_of[i];
        if (r < 1 || static_cast<std::size_t>(r) > m ||
            by_rank[static_cast<std::size_t>(r) - 1] != m) {
            throw std::invalid_argument("Ranking: ranks must be a bijection onto 1..M");
        }
        by_rank[static_cast<std::size_t>(r) - 1] = i;
    }
    return by_rank;
}

}  // namespace ratings
