#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ratings/rating_data.hpp"

namespace ratings {

/// Input or validation failure; carries file/row context where available.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filtering removed everything.
class EmptyResultError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Declared rating scale; normalization is the affine bijection onto [0,1].
struct ScaleSpec {
    double scale_min = 1.0;
    double scale_max = 10.0;

    void validate() const;
    double normalize(double r) const { return (r - scale_min) / (scale_max - scale_min); }
    double denormalize(double x) const { return scale_min + x * (scale_max - scale_min); }
};

/// CSV with header `user_id,item_id,rating`, UTF-8, comma separated.
/// Ratings are validated against the scale and normalized to [0,1].
/// Parse failures, out-of-scale ratings and duplicate (user, item) pairs
/// raise InputError with the offending row number.
SparseRatings load_ratings(const std::string& path, const ScaleSpec& scale);

struct RemovalRecord {
    std::string entity_type;  // "user" or "item"
    std::string id;
    std::size_t count;  // rating count at the time of removal
};

/// Iteratively removes users with fewer than min_user ratings and items with
/// fewer than min_item ratings until a fixed point. Throws EmptyResultError
/// when nothing survives.
SparseRatings filter_min_counts(const SparseRatings& data, std::size_t min_user,
                                std::size_t min_item,
                                std::vector<RemovalRecord>* removal_log = nullptr);

struct HistogramBin {
    double lower;  // on the original (denormalized) scale
    std::size_t count;
};

/// Equal-width bins over the declared scale; the last bin is right-closed.
std::vector<HistogramBin> histogram(const ScoreTable& scores, std::size_t bins,
                                    const ScaleSpec& scale);

}  // namespace ratings
