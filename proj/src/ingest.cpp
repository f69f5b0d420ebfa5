#include "ratings/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <unordered_map>

namespace ratings {

void ScaleSpec::validate() const {
    if (!(scale_min < scale_max)) {
        throw InputError("scale: scale_min must be below scale_max");
    }
}

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

}  // namespace

SparseRatings load_ratings(const std::string& path, const ScaleSpec& scale) {
    scale.validate();
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open input file: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw InputError(path + ": empty file");
    }
    if (strip_cr(line) != "user_id,item_id,rating") {
        throw InputError(path + ": row 1: expected header 'user_id,item_id,rating'");
    }

    std::vector<SparseRatings::NamedTriple> triples;
    std::unordered_map<std::string, std::size_t> seen_row;  // "user\x1fitem" -> row
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv_row(line);
        const std::string at = path + ": row " + std::to_string(row);
        if (fields.size() != 3) {
            throw InputError(at + ": expected 3 columns, got " + std::to_string(fields.size()));
        }
        if (fields[0].empty() || fields[1].empty()) {
            throw InputError(at + ": empty user_id or item_id");
        }
        double rating = 0.0;
        const char* begin = fields[2].data();
        const char* end = begin + fields[2].size();
        const auto parsed = std::from_chars(begin, end, rating);
        if (parsed.ec != std::errc() || parsed.ptr != end) {
            throw InputError(at + ": column 3: cannot parse rating '" + fields[2] + "'");
        }
        if (!(rating >= scale.scale_min && rating <= scale.scale_max)) {
            throw InputError(at + ": rating " + fields[2] + " outside declared scale");
        }
        const std::string key = fields[0] + '\x1f' + fields[1];
        const auto [it, fresh] = seen_row.try_emplace(key, row);
        if (!fresh) {
            throw InputError(at + ": duplicate rating for (" + fields[0] + ", " + fields[1] +
                             "), first seen at row " + std::to_string(it->second));
        }
        triples.push_back({fields[0], fields[1], scale.normalize(rating)});
    }
    if (triples.empty()) {
        throw InputError(path + ": no data rows");
    }
    return SparseRatings::from_named_triples(triples);
}

SparseRatings filter_min_counts(const SparseRatings& data, std::size_t min_user,
                                std::size_t min_item, std::vector<RemovalRecord>* removal_log) {
    if (min_user < 1 || min_item < 1) {
        throw InputError("filter: thresholds must be >= 1");
    }
    const std::size_t n = data.user_count();
    const std::size_t m = data.item_count();
    std::vector<bool> user_alive(n, true), item_alive(m, true);

    const auto count_ratings = [&](std::vector<std::size_t>& user_count,
                                   std::vector<std::size_t>& item_count) {
        user_count.assign(n, 0);
        item_count.assign(m, 0);
        for (const auto& t : data.triples()) {
            if (user_alive[t.user] && item_alive[t.item]) {
                ++user_count[t.user];
                ++item_count[t.item];
            }
        }
    };

    std::vector<std::size_t> user_count, item_count;
    bool removed = true;
    while (removed) {
        removed = false;
        count_ratings(user_count, item_count);
        for (std::size_t u = 0; u < n; ++u) {
            if (user_alive[u] && user_count[u] < min_user) {
                user_alive[u] = false;
                removed = true;
                if (removal_log) {
                    removal_log->push_back({"user", data.user_ids()[u], user_count[u]});
                }
            }
        }
        count_ratings(user_count, item_count);
        for (std::size_t i = 0; i < m; ++i) {
            if (item_alive[i] && item_count[i] < min_item) {
                item_alive[i] = false;
                removed = true;
                if (removal_log) {
                    removal_log->push_back({"item", data.item_ids()[i], item_count[i]});
                }
            }
        }
    }

    std::vector<SparseRatings::NamedTriple> surviving;
    for (const auto& t : data.triples()) {
        if (user_alive[t.user] && item_alive[t.item]) {
            surviving.push_back({data.user_ids()[t.user], data.item_ids()[t.item], t.rating});
        }
    }
    if (surviving.empty()) {
        throw EmptyResultError("filter: no ratings survive the minimum-count thresholds");
    }
    return SparseRatings::from_named_triples(surviving);
}

std::vector<HistogramBin> histogram(const ScoreTable& scores, std::size_t bins,
                                    const ScaleSpec& scale) {
    scale.validate();
    if (bins < 1) {
        throw InputError("histogram: need at least one bin");
    }
    const double width = (scale.scale_max - scale.scale_min) / static_cast<double>(bins);
    std::vector<HistogramBin> out(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        out[b] = {scale.scale_min + static_cast<double>(b) * width, 0};
    }
    for (double s : scores.scores) {
        const double v = scale.denormalize(s);
        auto idx = static_cast<std::ptrdiff_t>((v - scale.scale_min) / width);
        idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(bins) - 1);
        ++out[static_cast<std::size_t>(idx)].count;
    }
    return out;
}

}  // namespace ratings
