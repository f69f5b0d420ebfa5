#include "ratings/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ratings {

Ranking ranking_from_scores(const ScoreTable& scores) {
    const std::size_t m = scores.item_ids.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores.scores[a] != scores.scores[b]) return scores.scores[a] > scores.scores[b];
        return scores.item_ids[a] < scores.item_ids[b];
    });
    Ranking r{scores.item_ids, std::vector<int>(m)};
    for (std::size_t pos = 0; pos < m; ++pos) {
        r.rank_of[order[pos]] = static_cast<int>(pos + 1);
    }
    return r;
}

double rank_distance_d1(const Ranking& r, const Ranking& s) {
    const std::size_t m = r.item_count();
    if (m < 2) {
        throw std::invalid_argument("rank_distance_d1: need at least two items");
    }
    std::unordered_map<std::string, int> s_rank;
    s_rank.reserve(s.item_count());
    for (std::size_t i = 0; i < s.item_count(); ++i) s_rank.emplace(s.item_ids[i], s.rank_of[i]);
    if (s_rank.size() != m || s.item_count() != m) {
        throw std::invalid_argument("rank_distance_d1: item sets differ");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        auto it = s_rank.find(r.item_ids[i]);
        if (it == s_rank.end()) {
            throw std::invalid_argument("rank_distance_d1: item sets differ");
        }
        acc += std::abs(r.rank_of[i] - it->second);
    }
    return acc / (static_cast<double>(m) * (static_cast<double>(m) - 1.0));
}

PairwiseCounts pairwise_counts(const SparseRatings& data) {
    PairwiseCounts counts(data.item_ids());
    const auto n = static_cast<std::ptrdiff_t>(data.user_count());
#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    // Integer counts merge associatively, so per-thread maps give the same
    // totals for any thread count.
    std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> partial(
        static_cast<std::size_t>(threads));
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t u = 0; u < n; ++u) {
#ifdef _OPENMP
        auto& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#else
        auto& local = partial[0];
#endif
        const auto row = data.of_user(static_cast<std::size_t>(u));
        for (std::size_t a = 0; a < row.size(); ++a) {
            for (std::size_t b = a + 1; b < row.size(); ++b) {
                if (row[a].rating > row[b].rating) {
                    ++local[PairwiseCounts::key(row[a].item, row[b].item)];
                } else if (row[b].rating > row[a].rating) {
                    ++local[PairwiseCounts::key(row[b].item, row[a].item)];
                }
            }
        }
    }
    for (const auto& local : partial) {
        for (const auto& [key, c] : local) {
            counts.add_win(static_cast<std::uint32_t>(key >> 32),
                           static_cast<std::uint32_t>(key & 0xffffffffu), c);
        }
    }
    return counts;
}

namespace {

/// Unordered compared pairs (i < j), each listed once.
std::vector<std::pair<std::uint32_t, std::uint32_t>> compared_pairs(
    const PairwiseCounts& counts) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(counts.raw().size());
    for (const auto& [key, c] : counts.raw()) {
        if (c == 0) continue;
        const auto w = static_cast<std::uint32_t>(key >> 32);
        const auto l = static_cast<std::uint32_t>(key & 0xffffffffu);
        pairs.emplace_back(std::min(w, l), std::max(w, l));
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

}  // namespace

double pairwise_agreement(const ScoreTable& scores, const PairwiseCounts& counts) {
    if (scores.item_ids != counts.item_ids()) {
        throw std::invalid_argument("pairwise_agreement: item sets differ");
    }
    std::size_t eligible = 0, agreeing = 0;
    for (const auto& [i, j] : compared_pairs(counts)) {
        const std::uint32_t wins_ij = counts.wins(i, j);
        const std::uint32_t wins_ji = counts.wins(j, i);
        if (wins_ij == wins_ji) continue;  // tied majority
        const double si = scores.scores[i], sj = scores.scores[j];
        if (si == sj) continue;  // tied scores
        ++eligible;
        if ((wins_ij > wins_ji) == (si > sj)) ++agreeing;
    }
    if (eligible == 0) {
        throw std::domain_error("pairwise_agreement: no pair with a strict majority");
    }
    return static_cast<double>(agreeing) / static_cast<double>(eligible);
}

namespace {

std::vector<std::vector<std::uint32_t>> connected_components(
    std::size_t m, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
    std::vector<std::uint32_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& [a, b] : pairs) {
        const auto ra = find(a), rb = find(b);
        if (ra != rb) parent[ra] = rb;
    }
    std::unordered_map<std::uint32_t, std::size_t> root_index;
    std::vector<std::vector<std::uint32_t>> comps;
    for (std::uint32_t i = 0; i < m; ++i) {
        const auto r = find(i);
        auto [it, fresh] = root_index.try_emplace(r, comps.size());
        if (fresh) comps.emplace_back();
        comps[it->second].push_back(i);
    }
    return comps;
}

}  // namespace

BtlResult btl_scores(const PairwiseCounts& counts) {
    const std::size_t m = counts.item_count();
    if (m == 0 || counts.raw().empty()) {
        throw std::invalid_argument("btl_scores: no comparisons");
    }
    const auto pairs = compared_pairs(counts);

    std::vector<std::size_t> degree(m, 0);
    for (const auto& [i, j] : pairs) {
        ++degree[i];
        ++degree[j];
    }
    const double d_max = static_cast<double>(*std::max_element(degree.begin(), degree.end()));

    // From i, move to j with probability wins[j,i] / (d_max * comparisons).
    std::vector<std::vector<std::pair<std::uint32_t, double>>> move_prob(m);
    for (const auto& [i, j] : pairs) {
        const double wij = counts.wins(i, j);
        const double wji = counts.wins(j, i);
        const double total = wij + wji;
        move_prob[i].emplace_back(j, wji / total / d_max);
        move_prob[j].emplace_back(i, wij / total / d_max);
    }

    const auto comps = connected_components(m, pairs);
    std::vector<double> scores(m, 0.0);
    for (const auto& comp : comps) {
        if (comp.size() == 1) {
            scores[comp[0]] = 1.0 / static_cast<double>(m);
            continue;
        }
        std::unordered_map<std::uint32_t, std::size_t> local_index;
        local_index.reserve(comp.size());
        for (std::size_t k = 0; k < comp.size(); ++k) local_index.emplace(comp[k], k);
        std::vector<double> pi(comp.size(), 1.0 / static_cast<double>(comp.size()));
        std::vector<double> next(comp.size());
        // The lazy chain (P + I)/2 keeps the stationary distribution and
        // removes periodicity, so plain iteration from uniform converges.
        for (int iter = 0; iter < 200000; ++iter) {
            std::fill(next.begin(), next.end(), 0.0);
            for (std::size_t k = 0; k < comp.size(); ++k) {
                double out = 0.0;
                for (const auto& [to, p] : move_prob[comp[k]]) {
                    next[local_index[to]] += pi[k] * p;
                    out += p;
                }
                next[k] += pi[k] * (1.0 - out);
            }
            double diff = 0.0;
            for (std::size_t k = 0; k < comp.size(); ++k) {
                next[k] = 0.5 * next[k] + 0.5 * pi[k];
                diff += std::abs(next[k] - pi[k]);
            }
            pi.swap(next);
            if (diff < 1e-14) break;
        }
        const double comp_mass = static_cast<double>(comp.size()) / static_cast<double>(m);
        for (std::size_t k = 0; k < comp.size(); ++k) scores[comp[k]] = pi[k] * comp_mass;
    }

    return {{counts.item_ids(), std::move(scores), EstimatorTag::rating},
            comps.size() == 1,
            comps.size()};
}

std::vector<std::uint32_t> top_k_union(const Ranking& a, const Ranking& b, std::size_t K) {
    if (K > a.item_count() || K > b.item_count()) {
        throw std::invalid_argument("top_k_union: K exceeds item count");
    }
    std::unordered_map<std::string, std::uint32_t> index_of;
    index_of.reserve(a.item_count());
    for (std::uint32_t i = 0; i < a.item_count(); ++i) index_of.emplace(a.item_ids[i], i);
    std::vector<std::uint32_t> multiset;
    multiset.reserve(2 * K);
    const auto add_top = [&](const Ranking& r) {
        const auto order = r.order();
        for (std::size_t pos = 0; pos < K; ++pos) {
            auto it = index_of.find(r.item_ids[order[pos]]);
            if (it == index_of.end()) {
                throw std::invalid_argument("top_k_union: item sets differ");
            }
            multiset.push_back(it->second);
        }
    };
    add_top(a);
    add_top(b);
    return multiset;
}

UtilityReport utility_report(const SparseRatings& data, const Ranking& ranking, std::size_t K,
                             const std::vector<std::uint32_t>* union_context) {
    const std::size_t m = data.item_count();
    if (K > m || K == 0) {
        throw std::invalid_argument("utility_report: K must lie in 1..M");
    }
    if (ranking.item_ids != data.item_ids()) {
        throw std::invalid_argument("utility_report: ranking does not match the data items");
    }

    std::vector<bool> in_top(m, false);
    const auto order = ranking.order();
    for (std::size_t pos = 0; pos < K; ++pos) in_top[order[pos]] = true;

    // Multiplicity of each item in the quantile-utility context.
    std::vector<std::uint32_t> context_mult(m, 0);
    if (union_context != nullptr) {
        for (std::uint32_t idx : *union_context) context_mult[idx] += 1;
    } else {
        for (std::size_t pos = 0; pos < K; ++pos) context_mult[order[pos]] += 1;
    }

    double u1_sum = 0.0, u2_sum = 0.0, u3_sum = 0.0;
    std::size_t users = 0;
    for (std::size_t u = 0; u < data.user_count(); ++u) {
        const auto row = data.of_user(u);
        double overall_mean = 0.0;
        for (const auto& t : row) overall_mean += t.rating;
        overall_mean /= static_cast<double>(row.size());

        // The user's ratings over the context multiset.
        std::vector<std::pair<double, std::uint32_t>> context;  // (rating, multiplicity)
        std::size_t context_size = 0;
        for (const auto& t : row) {
            if (context_mult[t.item] > 0) {
                context.emplace_back(t.rating, context_mult[t.item]);
                context_size += context_mult[t.item];
            }
        }

        double u1 = 0.0, u2 = 0.0, u3 = 0.0;
        std::size_t eligible = 0;
        for (const auto& t : row) {
            if (!in_top[t.item]) continue;
            ++eligible;
            u1 += t.rating;
            u3 += t.rating >= overall_mean ? 1.0 : 0.0;
            std::size_t at_or_below = 0;
            for (const auto& [r, mult] : context) {
                if (r <= t.rating) at_or_below += mult;
            }
            u2 += static_cast<double>(at_or_below) / static_cast<double>(context_size);
        }
        if (eligible == 0) continue;
        ++users;
        u1_sum += u1 / static_cast<double>(eligible);
        u2_sum += u2 / static_cast<double>(eligible);
        u3_sum += u3 / static_cast<double>(eligible);
    }
    if (users == 0) {
        throw std::domain_error("utility_report: no user rated a top-K item");
    }
    const double d = static_cast<double>(users);
    return {u1_sum / d, u2_sum / d, u3_sum / d, users};
}

}  // namespace ratings
