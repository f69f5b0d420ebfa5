#include "ratings/estimators.hpp"

#include "ratings/accumulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ratings {

std::vector<EmpiricalDistribution> user_distributions(const CompleteRatings& data) {
    const auto n = static_cast<std::ptrdiff_t>(data.user_count());
    std::vector<EmpiricalDistribution> dists(data.user_count(),
                                             EmpiricalDistribution::from_samples({0.0}));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t u = 0; u < n; ++u) {
        dists[static_cast<std::size_t>(u)] =
            EmpiricalDistribution::from_samples(data.row(static_cast<std::size_t>(u)));
    }
    return dists;
}

namespace kernels {

std::vector<double> transported_item_means(
    const CompleteRatings& data, std::span<const EmpiricalDistribution> dists,
    const EmpiricalDistribution& barycenter) {
    const std::size_t n = data.user_count();
    const auto m = static_cast<std::ptrdiff_t>(data.item_count());
    std::vector<double> out(data.item_count());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < m; ++j) {
        std::vector<double> transported(n);
        for (std::size_t k = 0; k < n; ++k) {
            transported[k] =
                barycenter.quantile_clamped(dists[k].cdf(data.at(k, static_cast<std::size_t>(j))));
        }
        out[static_cast<std::size_t>(j)] = multiset_sum(transported) / static_cast<double>(n);
    }
    return out;
}

}  // namespace kernels

ScoreTable average_scores(const CompleteRatings& data) {
    const std::size_t n = data.user_count();
    const auto m = static_cast<std::ptrdiff_t>(data.item_count());
    std::vector<double> scores(data.item_count());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < m; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += data.at(k, static_cast<std::size_t>(j));
        scores[static_cast<std::size_t>(j)] = s / static_cast<double>(n);
    }
    return {data.item_ids(), std::move(scores), EstimatorTag::average};
}

ScoreTable primitive_scores(const CompleteRatings& data) {
    const auto dists = user_distributions(data);
    const auto bary = frechet_mean(dists);
    return {data.item_ids(), kernels::transported_item_means(data, dists, bary.distribution),
            EstimatorTag::primitive};
}

namespace {

std::vector<double> rescale_onto_barycenter(std::span<const double> primitive,
                                            const EmpiricalDistribution& barycenter) {
    const auto nu = EmpiricalDistribution::from_samples(primitive);
    std::vector<double> out(primitive.size());
    for (std::size_t j = 0; j < primitive.size(); ++j) {
        out[j] = barycenter.quantile_clamped(nu.cdf(primitive[j]));
    }
    return out;
}

}  // namespace

ScoreTable rating_scores(const CompleteRatings& data) {
    return estimate_all(data).rating;
}

EstimatorBundle estimate_all(const CompleteRatings& data) {
    const auto dists = user_distributions(data);
    auto bary = frechet_mean(dists);

    EstimatorBundle bundle{average_scores(data),
                           {data.item_ids(),
                            kernels::transported_item_means(data, dists, bary.distribution),
                            EstimatorTag::primitive},
                           {data.item_ids(), {}, EstimatorTag::rating},
                           std::move(bary)};
    bundle.rating.scores =
        rescale_onto_barycenter(bundle.primitive.scores, bundle.barycenter.distribution);
    return bundle;
}

std::vector<double> loss_rearrangement(std::span<const double> estimated,
                                       std::span<const double> truth) {
    const std::size_t m = truth.size();
    // Atom order = truth order; rank estimates stably within it.
    std::vector<std::size_t> by_truth(m);
    std::iota(by_truth.begin(), by_truth.end(), 0);
    std::sort(by_truth.begin(), by_truth.end(),
              [&](std::size_t a, std::size_t b) { return truth[a] < truth[b]; });

    std::vector<std::size_t> est_order(by_truth);
    std::stable_sort(est_order.begin(), est_order.end(), [&](std::size_t a, std::size_t b) {
        return estimated[a] < estimated[b];
    });
    // est_order[r] = item whose estimate has rank r; that item's atom is sent
    // to the atom of rank r.
    std::vector<double> sigma(m);
    std::vector<double> sorted_truth(m);
    for (std::size_t r = 0; r < m; ++r) sorted_truth[r] = truth[by_truth[r]];
    for (std::size_t r = 0; r < m; ++r) sigma[est_order[r]] = sorted_truth[r];
    return sigma;
}

double l2_loss(std::span<const double> estimated, std::span<const double> truth) {
    if (estimated.size() != truth.size() || truth.empty()) {
        throw std::invalid_argument("l2_loss: size mismatch");
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < truth.size(); ++j) {
        const double d = estimated[j] - truth[j];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(truth.size()));
}

LossDecomposition loss_decomposition(const ScoreTable& estimated,
                                     std::span<const double> truth,
                                     const EmpiricalDistribution& mu) {
    const std::size_t m = estimated.scores.size();
    if (truth.size() != m || m == 0) {
        throw std::invalid_argument("loss_decomposition: item sets mismatch");
    }
    if (mu.atom_count() != m) {
        throw std::invalid_argument(
            "loss_decomposition: mu must have one atom per distinct truth value");
    }
    // mu atoms must be exactly the truth values (distinct by precondition).
    std::vector<double> sorted_truth(truth.begin(), truth.end());
    std::sort(sorted_truth.begin(), sorted_truth.end());
    const auto atoms = mu.atoms();
    for (std::size_t j = 0; j < m; ++j) {
        if (atoms[j].location != sorted_truth[j]) {
            throw std::invalid_argument("loss_decomposition: mu atoms do not match truth values");
        }
        if (j > 0 && sorted_truth[j] == sorted_truth[j - 1]) {
            throw std::invalid_argument("loss_decomposition: duplicate truth values");
        }
    }

    double total_sq = 0.0;
    std::vector<EmpiricalDistribution::Atom> pushed(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double d = estimated.scores[j] - truth[j];
        const double w = mu.atoms()[std::lower_bound(sorted_truth.begin(), sorted_truth.end(),
                                                     truth[j]) -
                                    sorted_truth.begin()]
                             .weight;
        total_sq += w * d * d;
        pushed[j] = {estimated.scores[j], w};
    }
    const double scale = w2_distance(EmpiricalDistribution::from_atoms(std::move(pushed)), mu);
    const double order_sq = std::max(total_sq - scale * scale, 0.0);
    return {std::sqrt(total_sq), scale, std::sqrt(order_sq)};
}

}  // namespace ratings
