#include "ratings/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ratings/incomplete.hpp"

namespace ratings {

namespace {

constexpr double kRatingSlack = 1e-9;  // FP noise allowance at the [0,1] boundary

std::string padded_id(const char* prefix, std::size_t index, std::size_t count) {
    std::size_t digits = 1;
    for (std::size_t c = count; c >= 10; c /= 10) ++digits;
    std::string num = std::to_string(index + 1);
    return std::string(prefix) + std::string(digits - num.size(), '0') + num;
}

double clip_rating(double r) {
    if (r >= 0.0 && r <= 1.0) return r;
    if (r > -kRatingSlack && r < 1.0 + kRatingSlack) return std::clamp(r, 0.0, 1.0);
    throw std::invalid_argument("generate: parameters push ratings outside [0,1]");
}

double sample_sd(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double acc = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

double loglog_slope(const std::vector<RateRow>& rows) {
    if (rows.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rows) {
        const double x = std::log(static_cast<double>(r.n));
        const double y = std::log(r.mean_loss);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double k = static_cast<double>(rows.size());
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    // splitmix64 step over base + stream
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<double> SimulationConfig::atoms() const {
    if (!atom_support.empty()) {
        if (atom_support.size() != atom_count) {
            throw std::invalid_argument("SimulationConfig: atom_support size mismatch");
        }
        std::vector<double> xs = atom_support;
        std::sort(xs.begin(), xs.end());
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (!(xs[j] >= 0.0 && xs[j] <= 1.0) || (j > 0 && xs[j] == xs[j - 1])) {
                throw std::invalid_argument("SimulationConfig: atoms must be distinct in [0,1]");
            }
        }
        return xs;
    }
    if (atom_count < 2) {
        throw std::invalid_argument("SimulationConfig: need at least two atoms");
    }
    // Midpoint grid over the central interval [1/4, 3/4].
    std::vector<double> xs(atom_count);
    const double h = 0.5 / static_cast<double>(atom_count);
    for (std::size_t j = 0; j < atom_count; ++j) {
        xs[j] = 0.25 + (static_cast<double>(j) + 0.5) * h;
    }
    return xs;
}

std::pair<CompleteRatings, std::vector<double>> generate_complete(const SimulationConfig& config) {
    if (config.user_count == 0) {
        throw std::invalid_argument("generate_complete: need at least one user");
    }
    const std::vector<double> xs = config.atoms();
    const std::size_t n = config.user_count;
    const std::size_t m = xs.size();

    std::mt19937_64 rng(config.seed);
    std::vector<double> alphas(n);
    for (std::size_t k = 0; k < n; ++k) alphas[k] = config.alpha_law.draw(k, rng);

    std::vector<double> values(n * m);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < m; ++j) {
            values[k * m + j] = clip_rating(alphas[k] * (xs[j] - 0.5) + 0.5);
        }
    }
    std::vector<std::string> user_ids(n), item_ids(m);
    for (std::size_t k = 0; k < n; ++k) user_ids[k] = padded_id("u", k, n);
    for (std::size_t j = 0; j < m; ++j) item_ids[j] = padded_id("i", j, m);
    return {CompleteRatings(std::move(user_ids), std::move(item_ids), std::move(values)), xs};
}

std::pair<SparseRatings, std::vector<double>> generate_incomplete(
    const SimulationConfig& config, const AssignmentConfig& assignment) {
    const std::size_t q = assignment.raters_per_item;
    if (q == 0 || q > config.user_count) {
        throw std::invalid_argument("generate_incomplete: raters_per_item must lie in 1..n");
    }
    auto [complete, truth] = generate_complete(config);
    const std::size_t n = complete.user_count();
    const std::size_t m = complete.item_count();

    // Assignment draws come from a stream separate from the profile draws.
    std::mt19937_64 rng(derive_seed(config.seed, 0x5eed));
    std::vector<std::uint32_t> pool(n);
    std::vector<RatingTriple> triples;
    triples.reserve(m * q);
    for (std::uint32_t j = 0; j < m; ++j) {
        std::iota(pool.begin(), pool.end(), 0u);
        for (std::size_t pick = 0; pick < q; ++pick) {  // partial Fisher-Yates
            std::uniform_int_distribution<std::size_t> d(pick, n - 1);
            std::swap(pool[pick], pool[d(rng)]);
            triples.push_back({pool[pick], j, complete.at(pool[pick], j)});
        }
    }
    // Users left with no items would make the estimator undefined; with the
    // balanced assignment this only happens for tiny q * M.
    std::vector<bool> seen(n, false);
    for (const auto& t : triples) seen[t.user] = true;
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw std::invalid_argument("generate_incomplete: a user received no items; raise q or M");
    }
    return {SparseRatings::from_indexed(complete.user_ids(), complete.item_ids(),
                                        std::move(triples)),
            truth};
}

ConsensusGap estimate_consensus_gap(const std::vector<double>& atoms, const AlphaLaw& law,
                                    std::size_t draws, std::uint64_t seed) {
    if (atoms.size() < 2 || draws == 0) {
        throw std::invalid_argument("estimate_consensus_gap: need >= 2 atoms and >= 1 draw");
    }
    const auto mu = EmpiricalDistribution::from_samples(atoms);
    std::mt19937_64 rng(seed);
    std::vector<double> g(atoms.size(), 0.0);
    std::vector<double> row(atoms.size());
    for (std::size_t d = 0; d < draws; ++d) {
        const double alpha = law.draw(d, rng);
        for (std::size_t j = 0; j < atoms.size(); ++j) {
            row[j] = clip_rating(alpha * (atoms[j] - 0.5) + 0.5);
        }
        const auto user = EmpiricalDistribution::from_samples(row);
        for (std::size_t j = 0; j < atoms.size(); ++j) {
            g[j] += mu.quantile_clamped(user.cdf(row[j]));
        }
    }
    for (double& v : g) v /= static_cast<double>(draws);
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < g.size(); ++j) {
        min_gap = std::min(min_gap, g[j] - g[j - 1]);
    }
    return {std::move(g), min_gap};
}

CompleteRateTables complete_rate_experiment_all(const SimulationConfig& config,
                                                const std::vector<std::size_t>& n_ladder) {
    if (n_ladder.empty() || config.replications == 0) {
        throw std::invalid_argument("complete_rate_experiment: empty ladder or no replications");
    }
    CompleteRateTables tables;
    const auto reps = static_cast<std::ptrdiff_t>(config.replications);
    for (std::size_t li = 0; li < n_ladder.size(); ++li) {
        const std::size_t n = n_ladder[li];
        std::vector<double> loss_a(config.replications), loss_p(config.replications),
            loss_r(config.replications);
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t rep = 0; rep < reps; ++rep) {
            SimulationConfig c = config;
            c.user_count = n;
            c.seed = derive_seed(config.seed, li * 1000003ULL + static_cast<std::size_t>(rep));
            const auto [data, truth] = generate_complete(c);
            const auto bundle = estimate_all(data);
            loss_a[static_cast<std::size_t>(rep)] = l2_loss(bundle.average.scores, truth);
            loss_p[static_cast<std::size_t>(rep)] = l2_loss(bundle.primitive.scores, truth);
            loss_r[static_cast<std::size_t>(rep)] = l2_loss(bundle.rating.scores, truth);
        }
        const auto push_row = [&](RateTable& t, const std::vector<double>& losses) {
            const double mean =
                std::accumulate(losses.begin(), losses.end(), 0.0) / losses.size();
            t.rows.push_back({n, config.replications, mean, sample_sd(losses, mean),
                              std::numeric_limits<double>::quiet_NaN()});
        };
        push_row(tables.average, loss_a);
        push_row(tables.primitive, loss_p);
        push_row(tables.rating, loss_r);
    }
    tables.average.loglog_slope = loglog_slope(tables.average.rows);
    tables.primitive.loglog_slope = loglog_slope(tables.primitive.rows);
    tables.rating.loglog_slope = loglog_slope(tables.rating.rows);
    return tables;
}

RateTable complete_rate_experiment(const SimulationConfig& config,
                                   const std::vector<std::size_t>& n_ladder, EstimatorTag tag) {
    auto tables = complete_rate_experiment_all(config, n_ladder);
    switch (tag) {
        case EstimatorTag::average: return std::move(tables.average);
        case EstimatorTag::primitive: return std::move(tables.primitive);
        case EstimatorTag::rating: return std::move(tables.rating);
    }
    throw std::logic_error("complete_rate_experiment: unknown tag");
}

IncompleteRateResult incomplete_rate_experiment(const SimulationConfig& config,
                                                const std::vector<std::size_t>& n_ladder) {
    if (n_ladder.empty() || config.replications == 0) {
        throw std::invalid_argument("incomplete_rate_experiment: empty ladder or no replications");
    }
    const auto atoms = config.atoms();
    const auto gap = estimate_consensus_gap(atoms, config.alpha_law, 100000,
                                            derive_seed(config.seed, 0xde17a));
    if (!(gap.min_gap > 0.0)) {
        throw std::invalid_argument("incomplete_rate_experiment: consensus gap is not positive");
    }
    const double m = static_cast<double>(atoms.size());
    IncompleteRateResult result;
    result.consensus_gap = gap.min_gap;
    const auto reps = static_cast<std::ptrdiff_t>(config.replications);
    for (std::size_t li = 0; li < n_ladder.size(); ++li) {
        const std::size_t n = n_ladder[li];
        const double needed = 64.0 / (gap.min_gap * gap.min_gap) * std::log(static_cast<double>(n));
        const std::size_t q = std::min<std::size_t>(n, static_cast<std::size_t>(std::ceil(needed)));
        result.raters_per_item.push_back(q);

        std::vector<double> losses(config.replications);
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t rep = 0; rep < reps; ++rep) {
            SimulationConfig c = config;
            c.user_count = n;
            c.seed = derive_seed(config.seed, 7000003ULL * (li + 1) + static_cast<std::size_t>(rep));
            const auto [data, truth] = generate_incomplete(c, {q});
            const auto scores = incomplete_rating_scores(data);
            losses[static_cast<std::size_t>(rep)] = l2_loss(scores.scores, truth);
        }
        const double mean = std::accumulate(losses.begin(), losses.end(), 0.0) / losses.size();
        result.table.rows.push_back({n, config.replications, mean, sample_sd(losses, mean),
                                     7.0 * m / std::sqrt(static_cast<double>(n))});
    }
    result.table.loglog_slope = loglog_slope(result.table.rows);
    return result;
}

ClosedFormResult affine_closed_form_experiment(std::size_t atom_count,
                                               const std::vector<double>& alphas) {
    SimulationConfig config;
    config.atom_count = atom_count;
    config.user_count = alphas.size();
    config.alpha_law = AlphaLaw::deterministic(alphas);
    const auto [data, truth] = generate_complete(config);
    const auto bundle = estimate_all(data);

    // The closed forms are Lebesgue integrals over the quality interval
    // [1/4, 3/4]; the matching Riemann sum carries the interval width.
    const double width = 0.5;
    const auto lebesgue_loss = [&](std::span<const double> scores) {
        double acc = 0.0;
        for (std::size_t j = 0; j < truth.size(); ++j) {
            const double d = scores[j] - truth[j];
            acc += d * d;
        }
        return std::sqrt(width * acc / static_cast<double>(truth.size()));
    };

    double mean = 0.0, mean_abs = 0.0, mean_sgn = 0.0;
    for (double a : alphas) {
        mean += a;
        mean_abs += std::abs(a);
        mean_sgn += a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
    }
    const double n = static_cast<double>(alphas.size());
    mean /= n;
    mean_abs /= n;
    mean_sgn /= n;
    const double c = 1.0 / (4.0 * std::sqrt(6.0));

    return {lebesgue_loss(bundle.average.scores),
            lebesgue_loss(bundle.primitive.scores),
            lebesgue_loss(bundle.rating.scores),
            c * std::abs(mean - 1.0),
            c * std::abs(mean_abs * mean_sgn - 1.0)};
}

OutperformanceResult reversal_outperformance_experiment(const SimulationConfig& config) {
    if (config.replications == 0) {
        throw std::invalid_argument("reversal_outperformance_experiment: no replications");
    }
    const auto reps = static_cast<std::ptrdiff_t>(config.replications);
    std::vector<double> loss_a(config.replications), loss_r(config.replications);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t rep = 0; rep < reps; ++rep) {
        SimulationConfig c = config;
        c.seed = derive_seed(config.seed, static_cast<std::uint64_t>(rep));
        const auto [data, truth] = generate_complete(c);
        const auto bundle = estimate_all(data);
        loss_a[static_cast<std::size_t>(rep)] = l2_loss(bundle.average.scores, truth);
        loss_r[static_cast<std::size_t>(rep)] = l2_loss(bundle.rating.scores, truth);
    }
    std::size_t wins = 0;
    for (std::size_t rep = 0; rep < config.replications; ++rep) {
        if (loss_r[rep] < loss_a[rep]) ++wins;
    }
    const double mean_a = std::accumulate(loss_a.begin(), loss_a.end(), 0.0) / loss_a.size();
    const double mean_r = std::accumulate(loss_r.begin(), loss_r.end(), 0.0) / loss_r.size();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {{config.user_count, config.replications, mean_a, sample_sd(loss_a, mean_a), nan},
            {config.user_count, config.replications, mean_r, sample_sd(loss_r, mean_r), nan},
            static_cast<double>(wins) / static_cast<double>(config.replications)};
}

EmpiricalDistribution GcMeasureLaw::draw(std::mt19937_64& rng) const {
    if (atom_count < 2 || !(tilt_spread >= 0.0 && tilt_spread <= 1.0)) {
        throw std::invalid_argument("GcMeasureLaw: invalid parameters");
    }
    double t = 0.0;
    if (tilt_spread > 0.0) {
        std::uniform_real_distribution<double> u(-tilt_spread, tilt_spread);
        t = u(rng);
    }
    std::vector<double> levels(atom_count), values(atom_count);
    for (std::size_t j = 0; j < atom_count; ++j) {
        const double p = static_cast<double>(j + 1) / static_cast<double>(atom_count);
        levels[j] = p;
        values[j] = p + t * (p * p - p);
    }
    return QuantileGrid(std::move(levels), std::move(values)).materialize();
}

EmpiricalDistribution GcMeasureLaw::population_barycenter() const {
    std::vector<double> levels(atom_count), values(atom_count);
    for (std::size_t j = 0; j < atom_count; ++j) {
        const double p = static_cast<double>(j + 1) / static_cast<double>(atom_count);
        levels[j] = p;
        values[j] = p;
    }
    return QuantileGrid(std::move(levels), std::move(values)).materialize();
}

namespace {

RateTable gc_experiment(const GcMeasureLaw& law, const std::vector<std::size_t>& n_ladder,
                        std::size_t replications, std::uint64_t seed, bool quantile_sup) {
    if (n_ladder.empty() || replications == 0) {
        throw std::invalid_argument("gc experiment: empty ladder or no replications");
    }
    const auto population = law.population_barycenter();
    RateTable table;
    const auto reps = static_cast<std::ptrdiff_t>(replications);
    for (std::size_t li = 0; li < n_ladder.size(); ++li) {
        const std::size_t n = n_ladder[li];
        std::vector<double> sups(replications);
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t rep = 0; rep < reps; ++rep) {
            std::mt19937_64 rng(
                derive_seed(seed, 5000011ULL * (li + 1) + static_cast<std::size_t>(rep)));
            std::vector<EmpiricalDistribution> draws;
            draws.reserve(n);
            for (std::size_t k = 0; k < n; ++k) draws.push_back(law.draw(rng));
            const auto bary = frechet_mean(draws);
            sups[static_cast<std::size_t>(rep)] =
                quantile_sup ? sup_quantile_distance(bary.distribution, population)
                             : sup_cdf_distance(bary.distribution, population);
        }
        const double mean = std::accumulate(sups.begin(), sups.end(), 0.0) / sups.size();
        const double bound = quantile_sup
                                 ? 4.0 * std::sqrt(std::log(static_cast<double>(n)) /
                                                   static_cast<double>(n))
                                 : std::numeric_limits<double>::quiet_NaN();
        table.rows.push_back({n, replications, mean, sample_sd(sups, mean), bound});
    }
    table.loglog_slope = loglog_slope(table.rows);
    return table;
}

}  // namespace

RateTable gc_quantile_experiment(const GcMeasureLaw& law, const std::vector<std::size_t>& n_ladder,
                                 std::size_t replications, std::uint64_t seed) {
    return gc_experiment(law, n_ladder, replications, seed, true);
}

RateTable gc_cdf_experiment(const GcMeasureLaw& law, const std::vector<std::size_t>& n_ladder,
                            std::size_t replications, std::uint64_t seed) {
    return gc_experiment(law, n_ladder, replications, seed, false);
}

}  // namespace ratings
