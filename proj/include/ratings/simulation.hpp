#pragma once

#include <cstdint>
#include <utility>

#include "ratings/alpha_law.hpp"
#include "ratings/estimators.hpp"
#include "ratings/rating_data.hpp"

namespace ratings {

/// Synthetic-data generator for the affine scale family: item quality scores
/// are the atoms of an equal-weight measure, and user k rates item x as
/// alpha_k (x - 1/2) + 1/2.
struct SimulationConfig {
    std::size_t atom_count = 20;  // M >= 2
    /// Explicit atom locations; empty selects the midpoint grid on [1/4, 3/4].
    std::vector<double> atom_support;
    std::size_t user_count = 100;  // n >= 1
    AlphaLaw alpha_law = AlphaLaw::deterministic({1.0});
    std::size_t replications = 100;
    std::uint64_t seed = 1;

    std::vector<double> atoms() const;
};

struct AssignmentConfig {
    std::size_t raters_per_item;  // q, uniform random subsets independent of profiles
};

/// Complete data: every user rates every atom. Reproducible from the seed.
std::pair<CompleteRatings, std::vector<double>> generate_complete(const SimulationConfig& config);

/// Complete generation followed by a uniform random size-q rater subset per
/// item, drawn independently of the profiles.
std::pair<SparseRatings, std::vector<double>> generate_incomplete(
    const SimulationConfig& config, const AssignmentConfig& assignment);

/// Monte Carlo estimate of the consensus score g at each atom and the minimal
/// gap between adjacent atoms' consensus scores.
struct ConsensusGap {
    std::vector<double> g_values;  // aligned with the atoms, ascending order
    double min_gap;
};

ConsensusGap estimate_consensus_gap(const std::vector<double>& atoms, const AlphaLaw& law,
                                    std::size_t draws, std::uint64_t seed);

/// One row of a rate experiment table.
struct RateRow {
    std::size_t n;
    std::size_t replications;
    double mean_loss;
    double sd_loss;
    double bound;  // NaN when the experiment states none
};

struct RateTable {
    std::vector<RateRow> rows;
    double loglog_slope;  // least-squares slope of log mean loss against log n
};

/// Mean L2 estimation loss per sample size, all three complete-data
/// estimators on the same replications.
struct CompleteRateTables {
    RateTable average;
    RateTable primitive;
    RateTable rating;
};

CompleteRateTables complete_rate_experiment_all(const SimulationConfig& config,
                                                const std::vector<std::size_t>& n_ladder);

RateTable complete_rate_experiment(const SimulationConfig& config,
                                   const std::vector<std::size_t>& n_ladder, EstimatorTag tag);

/// Incomplete-data rate check: per n, each item is rated by
/// q = min(n, ceil((64 / gap^2) log n)) users and the mean loss of the
/// adjusted estimator is compared against the bound 7M / sqrt(n).
struct IncompleteRateResult {
    RateTable table;
    double consensus_gap;
    std::vector<std::size_t> raters_per_item;  // per ladder entry
};

IncompleteRateResult incomplete_rate_experiment(const SimulationConfig& config,
                                                const std::vector<std::size_t>& n_ladder);

/// Fixed-slope instance against the closed-form losses of the affine family.
/// Losses here are Lebesgue L2 integrals over the quality interval, the
/// quantity the closed forms evaluate.
struct ClosedFormResult {
    double average_loss;
    double primitive_loss;
    double rating_loss;
    double average_closed_form;
    double primitive_closed_form;
};

ClosedFormResult affine_closed_form_experiment(std::size_t atom_count,
                                               const std::vector<double>& alphas);

/// Gaussian scaling with biased random reversal: compares the mean L2 loss of
/// the final rating estimator against the plain average per replication.
struct OutperformanceResult {
    RateRow average;
    RateRow rating;
    double rating_win_fraction;  // replications where the rating loss is strictly lower
};

OutperformanceResult reversal_outperformance_experiment(const SimulationConfig& config);

/// Law of random measures for the barycenter uniform-convergence checks:
/// quantile p + t (p^2 - p) with t ~ Uniform(-spread, spread), atomized on a
/// level grid of atom_count points. Its population barycenter is the uniform
/// measure on that grid.
struct GcMeasureLaw {
    std::size_t atom_count = 400;
    double tilt_spread = 1.0;  // 0 gives the degenerate (deterministic) law

    EmpiricalDistribution draw(std::mt19937_64& rng) const;
    EmpiricalDistribution population_barycenter() const;
};

/// Mean sup |quantile difference| between the empirical and population
/// barycenters, with the 4 sqrt(log n / n) bound per row.
RateTable gc_quantile_experiment(const GcMeasureLaw& law, const std::vector<std::size_t>& n_ladder,
                                 std::size_t replications, std::uint64_t seed);

/// Mean sup |CDF difference|; no quantitative bound.
RateTable gc_cdf_experiment(const GcMeasureLaw& law, const std::vector<std::size_t>& n_ladder,
                            std::size_t replications, std::uint64_t seed);

/// Stream-split helper so each replication owns its own generator state.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace ratings
