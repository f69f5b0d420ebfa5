#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ratings/barycenter.hpp"
#include "ratings/estimators.hpp"
#include "ratings/incomplete.hpp"
#include "ratings/simulation.hpp"

using ratings::AlphaLaw;
using ratings::SimulationConfig;

TEST_CASE("all-agreeing slope one reproduces the truth under every estimator") {
    SimulationConfig config;
    config.atom_count = 10;
    config.user_count = 5;
    config.alpha_law = AlphaLaw::deterministic({1.0});
    const auto [data, truth] = ratings::generate_complete(config);
    const auto bundle = ratings::estimate_all(data);
    CHECK(ratings::l2_loss(bundle.average.scores, truth) <= 1e-14);
    CHECK(ratings::l2_loss(bundle.primitive.scores, truth) <= 1e-14);
    CHECK(ratings::l2_loss(bundle.rating.scores, truth) <= 1e-14);
}

TEST_CASE("all-contrarian slope keeps only the scale, not the order") {
    // Every user reverses preferences; no estimator can notice.
    SimulationConfig config;
    config.atom_count = 8;
    config.user_count = 4;
    config.alpha_law = AlphaLaw::deterministic({-1.0});
    const auto [data, truth] = ratings::generate_complete(config);
    const auto bundle = ratings::estimate_all(data);
    // The barycenter still recovers the atom grid exactly.
    const auto mu = ratings::EmpiricalDistribution::from_samples(truth);
    CHECK(ratings::w2_distance(bundle.barycenter.distribution, mu) <= 1e-12);
    // But the reported order is reversed: the loss equals that of x -> 1-x.
    std::vector<double> reflected(truth.rbegin(), truth.rend());
    CHECK(ratings::l2_loss(bundle.rating.scores, truth) ==
          doctest::Approx(ratings::l2_loss(reflected, truth)).epsilon(1e-12));
}

TEST_CASE("seed determinism and independence of draws") {
    SimulationConfig config;
    config.atom_count = 6;
    config.user_count = 12;
    config.alpha_law = AlphaLaw::gaussian_sign(0.75, 1.0, 1.0 / 16.0);
    config.seed = 99;
    const auto [a, truth_a] = ratings::generate_complete(config);
    const auto [b, truth_b] = ratings::generate_complete(config);
    const auto as_vector = [](std::span<const double> s) {
        return std::vector<double>(s.begin(), s.end());
    };
    CHECK(as_vector(a.values()) == as_vector(b.values()));
    CHECK(truth_a == truth_b);
    config.seed = 100;
    const auto [c, truth_c] = ratings::generate_complete(config);
    CHECK(as_vector(a.values()) != as_vector(c.values()));
}

TEST_CASE("incomplete generation with q = n matches the complete data") {
    SimulationConfig config;
    config.atom_count = 7;
    config.user_count = 6;
    config.alpha_law = AlphaLaw::gaussian_sign(0.75, 1.0, 1.0 / 16.0);
    const auto [complete, truth] = ratings::generate_complete(config);
    const auto [sparse, sparse_truth] = ratings::generate_incomplete(config, {6});
    CHECK(truth == sparse_truth);
    REQUIRE(sparse.is_complete());
    const auto as_vec = [](std::span<const double> s) {
        return std::vector<double>(s.begin(), s.end());
    };
    CHECK(as_vec(sparse.to_complete().values()) == as_vec(complete.values()));

    CHECK_THROWS_AS(ratings::generate_incomplete(config, {7}), std::invalid_argument);
    CHECK_THROWS_AS(ratings::generate_incomplete(config, {0}), std::invalid_argument);
}

TEST_CASE("single-rater assignment still yields defined estimators") {
    SimulationConfig config;
    config.atom_count = 40;
    config.user_count = 3;
    config.alpha_law = AlphaLaw::deterministic({1.0, 0.9, 1.1});
    const auto [sparse, truth] = ratings::generate_incomplete(config, {1});
    for (std::size_t i = 0; i < sparse.item_count(); ++i) {
        CHECK(sparse.of_item(i).size() == 1);
    }
    const auto scores = ratings::incomplete_rating_scores(sparse);
    CHECK(scores.scores.size() == truth.size());
}

TEST_CASE("consensus gap of the biased reversal law") {
    SimulationConfig config;
    config.atom_count = 20;
    const auto atoms = config.atoms();
    const auto gap = ratings::estimate_consensus_gap(
        atoms, AlphaLaw::two_point(0.75, 1.0), 40000, 17);
    // g(x) = 3/4 x + 1/4 (1 - x) on the symmetric grid, so adjacent gaps are
    // half the grid spacing 1/40.
    CHECK(gap.min_gap == doctest::Approx(0.5 / 40.0).epsilon(0.15));
    for (std::size_t j = 1; j < gap.g_values.size(); ++j) {
        CHECK(gap.g_values[j] > gap.g_values[j - 1]);
    }
}

TEST_CASE("barycenter consistency: distance to truth shrinks at the CLT rate") {
    SimulationConfig config;
    config.atom_count = 12;
    config.replications = 60;
    config.alpha_law = AlphaLaw::gaussian_sign(0.75, 1.0, 1.0 / 16.0);
    config.seed = 3;
    std::vector<double> mean_w2;
    for (const std::size_t n : {25u, 100u, 400u}) {
        double acc = 0.0;
        for (std::size_t rep = 0; rep < config.replications; ++rep) {
            SimulationConfig c = config;
            c.user_count = n;
            c.seed = ratings::derive_seed(config.seed, n * 1000 + rep);
            const auto [data, truth] = ratings::generate_complete(c);
            const auto bundle = ratings::estimate_all(data);
            const auto mu = ratings::EmpiricalDistribution::from_samples(truth);
            acc += ratings::w2_distance(bundle.barycenter.distribution, mu);
        }
        mean_w2.push_back(acc / static_cast<double>(config.replications));
    }
    const double slope01 = std::log(mean_w2[1] / mean_w2[0]) / std::log(100.0 / 25.0);
    const double slope12 = std::log(mean_w2[2] / mean_w2[1]) / std::log(400.0 / 100.0);
    CHECK(slope01 == doctest::Approx(-0.5).epsilon(0.4));
    CHECK(slope12 == doctest::Approx(-0.5).epsilon(0.4));
}

TEST_CASE("gaussian law location correction keeps the mean absolute slope at one") {
    const auto law = AlphaLaw::gaussian_sign(0.75, 1.0, 1.0 / 16.0);
    CHECK(std::abs(law.location_correction()) <= 1e-3);
    CHECK(ratings::truncated_abs_normal_mean(law.corrected_location(), 0.25) ==
          doctest::Approx(1.0).epsilon(1e-12));
    std::mt19937_64 rng(23);
    double acc = 0.0;
    const std::size_t draws = 400000;
    for (std::size_t d = 0; d < draws; ++d) acc += std::abs(law.draw(d, rng));
    CHECK(acc / static_cast<double>(draws) == doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("gc law: degenerate spread gives zero sup distance") {
    const ratings::GcMeasureLaw degenerate{50, 0.0};
    const auto table = ratings::gc_quantile_experiment(degenerate, {1, 4}, 5, 7);
    for (const auto& row : table.rows) {
        CHECK(row.mean_loss == 0.0);
    }
    const auto cdf_table = ratings::gc_cdf_experiment(degenerate, {1, 4}, 5, 7);
    for (const auto& row : cdf_table.rows) {
        CHECK(row.mean_loss == 0.0);
    }
}

TEST_CASE("gc quantile bound arithmetic") {
    const ratings::GcMeasureLaw law{100, 1.0};
    const auto table = ratings::gc_quantile_experiment(law, {1000}, 3, 9);
    CHECK(table.rows[0].bound == doctest::Approx(0.33245).epsilon(1e-3));
    CHECK(table.rows[0].mean_loss <= 1.0);
}

TEST_CASE("small outperformance run favors the rating estimator") {
    SimulationConfig config;
    config.atom_count = 60;
    config.user_count = 80;
    config.replications = 12;
    config.alpha_law = AlphaLaw::gaussian_sign(0.75, 1.0, 1.0 / 16.0);
    config.seed = 5;
    const auto result = ratings::reversal_outperformance_experiment(config);
    CHECK(result.rating.mean_loss < result.average.mean_loss);
    CHECK(result.rating_win_fraction > 0.9);
}
