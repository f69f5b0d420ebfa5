// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code = number of failures.
//
// usage: ratings_acceptance [--cli <path>] [--fixture <path>]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ratings/concordance.hpp"
#include "ratings/estimators.hpp"
#include "ratings/evaluation.hpp"
#include "ratings/incomplete.hpp"
#include "ratings/simulation.hpp"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

// --- criterion 1: transport cost equals the assignment-oracle optimum -------

Outcome transport_oracle_equivalence() {
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<std::size_t> size(1, 6);
    double worst = 0.0;
    for (int round = 0; round < 500; ++round) {
        const auto sa = support::random_samples(rng, size(rng));
        const auto sb = support::random_samples(rng, size(rng));
        const auto a = ratings::EmpiricalDistribution::from_samples(sa);
        const auto b = ratings::EmpiricalDistribution::from_samples(sb);
        const double w = ratings::w2_distance(a, b);
        worst = std::max(worst, std::abs(w * w - oracles::w2_squared_oracle(sa, sb)));
    }
    return {worst <= 1e-9, "max |w2^2 - oracle| = " + fmt(worst) + " over 500 pairs"};
}

// --- criterion 2: universal preferences collapse all estimators -------------

Outcome universal_preference_identity() {
    std::mt19937_64 rng(1002);
    std::uniform_int_distribution<std::size_t> n_users(1, 50), n_items(2, 200);
    double worst = 0.0;
    for (int round = 0; round < 200; ++round) {
        const auto data = support::universal_preference_instance(rng, n_users(rng), n_items(rng));
        const auto bundle = ratings::estimate_all(data);
        for (std::size_t j = 0; j < data.item_count(); ++j) {
            worst = std::max(worst,
                             std::abs(bundle.average.scores[j] - bundle.primitive.scores[j]));
            worst =
                std::max(worst, std::abs(bundle.average.scores[j] - bundle.rating.scores[j]));
        }
    }
    return {worst <= 1e-12, "max item-wise deviation = " + fmt(worst) + " over 200 instances"};
}

// --- criterion 3: fixed-slope closed forms -----------------------------------

Outcome closed_form_losses() {
    const auto result = ratings::affine_closed_form_experiment(2000, {1.2, 0.8, -1.0});
    const double target = (2.0 / 3.0) / (4.0 * std::sqrt(6.0));
    const double dev_a = std::abs(result.average_loss - target);
    const double dev_p = std::abs(result.primitive_loss - target);
    const bool pass = dev_a <= 1e-3 && dev_p <= 1e-3 && result.rating_loss <= 2e-3;
    return {pass, "avg dev " + fmt(dev_a) + ", primitive dev " + fmt(dev_p) + ", rating loss " +
                      fmt(result.rating_loss) + " (target " + fmt(target) + ")"};
}

// --- criterion 4: consistency rate of the rating estimator ------------------

Outcome complete_data_rate() {
    ratings::SimulationConfig config;
    config.atom_count = 20;
    config.replications = 200;
    config.alpha_law = ratings::AlphaLaw::gaussian_sign(0.75, 1.0, 1.0 / 16.0);
    config.seed = 1004;
    const std::vector<std::size_t> ladder{25, 100, 400, 1600};
    const auto tables = ratings::complete_rate_experiment_all(config, ladder);
    const double slope = tables.rating.loglog_slope;
    const double mean_a = tables.average.rows.back().mean_loss;
    const double mean_r = tables.rating.rows.back().mean_loss;
    const bool pass = slope >= -0.65 && slope <= -0.35 && mean_a > 3.0 * mean_r;
    return {pass, "rating slope " + fmt(slope) + "; at n=1600 avg loss " + fmt(mean_a) +
                      " vs rating loss " + fmt(mean_r)};
}

// --- criterion 5: incomplete-data bound direction ----------------------------

Outcome incomplete_data_bound() {
    ratings::SimulationConfig config;
    config.atom_count = 20;
    config.replications = 50;
    config.alpha_law = ratings::AlphaLaw::gaussian_sign(0.75, 1.0, 1.0 / 16.0);
    config.seed = 1005;
    const auto result = ratings::incomplete_rate_experiment(config, {100, 400, 1600});
    bool pass = true;
    std::string detail = "gap " + fmt(result.consensus_gap) + ";";
    for (std::size_t i = 0; i < result.table.rows.size(); ++i) {
        const auto& row = result.table.rows[i];
        pass = pass && row.mean_loss <= row.bound;
        detail += " n=" + std::to_string(row.n) + " q=" +
                  std::to_string(result.raters_per_item[i]) + " loss " + fmt(row.mean_loss) +
                  " <= " + fmt(row.bound) + ";";
    }
    return {pass, detail};
}

// --- criterion 6: rank-data reduction and covariance expansion --------------

Outcome rank_data_reduction() {
    std::mt19937_64 rng(1006);
    std::uniform_int_distribution<std::size_t> n_users(1, 10), n_items(2, 12);
    double worst_w = 0.0, worst_oracle = 0.0;
    for (int round = 0; round < 200; ++round) {
        const std::size_t n = n_users(rng), m = n_items(rng);
        const auto rows = support::random_rank_matrix(rng, n, m);
        std::vector<double> values(n * m);
        for (std::size_t k = 0; k < n; ++k) {
            const auto converted = ratings::ranks_to_ratings(rows[k]);
            for (std::size_t j = 0; j < m; ++j) values[k * m + j] = converted[j];
        }
        const ratings::CompleteRatings data(support::index_ids("u", n),
                                            support::index_ids("i", m), std::move(values));
        const auto report = ratings::concordance_report(data);
        worst_w = std::max(worst_w, std::abs(report.w_ratings - ratings::kendalls_w(rows)));
        worst_oracle =
            std::max(worst_oracle, std::abs(report.w_ratings - oracles::w_ratings_oracle(data)));
        worst_oracle =
            std::max(worst_oracle, std::abs(report.w_scale - oracles::w_scale_oracle(data)));
    }
    return {worst_w <= 1e-12 && worst_oracle <= 1e-9,
            "max |w_ratings - W| = " + fmt(worst_w) + ", max oracle deviation = " +
                fmt(worst_oracle)};
}

// --- criterion 7: concordance bounds and equality cases ----------------------

Outcome concordance_bounds() {
    std::mt19937_64 rng(1007);
    std::uniform_int_distribution<std::size_t> n_users(2, 8), n_items(2, 10);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool bounds_ok = true;
    const auto check_bounds = [&](const ratings::ConcordanceReport& report) {
        bounds_ok = bounds_ok && report.w_ratings >= 0.0 && report.w_ratings <= 1.0 + 1e-12 &&
                    report.w_scale > 0.0 && report.w_scale <= 1.0 + 1e-12;
    };
    double worst_translate = 0.0, worst_opposition = 0.0;
    for (int round = 0; round < 60; ++round) {
        const std::size_t n = n_users(rng), m = n_items(rng);
        std::vector<double> values(n * m);
        for (double& v : values) v = u(rng);
        const ratings::CompleteRatings data(support::index_ids("u", n),
                                            support::index_ids("i", m), std::move(values));
        check_bounds(ratings::concordance_report(data));
    }
    for (int round = 0; round < 20; ++round) {
        const auto translated = support::translated_profiles_instance(rng, n_users(rng), 8);
        const auto report = ratings::concordance_report(translated);
        check_bounds(report);
        worst_translate = std::max({worst_translate, std::abs(report.w_scale - 1.0),
                                    std::abs(report.w_ratings - 1.0)});

        const auto opposed = support::balanced_opposition_instance(rng, 1 + round % 3, 7);
        const auto opposed_report = ratings::concordance_report(opposed);
        check_bounds(opposed_report);
        worst_opposition = std::max(worst_opposition, std::abs(opposed_report.w_ratings));
    }
    const bool pass = bounds_ok && worst_translate <= 1e-12 && worst_opposition <= 1e-12;
    return {pass, std::string("bounds ") + (bounds_ok ? "held" : "violated") +
                      "; translated dev " + fmt(worst_translate) + "; opposition w_ratings " +
                      fmt(worst_opposition)};
}

// --- criterion 8: large-sample concordance against Monte Carlo limits -------

Outcome concordance_limits_check() {
    const auto law = ratings::AlphaLaw::gaussian_sign(0.75, 1.0, 1.0 / 16.0);
    const auto limits = ratings::concordance_limits(law, 1000000, 1008);

    ratings::SimulationConfig config;
    config.atom_count = 500;
    config.user_count = 5000;
    config.alpha_law = law;
    config.seed = 1008;
    const auto [data, truth] = ratings::generate_complete(config);
    const auto report = ratings::concordance_report(data);
    const double dev_scale = std::abs(report.w_scale - limits.w_scale_limit);
    const double dev_ratings = std::abs(report.w_ratings - limits.w_ratings_limit);
    const bool pass = dev_scale <= 0.02 && dev_ratings <= 0.02;
    return {pass, "w_scale " + fmt(report.w_scale) + " vs limit " + fmt(limits.w_scale_limit) +
                      "; w_ratings " + fmt(report.w_ratings) + " vs limit " +
                      fmt(limits.w_ratings_limit)};
}

// --- criterion 9: uniform convergence of barycenter quantiles and CDFs ------

Outcome glivenko_cantelli() {
    const ratings::GcMeasureLaw law{400, 1.0};
    const std::vector<std::size_t> ladder{3, 10, 100, 1000};
    const auto quantile_table = ratings::gc_quantile_experiment(law, ladder, 100, 1009);
    bool under_bound = true;
    std::string detail;
    for (const auto& row : quantile_table.rows) {
        under_bound = under_bound && row.mean_loss <= row.bound;
        detail += "n=" + std::to_string(row.n) + " " + fmt(row.mean_loss) + "<=" +
                  fmt(row.bound) + "; ";
    }
    const auto cdf_table = ratings::gc_cdf_experiment(law, ladder, 100, 1009);
    bool decreasing = true;
    detail += "cdf sup:";
    for (std::size_t i = 0; i < cdf_table.rows.size(); ++i) {
        if (i > 0) decreasing = decreasing && cdf_table.rows[i].mean_loss <
                                                  cdf_table.rows[i - 1].mean_loss;
        detail += " " + fmt(cdf_table.rows[i].mean_loss);
    }
    return {under_bound && decreasing, detail};
}

// --- criterion 10: the rating estimator beats the average --------------------

Outcome outperformance_replication() {
    ratings::SimulationConfig config;
    config.atom_count = 500;
    config.user_count = 200;
    config.replications = 100;
    config.alpha_law = ratings::AlphaLaw::gaussian_sign(0.75, 1.0, 1.0 / 16.0);
    config.seed = 1010;
    const auto result = ratings::reversal_outperformance_experiment(config);
    return {result.rating_win_fraction >= 0.95,
            "rating estimator wins " + fmt(100.0 * result.rating_win_fraction) +
                "% of 100 replications (mean losses: rating " + fmt(result.rating.mean_loss) +
                ", average " + fmt(result.average.mean_loss) + ")"};
}

// --- criterion 11: random-ranking distance baseline --------------------------

Outcome random_ranking_baseline() {
    std::mt19937_64 rng(1011);
    const std::size_t m = 50;
    const auto ids = support::index_ids("i", m);
    ratings::Ranking fixed{ids, {}};
    fixed.rank_of.resize(m);
    for (std::size_t i = 0; i < m; ++i) fixed.rank_of[i] = static_cast<int>(i + 1);
    double acc = 0.0;
    const std::size_t draws = 10000;
    ratings::Ranking random_ranking{ids, {}};
    for (std::size_t d = 0; d < draws; ++d) {
        random_ranking.rank_of = support::random_permutation(rng, m);
        acc += ratings::rank_distance_d1(random_ranking, fixed);
    }
    const double mean = acc / static_cast<double>(draws);
    return {std::abs(mean - 1.0 / 3.0) <= 0.01,
            "mean d1 = " + fmt(mean) + " (target 1/3 +- 0.01)"};
}

// --- criterion 12: CLI pipeline byte-stability on the bundled fixture -------

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome cli_pipeline_stability(const std::string& cli, const std::string& fixture) {
    if (cli.empty() || fixture.empty()) {
        return {false, "pass --cli and --fixture to run the pipeline check"};
    }
    if (!fs::exists(fixture)) {
        return {false, "fixture not found: " + fixture};
    }
    const fs::path work = "acceptance_work";
    fs::remove_all(work);
    fs::create_directories(work);

    const auto run = [&](const std::string& args, const fs::path& out) {
        const std::string cmd = cli + " " + args + " --out " + out.string() + " >/dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    const std::string common = "--input " + fixture + " --seed 42";
    for (const char* tag : {"run1", "run2"}) {
        const fs::path base = work / tag;
        if (run("aggregate " + common, base / "aggregate") != 0) {
            return {false, "aggregate run failed"};
        }
        if (run("concordance " + common, base / "concordance") != 0) {
            return {false, "concordance run failed"};
        }
        if (run("evaluate " + common + " --left average --right rating --top-k 10 --top-k 20",
                base / "evaluate") != 0) {
            return {false, "evaluate run failed"};
        }
    }

    std::size_t compared = 0;
    for (const char* sub : {"aggregate", "concordance", "evaluate"}) {
        for (const auto& entry : fs::directory_iterator(work / "run1" / sub)) {
            const auto name = entry.path().filename().string();
            if (name == "manifest.json") continue;  // records the differing out_dir
            const auto other = work / "run2" / sub / name;
            if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
                return {false, std::string(sub) + "/" + name + " differs between runs"};
            }
            ++compared;
        }
    }
    const bool pass = compared >= 10;  // scores, rankings, histograms, reports
    fs::remove_all(work);
    return {pass, std::to_string(compared) + " artifacts byte-identical across runs"};
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli, fixture;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--cli") cli = argv[i + 1];
        if (flag == "--fixture") fixture = argv[i + 1];
    }

    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "transport cost matches the assignment oracle", transport_oracle_equivalence},
        {2, "universal preferences: average = primitive = rating", universal_preference_identity},
        {3, "fixed-slope closed-form losses", closed_form_losses},
        {4, "complete-data consistency rate", complete_data_rate},
        {5, "incomplete-data loss bound", incomplete_data_bound},
        {6, "rank-data reduction and covariance oracle", rank_data_reduction},
        {7, "concordance bounds and equality cases", concordance_bounds},
        {8, "large-sample concordance limits", concordance_limits_check},
        {9, "barycenter uniform convergence", glivenko_cantelli},
        {10, "rating beats average under biased reversals", outperformance_replication},
        {11, "random-ranking d1 baseline", random_ranking_baseline},
        {12, "CLI pipeline byte-stability",
         [&] { return cli_pipeline_stability(cli, fixture); }},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome{false, "uncaught exception"};
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome.detail = std::string("exception: ") + e.what();
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        std::cout << (outcome.pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion.id
                  << ": " << criterion.name << ": " << outcome.detail << " ("
                  << fmt(elapsed.count()) << "s)\n";
        if (!outcome.pass) ++failures;
    }
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
              << "\n";
    return failures;
}
