#include "ratings/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ratings/concordance.hpp"
#include "ratings/evaluation.hpp"
#include "ratings/incomplete.hpp"
#include "ratings/ingest.hpp"
#include "ratings/simulation.hpp"

namespace ratings::pipeline {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

double round12(double v) {
    if (!std::isfinite(v)) return v;
    return std::strtod(format_number(v).c_str(), nullptr);
}

void apply_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

fs::path prepare_out_dir(const std::string& out_dir, bool force) {
    if (out_dir.empty()) {
        throw InputError("missing output directory (--out)");
    }
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    if (fs::exists(dir / "manifest.json") && !force) {
        throw InputError("output directory already holds a run manifest; pass --force to rerun");
    }
    return dir;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps line endings stable
    if (!out) {
        throw InputError("cannot write " + path.string());
    }
    return out;
}

void write_manifest(const fs::path& dir, json manifest) {
    manifest["tool_version"] = kToolVersion;
    auto out = open_out(dir / "manifest.json");
    out << manifest.dump(2) << '\n';
}

json common_manifest(const char* subcommand, const CommonOptions& opts) {
    json m;
    m["subcommand"] = subcommand;
    m["input"] = opts.input;
    m["scale_min"] = opts.scale_min;
    m["scale_max"] = opts.scale_max;
    m["min_user_ratings"] = opts.min_user_ratings;
    m["min_item_ratings"] = opts.min_item_ratings;
    m["seed"] = opts.seed;
    m["out_dir"] = opts.out_dir;
    m["normalized_output"] = opts.normalized;
    return m;
}

struct LoadedData {
    SparseRatings data;
    std::vector<RemovalRecord> removals;
};

LoadedData load_and_filter(const CommonOptions& opts) {
    const ScaleSpec scale{opts.scale_min, opts.scale_max};
    const auto raw = load_ratings(opts.input, scale);
    std::vector<RemovalRecord> removals;
    auto filtered =
        filter_min_counts(raw, opts.min_user_ratings, opts.min_item_ratings, &removals);
    return {std::move(filtered), std::move(removals)};
}

void write_removals(const fs::path& dir, const std::vector<RemovalRecord>& removals) {
    auto out = open_out(dir / "removals.csv");
    out << "entity_type,id,count\n";
    for (const auto& r : removals) {
        out << r.entity_type << ',' << r.id << ',' << r.count << '\n';
    }
}

void write_ranking_csv(const fs::path& path, const Ranking& ranking, const ScoreTable& scores,
                       const ScaleSpec& scale, bool normalized) {
    auto out = open_out(path);
    out << "rank,item_id,score\n";
    const auto order = ranking.order();
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const std::size_t i = order[pos];
        const double s = normalized ? scores.scores[i] : scale.denormalize(scores.scores[i]);
        out << (pos + 1) << ',' << ranking.item_ids[i] << ',' << format_number(s) << '\n';
    }
}

void write_histogram_csv(const fs::path& path, const ScoreTable& scores, std::size_t bins,
                         const ScaleSpec& scale) {
    auto out = open_out(path);
    out << "bin_lower,count\n";
    for (const auto& bin : histogram(scores, bins, scale)) {
        out << format_number(bin.lower) << ',' << bin.count << '\n';
    }
}

/// Ratings that are a complete matrix whose denormalized rows are each a
/// permutation of 1..M; returns the rank rows when so.
std::optional<std::vector<std::vector<int>>> rank_shaped_rows(const SparseRatings& data,
                                                              const ScaleSpec& scale) {
    if (!data.is_complete()) return std::nullopt;
    const std::size_t m = data.item_count();
    std::vector<std::vector<int>> rows;
    rows.reserve(data.user_count());
    for (std::size_t u = 0; u < data.user_count(); ++u) {
        std::vector<int> ranks(m);
        std::vector<bool> seen(m, false);
        for (const auto& t : data.of_user(u)) {
            const double raw = scale.denormalize(t.rating);
            const double rounded = std::round(raw);
            if (std::abs(raw - rounded) > 1e-9 || rounded < 1.0 ||
                rounded > static_cast<double>(m)) {
                return std::nullopt;
            }
            const int rank = static_cast<int>(rounded);
            if (seen[static_cast<std::size_t>(rank) - 1]) return std::nullopt;
            seen[static_cast<std::size_t>(rank) - 1] = true;
            ranks[t.item] = rank;
        }
        rows.push_back(std::move(ranks));
    }
    return rows;
}

void write_rate_table_csv(const fs::path& path, const RateTable& table) {
    auto out = open_out(path);
    out << "n,replications,mean_loss,sd_loss,bound\n";
    for (const auto& row : table.rows) {
        out << row.n << ',' << row.replications << ',' << format_number(row.mean_loss) << ','
            << format_number(row.sd_loss) << ','
            << (std::isfinite(row.bound) ? format_number(row.bound) : "") << '\n';
    }
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        return kExitOk;
    } catch (const EmptyResultError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitEmpty;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}

const ScoreTable& table_by_name(const IncompleteEstimatorBundle& bundle,
                                const ScoreTable& btl_table, const std::string& name) {
    if (name == "average" || name == "avg") return bundle.average;
    if (name == "primitive") return bundle.primitive;
    if (name == "rating") return bundle.rating;
    if (name == "btl") return btl_table;
    throw InputError("unknown estimator '" + name +
                     "' (expected average, primitive, rating or btl)");
}

}  // namespace

int run_aggregate(const CommonOptions& opts) {
    return guarded([&] {
        apply_threads(opts.threads);
        const ScaleSpec scale{opts.scale_min, opts.scale_max};
        scale.validate();
        const fs::path dir = prepare_out_dir(opts.out_dir, opts.force);

        const auto loaded = load_and_filter(opts);
        const auto bundle = incomplete_estimate_all(loaded.data);

        // scores.csv ordered by item identifier
        std::vector<std::size_t> order(loaded.data.item_count());
        std::iota(order.begin(), order.end(), 0);
        const auto& ids = loaded.data.item_ids();
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
        {
            auto out = open_out(dir / "scores.csv");
            out << "item_id,avg,primitive,rating\n";
            for (const std::size_t i : order) {
                const auto emit = [&](double s) {
                    return format_number(opts.normalized ? s : scale.denormalize(s));
                };
                out << ids[i] << ',' << emit(bundle.average.scores[i]) << ','
                    << emit(bundle.primitive.scores[i]) << ',' << emit(bundle.rating.scores[i])
                    << '\n';
            }
        }

        for (const ScoreTable* table : {&bundle.average, &bundle.primitive, &bundle.rating}) {
            const std::string tag = estimator_tag_name(table->tag);
            write_ranking_csv(dir / ("ranking_" + tag + ".csv"), ranking_from_scores(*table),
                              *table, scale, opts.normalized);
            write_histogram_csv(dir / ("histogram_" + tag + ".csv"), *table, opts.bins, scale);
        }
        write_removals(dir, loaded.removals);

        json manifest = common_manifest("aggregate", opts);
        manifest["bins"] = opts.bins;
        manifest["estimators"] = {"average", "primitive", "rating"};
        manifest["users"] = loaded.data.user_count();
        manifest["items"] = loaded.data.item_count();
        manifest["ratings"] = loaded.data.rating_count();
        write_manifest(dir, std::move(manifest));
    });
}

int run_concordance(const CommonOptions& opts) {
    return guarded([&] {
        apply_threads(opts.threads);
        const ScaleSpec scale{opts.scale_min, opts.scale_max};
        scale.validate();
        const fs::path dir = prepare_out_dir(opts.out_dir, opts.force);

        const auto loaded = load_and_filter(opts);
        const auto report = concordance_report(loaded.data);

        json j;
        j["w_scale"] = round12(report.w_scale);
        j["w_ratings"] = round12(report.w_ratings);
        j["barycenter_variance"] = round12(report.barycenter_variance);
        j["primitive_pushforward_variance"] = round12(report.primitive_pushforward_variance);
        j["mean_user_variance"] = round12(report.mean_user_variance);
        {
            const auto [mn, mx] = std::minmax_element(report.per_user_variance.begin(),
                                                      report.per_user_variance.end());
            j["per_user_variance"] = {{"min", round12(*mn)},
                                      {"max", round12(*mx)},
                                      {"count", report.per_user_variance.size()}};
        }
        if (const auto ranks = rank_shaped_rows(loaded.data, scale)) {
            j["kendalls_w"] = round12(kendalls_w(*ranks));
        }
        j["users"] = loaded.data.user_count();
        j["items"] = loaded.data.item_count();
        j["ratings"] = loaded.data.rating_count();

        auto out = open_out(dir / "concordance.json");
        out << j.dump(2) << '\n';
        write_removals(dir, loaded.removals);
        write_manifest(dir, common_manifest("concordance", opts));
    });
}

int run_evaluate(const EvaluateOptions& opts) {
    return guarded([&] {
        apply_threads(opts.common.threads);
        const ScaleSpec scale{opts.common.scale_min, opts.common.scale_max};
        scale.validate();
        const fs::path dir = prepare_out_dir(opts.common.out_dir, opts.common.force);

        const auto loaded = load_and_filter(opts.common);
        const std::size_t m = loaded.data.item_count();
        for (const std::size_t k : opts.common.top_k) {
            if (k > m) {
                throw InputError("top-k " + std::to_string(k) + " exceeds item count " +
                                 std::to_string(m));
            }
        }

        const auto bundle = incomplete_estimate_all(loaded.data);
        const auto counts = pairwise_counts(loaded.data);
        const auto btl = btl_scores(counts);

        const ScoreTable& left_scores = table_by_name(bundle, btl.scores, opts.left);
        const ScoreTable& right_scores = table_by_name(bundle, btl.scores, opts.right);
        const Ranking left = ranking_from_scores(left_scores);
        const Ranking right = ranking_from_scores(right_scores);
        const Ranking btl_ranking = ranking_from_scores(btl.scores);

        json j;
        j["left"] = opts.left;
        j["right"] = opts.right;
        j["btl"] = {{"connected", btl.connected}, {"component_count", btl.component_count}};
        j["d1"] = {{"left_vs_right", round12(rank_distance_d1(left, right))},
                   {"left_vs_btl", round12(rank_distance_d1(left, btl_ranking))},
                   {"right_vs_btl", round12(rank_distance_d1(right, btl_ranking))}};
        j["pairwise_agreement"] = {
            {"left", round12(pairwise_agreement(left_scores, counts))},
            {"right", round12(pairwise_agreement(right_scores, counts))},
            {"btl", round12(pairwise_agreement(btl.scores, counts))}};

        json per_k = json::array();
        for (const std::size_t k : opts.common.top_k) {
            const auto context = top_k_union(left, right, k);
            const auto report_side = [&](const Ranking& r) {
                const auto rep = utility_report(loaded.data, r, k, &context);
                // The rating utility is a mean of ratings; report it on the
                // source scale like the scores. Quantile/binary are fractions.
                const double u1 = opts.common.normalized
                                      ? rep.rating_utility
                                      : scale.denormalize(rep.rating_utility);
                return json{{"rating_utility", round12(u1)},
                            {"quantile_utility", round12(rep.quantile_utility)},
                            {"binary_utility", round12(rep.binary_utility)},
                            {"users_counted", rep.users_counted}};
            };
            per_k.push_back({{"top_k", k},
                             {"left", report_side(left)},
                             {"right", report_side(right)}});
        }
        j["utilities"] = std::move(per_k);

        if (opts.random_baseline) {
            std::mt19937_64 rng(opts.common.seed);
            std::vector<int> perm(m);
            std::iota(perm.begin(), perm.end(), 1);
            double acc = 0.0;
            const std::size_t draws = 10000;
            Ranking random_ranking{left.item_ids, {}};
            for (std::size_t d = 0; d < draws; ++d) {
                std::shuffle(perm.begin(), perm.end(), rng);
                random_ranking.rank_of = perm;
                acc += rank_distance_d1(random_ranking, left);
            }
            j["random_baseline_d1"] = round12(acc / static_cast<double>(draws));
        }

        auto out = open_out(dir / "evaluation.json");
        out << j.dump(2) << '\n';
        write_ranking_csv(dir / ("ranking_left_" + opts.left + ".csv"), left, left_scores, scale,
                          opts.common.normalized);
        write_ranking_csv(dir / ("ranking_right_" + opts.right + ".csv"), right, right_scores,
                          scale, opts.common.normalized);
        // Chain scores are stationary probabilities, not ratings; emit raw.
        write_ranking_csv(dir / "ranking_btl.csv", btl_ranking, btl.scores, scale, true);
        write_removals(dir, loaded.removals);

        json manifest = common_manifest("evaluate", opts.common);
        manifest["left"] = opts.left;
        manifest["right"] = opts.right;
        manifest["top_k"] = opts.common.top_k;
        manifest["random_baseline"] = opts.random_baseline;
        write_manifest(dir, std::move(manifest));
    });
}

namespace {

json simulate_manifest(const SimulateOptions& opts) {
    json m;
    m["subcommand"] = "simulate";
    m["experiment"] = opts.experiment;
    m["seed"] = opts.seed;
    m["out_dir"] = opts.out_dir;
    return m;
}

void run_simulate_inner(const SimulateOptions& opts) {
    apply_threads(opts.threads);
    const fs::path dir = prepare_out_dir(opts.out_dir, opts.force);
    json manifest = simulate_manifest(opts);

    const auto defaulted = [](std::size_t v, std::size_t dflt) { return v == 0 ? dflt : v; };

    if (opts.experiment == "example51") {
        const std::size_t atoms = defaulted(opts.atom_count, 2000);
        const std::vector<double> alphas =
            opts.alphas.empty() ? std::vector<double>{1.2, 0.8, -1.0} : opts.alphas;
        const auto result = affine_closed_form_experiment(atoms, alphas);
        auto out = open_out(dir / "closed_forms.csv");
        out << "estimator,loss,closed_form\n";
        out << "average," << format_number(result.average_loss) << ','
            << format_number(result.average_closed_form) << '\n';
        out << "primitive," << format_number(result.primitive_loss) << ','
            << format_number(result.primitive_closed_form) << '\n';
        out << "rating," << format_number(result.rating_loss) << ',' << format_number(0.0)
            << '\n';
        manifest["atom_count"] = atoms;
        manifest["alphas"] = alphas;
    } else if (opts.experiment == "section85") {
        SimulationConfig config;
        config.atom_count = defaulted(opts.atom_count, 500);
        config.user_count = defaulted(opts.user_count, 200);
        config.replications = defaulted(opts.replications, 100);
        config.seed = opts.seed;
        config.alpha_law =
            AlphaLaw::gaussian_sign(opts.p_plus, opts.alpha_location, opts.alpha_variance);
        const auto result = reversal_outperformance_experiment(config);
        auto out = open_out(dir / "losses.csv");
        out << "series,n,replications,mean_loss,sd_loss\n";
        out << "average," << result.average.n << ',' << result.average.replications << ','
            << format_number(result.average.mean_loss) << ','
            << format_number(result.average.sd_loss) << '\n';
        out << "rating," << result.rating.n << ',' << result.rating.replications << ','
            << format_number(result.rating.mean_loss) << ','
            << format_number(result.rating.sd_loss) << '\n';
        manifest["atom_count"] = config.atom_count;
        manifest["user_count"] = config.user_count;
        manifest["replications"] = config.replications;
        manifest["p_plus"] = opts.p_plus;
        manifest["alpha_location"] = opts.alpha_location;
        manifest["alpha_variance"] = opts.alpha_variance;
        manifest["alpha_location_correction"] =
            round12(config.alpha_law.location_correction());
        manifest["rating_win_fraction"] = round12(result.rating_win_fraction);
    } else if (opts.experiment == "rate_complete") {
        SimulationConfig config;
        config.atom_count = defaulted(opts.atom_count, 20);
        config.replications = defaulted(opts.replications, 200);
        config.seed = opts.seed;
        config.alpha_law =
            AlphaLaw::gaussian_sign(opts.p_plus, opts.alpha_location, opts.alpha_variance);
        const std::vector<std::size_t> ladder =
            opts.n_ladder.empty() ? std::vector<std::size_t>{25, 100, 400, 1600} : opts.n_ladder;
        const auto tables = complete_rate_experiment_all(config, ladder);
        write_rate_table_csv(dir / "rate_complete_average.csv", tables.average);
        write_rate_table_csv(dir / "rate_complete_primitive.csv", tables.primitive);
        write_rate_table_csv(dir / "rate_complete_rating.csv", tables.rating);
        manifest["atom_count"] = config.atom_count;
        manifest["replications"] = config.replications;
        manifest["n_ladder"] = ladder;
        manifest["p_plus"] = opts.p_plus;
        manifest["loglog_slope"] = {{"average", round12(tables.average.loglog_slope)},
                                    {"primitive", round12(tables.primitive.loglog_slope)},
                                    {"rating", round12(tables.rating.loglog_slope)}};
    } else if (opts.experiment == "rate_incomplete") {
        SimulationConfig config;
        config.atom_count = defaulted(opts.atom_count, 20);
        config.replications = defaulted(opts.replications, 50);
        config.seed = opts.seed;
        config.alpha_law =
            AlphaLaw::gaussian_sign(opts.p_plus, opts.alpha_location, opts.alpha_variance);
        const std::vector<std::size_t> ladder =
            opts.n_ladder.empty() ? std::vector<std::size_t>{100, 400, 1600} : opts.n_ladder;
        const auto result = incomplete_rate_experiment(config, ladder);
        write_rate_table_csv(dir / "rate_incomplete.csv", result.table);
        manifest["atom_count"] = config.atom_count;
        manifest["replications"] = config.replications;
        manifest["n_ladder"] = ladder;
        manifest["consensus_gap"] = round12(result.consensus_gap);
        manifest["raters_per_item"] = result.raters_per_item;
        manifest["loglog_slope"] = round12(result.table.loglog_slope);
    } else if (opts.experiment == "gc_quantile" || opts.experiment == "gc_cdf") {
        const GcMeasureLaw law{opts.gc_atoms, opts.tilt_spread};
        const std::vector<std::size_t> ladder =
            opts.n_ladder.empty() ? std::vector<std::size_t>{3, 10, 100, 1000} : opts.n_ladder;
        const std::size_t reps = defaulted(opts.replications, 100);
        const bool quantile = opts.experiment == "gc_quantile";
        const auto table = quantile ? gc_quantile_experiment(law, ladder, reps, opts.seed)
                                    : gc_cdf_experiment(law, ladder, reps, opts.seed);
        write_rate_table_csv(dir / (opts.experiment + ".csv"), table);
        manifest["gc_atoms"] = opts.gc_atoms;
        manifest["tilt_spread"] = opts.tilt_spread;
        manifest["replications"] = reps;
        manifest["n_ladder"] = ladder;
    } else {
        throw InputError("unknown experiment '" + opts.experiment +
                         "' (expected example51, section85, rate_complete, rate_incomplete, "
                         "gc_quantile or gc_cdf)");
    }
    write_manifest(dir, std::move(manifest));
}

}  // namespace

int run_simulate(const SimulateOptions& opts) {
    return guarded([&] { run_simulate_inner(opts); });
}

}  // namespace ratings::pipeline
