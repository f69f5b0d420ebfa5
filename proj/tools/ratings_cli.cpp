#include <CLI11.hpp>

#include "ratings/pipeline.hpp"

using ratings::pipeline::CommonOptions;
using ratings::pipeline::EvaluateOptions;
using ratings::pipeline::SimulateOptions;

namespace {

void add_common_flags(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--input", opts.input, "Input ratings CSV (user_id,item_id,rating)")
        ->required();
    cmd->add_option("--scale-min", opts.scale_min, "Lowest rating on the source scale")
        ->capture_default_str();
    cmd->add_option("--scale-max", opts.scale_max, "Highest rating on the source scale")
        ->capture_default_str();
    cmd->add_option("--min-user-ratings", opts.min_user_ratings,
                    "Drop users with fewer ratings (iterated with the item filter)")
        ->capture_default_str();
    cmd->add_option("--min-item-ratings", opts.min_item_ratings,
                    "Drop items with fewer ratings (iterated with the user filter)")
        ->capture_default_str();
    cmd->add_option("--out", opts.out_dir, "Output directory")->required();
    cmd->add_option("--seed", opts.seed, "Random seed")->capture_default_str();
    cmd->add_option("--threads", opts.threads, "Worker thread cap (0 = runtime default)")
        ->capture_default_str();
    cmd->add_flag("--force", opts.force, "Overwrite an existing run in the output directory");
    cmd->add_flag("--normalized", opts.normalized, "Emit scores on [0,1] instead of the source scale");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rating aggregation over personal scales: optimal-transport score "
                 "estimators, concordance statistics, ranking comparisons and "
                 "simulation experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ratings::pipeline::kToolVersion);

    CommonOptions aggregate_opts;
    auto* aggregate = app.add_subcommand(
        "aggregate", "Compute average, primitive and rating scores with rankings and histograms");
    add_common_flags(aggregate, aggregate_opts);
    aggregate->add_option("--bins", aggregate_opts.bins, "Histogram bin count")
        ->capture_default_str();

    CommonOptions concordance_opts;
    auto* concordance = app.add_subcommand(
        "concordance", "Report scale and rating concordance statistics (JSON)");
    add_common_flags(concordance, concordance_opts);

    EvaluateOptions evaluate_opts;
    auto* evaluate = app.add_subcommand(
        "evaluate", "Compare two estimator rankings: utilities, rank distance, pairwise "
                    "agreement and the pairwise-comparison Markov chain baseline");
    add_common_flags(evaluate, evaluate_opts.common);
    evaluate->add_option("--left", evaluate_opts.left, "Left estimator (average|primitive|rating|btl)")
        ->capture_default_str();
    evaluate->add_option("--right", evaluate_opts.right, "Right estimator")
        ->capture_default_str();
    evaluate
        ->add_option("--top-k", evaluate_opts.common.top_k,
                     "Top-K sizes for the utility report (repeatable)")
        ->capture_default_str();
    evaluate->add_flag("--random-baseline", evaluate_opts.random_baseline,
                       "Also report the Monte Carlo mean d1 against uniform random rankings");

    SimulateOptions simulate_opts;
    auto* simulate =
        app.add_subcommand("simulate", "Run a named synthetic-data experiment and emit CSV tables");
    simulate
        ->add_option("--experiment", simulate_opts.experiment,
                     "One of: example51, section85, rate_complete, rate_incomplete, "
                     "gc_quantile, gc_cdf")
        ->required();
    simulate->add_option("--out", simulate_opts.out_dir, "Output directory")->required();
    simulate->add_option("--seed", simulate_opts.seed, "Random seed")->capture_default_str();
    simulate->add_option("--threads", simulate_opts.threads, "Worker thread cap")
        ->capture_default_str();
    simulate->add_flag("--force", simulate_opts.force, "Overwrite an existing run");
    simulate->add_option("--replications", simulate_opts.replications,
                         "Replications (0 = experiment default)");
    simulate->add_option("--atoms", simulate_opts.atom_count, "Item atom count (0 = default)");
    simulate->add_option("--users", simulate_opts.user_count, "User count (0 = default)");
    simulate->add_option("--n-ladder", simulate_opts.n_ladder,
                         "Sample sizes for rate/GC experiments");
    simulate->add_option("--alphas", simulate_opts.alphas, "Fixed slope list for example51");
    simulate->add_option("--p-plus", simulate_opts.p_plus, "P(no preference reversal)")
        ->capture_default_str();
    simulate->add_option("--alpha-location", simulate_opts.alpha_location,
                         "Gaussian scale-law location")
        ->capture_default_str();
    simulate->add_option("--alpha-variance", simulate_opts.alpha_variance,
                         "Gaussian scale-law variance")
        ->capture_default_str();
    simulate->add_option("--gc-atoms", simulate_opts.gc_atoms, "Atoms per GC-law measure")
        ->capture_default_str();
    simulate->add_option("--tilt-spread", simulate_opts.tilt_spread,
                         "Quantile tilt spread of the GC law (0 = degenerate)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints the message or the help text
        return code == 0 ? 0 : ratings::pipeline::kExitInput;
    }

    if (aggregate->parsed()) return ratings::pipeline::run_aggregate(aggregate_opts);
    if (concordance->parsed()) return ratings::pipeline::run_concordance(concordance_opts);
    if (evaluate->parsed()) return ratings::pipeline::run_evaluate(evaluate_opts);
    if (simulate->parsed()) return ratings::pipeline::run_simulate(simulate_opts);
    return ratings::pipeline::kExitInput;
}
