#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ratings::pipeline {

inline constexpr const char* kToolVersion = "1.0.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitEmpty = 3;
inline constexpr int kExitDegenerate = 4;

struct CommonOptions {
    std::string input;
    double scale_min = 1.0;
    double scale_max = 10.0;
    std::size_t min_user_ratings = 10;
    std::size_t min_item_ratings = 10;
    std::string out_dir;
    std::uint64_t seed = 1;
    int threads = 0;  // 0 keeps the runtime default
    std::size_t bins = 100;
    std::vector<std::size_t> top_k = {50, 100};
    bool force = false;
    bool normalized = false;  // emit [0,1] scores instead of the source scale
};

struct EvaluateOptions {
    CommonOptions common;
    std::string left = "average";
    std::string right = "rating";
    bool random_baseline = false;
};

struct SimulateOptions {
    std::string experiment;
    std::string out_dir;
    std::uint64_t seed = 1;
    int threads = 0;
    bool force = false;
    // 0 / empty pick the experiment's default.
    std::size_t replications = 0;
    std::size_t atom_count = 0;
    std::size_t user_count = 0;
    std::vector<std::size_t> n_ladder;
    std::vector<double> alphas;
    double p_plus = 0.75;
    double alpha_location = 1.0;
    double alpha_variance = 1.0 / 16.0;
    std::size_t gc_atoms = 400;
    double tilt_spread = 1.0;
};

/// Each runner writes its artifacts plus a manifest.json into out_dir and
/// returns a process exit code (0 ok, 2 input error, 3 empty result,
/// 4 numerical degeneracy).
int run_aggregate(const CommonOptions& opts);
int run_concordance(const CommonOptions& opts);
int run_evaluate(const EvaluateOptions& opts);
int run_simulate(const SimulateOptions& opts);

/// Fixed 12-significant-digit formatting used for all CSV numbers.
std::string format_number(double v);

}  // namespace ratings::pipeline
