// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cumulus/renderer.hpp"

namespace cumulus {

struct ExperimentSpec {
    std::string name;
    SceneConfig scene;
    int n_frames = 1;
    std::optional<std::string> reference;  // name of another spec, same display resolution
};

struct ExperimentResult {
    std::string name;
    SceneConfig scene;  // the configuration actually run (for report axes)
    int n_frames = 1;
    long long density_samples = 0;  // final frame
    long long light_samples = 0;    // final frame
    double median_wall_time = 0.0;  // seconds, final-frame render time, median over repeats
    std::vector<double> wall_times;
    std::optional<double> rmse_vs_reference;
    double mean_luminance = 0.0;
    std::optional<std::string> error;  // failure record; metrics invalid when set
    Image final_image;                 // linear light, display resolution
};

struct RunReport {
    int repeats = 5;
    std::vector<ExperimentResult> results;
};

// Root mean square difference over all pixels and channels of two
// linear-light RGB images. Rejects mismatched resolutions.
double rmse(const Image& a, const Image& b);

// Mean over pixels of Rec.709 luminance, linear light.
double mean_luminance(const Image& img);

// Runs every spec (sequentially, so wall times stay comparable), timing the
// final frame of each sequence `repeats` times and taking the median.
// Metrics compare final frames at display resolution. Per-experiment
// failures are recorded in the result instead of aborting the batch.
// Rejects repeats < 5.
RunReport run_experiments(const std::vector<ExperimentSpec>& specs, int repeats = 5);

struct Fig2Report {
    std::vector<int> step_counts;
    std::vector<double> naive_luminance;     // per step count
    std::vector<double> analytic_luminance;  // per step count
    double naive_spread = 0.0;               // (max - min) / mean
    double analytic_spread = 0.0;
};

// Step-length brightness dependence probe: renders the scene (jitter and TAA
// forced off) at n_steps in {8, 16, 32, 64, 128} under both integration
// modes and reports the mean luminance of each run plus the relative spread
// per mode.
Fig2Report fig2_experiment(const SceneConfig& scene);

// Relative spread of a set of values: (max - min) / mean.
double relative_spread(const std::vector<double>& values);

// The standard heterogeneous test scene used across experiments: a
// procedural cloud deck over a black background at 256x256.
SceneConfig canonical_scene();

// The six canonical benchmark rows: full/128, half/128, half/8,
// half/8+jitter, half/8+jitter+TAA, quarter/8+jitter+TAA. Early-out is
// disabled so sample counts compare exactly; rows after the first reference
// the full/128 row.
std::vector<ExperimentSpec> canonical_bench_specs(const SceneConfig& base);

// Report serialization. The main CSV carries only deterministic columns;
// wall times go to their own CSV and the human-readable table.
std::string report_csv(const RunReport& report);
std::string timings_csv(const RunReport& report);
std::string report_table(const RunReport& report);
std::string fig2_csv(const Fig2Report& report);
std::string fig2_table(const Fig2Report& report);

}  // namespace cumulus
