#pragma once

#include <string>
#include <vector>

#include "spikeplan/metrics.hpp"
#include "spikeplan/planner.hpp"

namespace spikeplan {

/// Everything a reproducible experiment needs. Flags and config-file keys
/// mirror these fields one to one.
struct TrialConfig {
    std::string world = "paper-sim";  // preset name or world file path
    AdaptationKind kind = AdaptationKind::global;
    int segments = 300;
    int trials = 10;
    uint64_t master_seed = 1;
    int threads = 0;  // 0 = hardware concurrency

    // network
    int neurons_per_dim = 15;
    int tau = 10;
    double sigma_init = 0.0;  // 0 = 0.75 lattice spacings
    double weight_offset = -0.02;
    double activation_offset = 1.22;
    double activation_scale = 0.06;

    // planner / adaptation
    PlannerConfig planner;

    std::string load_model;  // transfer mode: start every trial from this model

    double resolved_sigma_init(const GridSpec& grid) const {
        return sigma_init > 0.0 ? sigma_init : 0.75 * grid.lattice_spacing();
    }
};

StateNetwork build_network(const TrialConfig& config);

/// Run config.trials independent trials (parallel across threads, derived
/// seeds, byte-identical results regardless of thread count).
std::vector<TrialMetrics> run_trials(const TrialConfig& config);

TrialMetrics run_single_trial(const TrialConfig& config, const World& world, int trial_index);

/// Aggregate table the CLI prints: one row per metric with mean +- stddev.
struct RunSummaryRow {
    std::string metric;
    MetricSummary summary;
};
std::vector<RunSummaryRow> summarize_run(std::span<const TrialMetrics> metrics);

// --- exports -------------------------------------------------------------

void write_segments_csv(const std::string& path, std::span<const TrialMetrics> metrics);

/// Flat per-segment row as re-read from the CSV export.
struct SegmentRow {
    int trial = 0;
    int segment = 0;
    int waypoint = 0;
    bool collided = false;
    int hit_obstacle = -1;
    bool reached = false;
    bool update_triggered = false;
    int gates_opened = 0;
    double alpha_max = 0.0;
    double planning_time = 0.0;
    double expected_exec_time = 0.0;
    double path_length = 0.0;
    double end_x = 0.0;
    double end_y = 0.0;
    int samples_drawn = 0;
    int samples_accepted = 0;
    double plan_start_offset = 0.0;
    std::vector<double> gated_alphas;
};
std::vector<SegmentRow> read_segments_csv(const std::string& path);

void write_summary_json(const std::string& path, const TrialConfig& config, std::span<const TrialMetrics> metrics);
std::string summary_json(const TrialConfig& config, std::span<const TrialMetrics> metrics);

std::string kind_name(AdaptationKind kind);
AdaptationKind kind_from_name(const std::string& name);

}  // namespace spikeplan
