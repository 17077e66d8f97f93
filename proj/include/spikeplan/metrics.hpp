#pragma once

#include <span>
#include <string>
#include <vector>

#include "spikeplan/grid.hpp"
#include "spikeplan/matrix.hpp"
#include "spikeplan/planner.hpp"

namespace spikeplan {

struct TrialMetrics {
    int trial = 0;
    uint64_t seed = 0;
    int updates_triggered = 0;
    int targets_reached = 0;  // completed waypoint cycles
    int collisions = 0;
    std::vector<Segment> segments;
    Matrix w_initial;
    Matrix w_final;
};

struct MetricSummary {
    double mean = 0.0;
    double stddev = 0.0;  // sample stddev
};

MetricSummary summarize(std::span<const double> values);

/// Per-neuron average synaptic change between two weight snapshots:
/// input change of neuron i = column mean of (after - before),
/// output change of neuron k = row mean of the same difference.
struct SynapticChangeReport {
    std::vector<double> input_change;
    std::vector<double> output_change;
};

SynapticChangeReport synaptic_change_report(const Matrix& w_before, const Matrix& w_after, const GridSpec& grid);

void write_heatmap_csv(const SynapticChangeReport& report, const GridSpec& grid, const std::string& path);

/// Histogram of gated learning-signal magnitudes plus the update-mass
/// statistics: total mass (sum of magnitudes) and the share carried by the
/// largest 15% of them.
struct SignalHistogram {
    double lo = 0.0;
    double hi = 0.3;
    std::vector<long> counts;
    long total = 0;
    double update_mass = 0.0;
    double top15_mass_share = 0.0;
    double max_magnitude = 0.0;
};

SignalHistogram signal_histogram(std::span<const double> gated_alphas, int bins = 30);

void write_histogram_csv(const SignalHistogram& hist, const std::string& path);

/// All gated signal magnitudes recorded across a run.
std::vector<double> collect_gated_alphas(std::span<const TrialMetrics> metrics);

}  // namespace spikeplan
