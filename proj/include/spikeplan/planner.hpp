#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "spikeplan/cd.hpp"
#include "spikeplan/context.hpp"
#include "spikeplan/network.hpp"
#include "spikeplan/trajectory.hpp"
#include "spikeplan/world.hpp"

namespace spikeplan {

enum class AdaptationKind { none, global, local, constant };

struct PlannerConfig {
    int horizon = 30;       // network timesteps per segment
    int n_samples = 40;     // trajectory samples per segment
    int replay_count = 20;  // mental-replay pairs per observation
    double reach_radius = 0.1;
    double velocity = 0.1;  // workspace units per second
    double smoothing_sigma = 5.0;
    double traj_dt = 0.02;
    double nominal_plan_time = 0.2;  // virtual planning time per segment
    bool wall_clock = false;         // use measured planning time for scheduling
    AdaptationKind kind = AdaptationKind::none;
    double constant_rate = 0.001;
    bool ungated = false;  // disable the learning gate (instability experiments)
    double local_scale = 3.0;
    double replay_gain = 2.0;  // scales the replay batch-mean update
    double resp_sigma = 0.75 * 2.0 / 14.0;  // shared Gaussian basis width (= sigma_init)
    ContextConfig context;
    double tracking_noise = 0.012;
};

/// Welford running mean/stddev of planning times.
struct RunningStats {
    int n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double v) {
        ++n;
        const double d = v - mean;
        mean += d / n;
        m2 += d * (v - mean);
    }
    double stddev() const { return n > 1 ? std::sqrt(m2 / (n - 1)) : 0.0; }
};

/// Completed plan-execute-learn cycle record.
struct Segment {
    int index = 0;
    int waypoint = 0;  // active waypoint during this segment
    Trajectory mental;
    Trajectory executed;
    bool collided = false;
    int hit_obstacle = -1;
    int contact_step = -1;
    bool reached = false;
    bool update_triggered = false;
    int gates_opened = 0;
    double alpha_max = 0.0;
    std::vector<double> gated_alphas;  // signal magnitudes that opened gates
    int samples_drawn = 0;
    int samples_accepted = 0;
    double planning_time = 0.0;
    double expected_exec_time = 0.0;
    double plan_start_offset = 0.0;  // within the previous execution window
    double exec_start = 0.0;         // simulated-clock bookkeeping
    double exec_end = 0.0;
    double plan_start = 0.0;
    double plan_end = 0.0;
};

struct PlanResult {
    Trajectory mental;
    std::vector<Trajectory> samples;
    std::vector<int> accepted;  // indices into samples
    double wall_time = 0.0;
};

/// Draw n_samples spiketrains, decode them, reject outliers and average the
/// survivors timestep-wise into the mental trajectory.
PlanResult plan_segment(const StateNetwork& net, const ContextPopulation& ctx, std::span<const int> entry_state,
                        int n_samples, int horizon, double smoothing_sigma, double dt, uint64_t seed);

/// Outlier rejection on net movement directions (end - start). The reference
/// sample minimizes the mean angular distance to its closest 90% of the
/// population; samples within three sigma of those reference distances are
/// accepted. The reference always survives. Returns accepted indices.
std::vector<int> reject_samples(const std::vector<Trajectory>& samples);

/// Planning for the next segment starts when the remaining execution time
/// drops below mean + 3 stddev of the planning times seen so far; never
/// negative.
double schedule_next_planning(const RunningStats& stats, double expected_exec_time);

/// Entry state for the next segment: the neuron nearest the final executed
/// position is marked just-spiked (ties break to the lower index), everyone
/// else is free.
std::vector<int> incorporate_feedback(const Trajectory& executed, const GridSpec& grid, int tau);
std::vector<int> anchor_entry_state(const Vec2& position, const GridSpec& grid, int tau);

/// The continuous plan-execute-learn loop over a waypoint tour. Owns the
/// mutable planner state; the network is adapted in place between segments
/// (sampling within a segment never overlaps a weight update).
class OnlinePlanner {
public:
    OnlinePlanner(StateNetwork& net, const World& world, const PlannerConfig& config, uint64_t seed);
    OnlinePlanner(StateNetwork& net, const World& world, const PlannerConfig& config, uint64_t seed, Vec2 start);

    /// One full cycle: context -> plan -> execute -> dissonance -> replay ->
    /// update -> feedback -> waypoint advance.
    Segment step();

    std::vector<Segment> run(int budget);

    int active_waypoint() const { return active_index_; }
    int cycles_completed() const { return cycles_; }
    int updates_triggered() const { return updates_triggered_; }
    const RunningStats& plan_time_stats() const { return plan_stats_; }
    const StateNetwork& network() const { return net_; }

private:
    const ContextPopulation& context_for(int waypoint);

    StateNetwork& net_;
    World world_;
    PlannerConfig cfg_;
    uint64_t seed_;
    std::vector<int> entry_state_;
    std::unordered_map<int, ContextPopulation> context_cache_;
    int active_index_ = 0;
    int cycles_ = 0;
    int updates_triggered_ = 0;
    int segment_counter_ = 0;
    RunningStats plan_stats_;
    double next_plan_start_ = 0.0;
    double last_exec_end_ = 0.0;
    // Updates land after the in-flight planning of the next segment, so they
    // first affect sampling one segment later (matching the overlap of
    // execution and planning on a real system).
    std::vector<std::pair<CdUpdateField, DissonanceSignal>> pending_updates_;
};

}  // namespace spikeplan
