#include "spikeplan/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "spikeplan/cd.hpp"
#include "spikeplan/decode.hpp"
#include "spikeplan/dissonance.hpp"
#include "spikeplan/replay.hpp"
#include "spikeplan/rng.hpp"
#include "spikeplan/sampler.hpp"

namespace spikeplan {

namespace {
// seed stream tags
constexpr uint64_t kStreamContext = 1;
constexpr uint64_t kStreamPlan = 2;
constexpr uint64_t kStreamReplay = 3;
constexpr uint64_t kStreamNoise = 4;
}  // namespace

PlanResult plan_segment(const StateNetwork& net, const ContextPopulation& ctx, std::span<const int> entry_state,
                        int n_samples, int horizon, double smoothing_sigma, double dt, uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("plan_segment: need at least one sample");
    const auto t0 = std::chrono::steady_clock::now();

    PlanResult result;
    result.samples.reserve(static_cast<size_t>(n_samples));
    for (int c = 0; c < n_samples; ++c) {
        const SpikeTrain train = sample_spiketrain(net, ctx, entry_state, horizon, derive_seed(seed, c));
        if (train.spike_count() == 0) continue;  // nothing to decode
        result.samples.push_back(decode(train, net.grid, smoothing_sigma, dt));
    }

    if (result.samples.empty()) {
        // no decodable sample: hold at the entry anchor (the robot pauses)
        int anchor = 0;
        for (int k = 1; k < net.K(); ++k)
            if (entry_state[k] > entry_state[anchor]) anchor = k;
        std::vector<Vec2> hold(static_cast<size_t>(horizon), net.grid.preferred[anchor]);
        result.mental = Trajectory(std::move(hold), dt, net.grid.lo, net.grid.hi);
        result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return result;
    }

    result.accepted = reject_samples(result.samples);

    std::vector<Vec2> mean(static_cast<size_t>(horizon), Vec2{0.0, 0.0});
    for (int idx : result.accepted)
        for (int t = 0; t < horizon; ++t) mean[t] += result.samples[idx].states[t];
    const double inv = 1.0 / static_cast<double>(result.accepted.size());
    for (auto& p : mean) p = p * inv;
    result.mental = Trajectory(std::move(mean), dt, net.grid.lo, net.grid.hi);

    result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

std::vector<int> reject_samples(const std::vector<Trajectory>& samples) {
    const int n = static_cast<int>(samples.size());
    if (n == 0) throw std::invalid_argument("reject_samples: empty sample set");
    if (n == 1) return {0};

    std::vector<Vec2> dirs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) dirs[i] = samples[i].back() - samples[i].front();

    // mean angular distance of each sample to its closest 90% of the others
    const int m = static_cast<int>(std::ceil(0.9 * (n - 1)));
    std::vector<double> score(static_cast<size_t>(n));
    std::vector<double> dist(static_cast<size_t>(n) - 1);
    for (int i = 0; i < n; ++i) {
        int w = 0;
        for (int j = 0; j < n; ++j)
            if (j != i) dist[w++] = angle_between(dirs[i], dirs[j]);
        std::sort(dist.begin(), dist.end());
        double s = 0.0;
        for (int q = 0; q < m; ++q) s += dist[q];
        score[i] = s / m;
    }
    const int ref = static_cast<int>(std::min_element(score.begin(), score.end()) - score.begin());

    // three-sigma bound from the reference's closest-90% distances
    int w = 0;
    for (int j = 0; j < n; ++j)
        if (j != ref) dist[w++] = angle_between(dirs[ref], dirs[j]);
    std::sort(dist.begin(), dist.end());
    double mean = 0.0;
    for (int q = 0; q < m; ++q) mean += dist[q];
    mean /= m;
    double var = 0.0;
    for (int q = 0; q < m; ++q) var += (dist[q] - mean) * (dist[q] - mean);
    const double bound = mean + 3.0 * std::sqrt(var / m);

    std::vector<int> accepted;
    for (int i = 0; i < n; ++i) {
        if (i == ref || angle_between(dirs[ref], dirs[i]) <= bound) accepted.push_back(i);
    }
    return accepted;
}

double schedule_next_planning(const RunningStats& stats, double expected_exec_time) {
    if (stats.n < 1) throw std::invalid_argument("schedule_next_planning: no planning-time observations");
    const double need = stats.mean + 3.0 * stats.stddev();
    return std::max(0.0, expected_exec_time - need);
}

std::vector<int> anchor_entry_state(const Vec2& position, const GridSpec& grid, int tau) {
    std::vector<int> entry(static_cast<size_t>(grid.K()), 0);
    entry[grid.nearest(position)] = tau - 1;  // just spiked: blocked tau-1 steps, PSP active
    return entry;
}

std::vector<int> incorporate_feedback(const Trajectory& executed, const GridSpec& grid, int tau) {
    if (executed.length() == 0) throw std::invalid_argument("incorporate_feedback: empty trajectory");
    return anchor_entry_state(executed.back(), grid, tau);
}

OnlinePlanner::OnlinePlanner(StateNetwork& net, const World& world, const PlannerConfig& config, uint64_t seed)
    : OnlinePlanner(net, world, config, seed, world.waypoints.back()) {}

OnlinePlanner::OnlinePlanner(StateNetwork& net, const World& world, const PlannerConfig& config, uint64_t seed,
                             Vec2 start)
    : net_(net), world_(world), cfg_(config), seed_(seed) {
    if (world_.waypoints.empty()) throw std::invalid_argument("OnlinePlanner: world has no waypoints");
    entry_state_ = anchor_entry_state(start, net_.grid, net_.tau);
}

const ContextPopulation& OnlinePlanner::context_for(int waypoint) {
    auto it = context_cache_.find(waypoint);
    if (it == context_cache_.end()) {
        it = context_cache_
                 .emplace(waypoint, set_context_for_target(net_.grid, world_.waypoints[waypoint], cfg_.context,
                                                           derive_seed(seed_, kStreamContext, waypoint)))
                 .first;
    }
    return it->second;
}

Segment OnlinePlanner::step() {
    const int s = segment_counter_++;
    Segment seg;
    seg.index = s;
    seg.waypoint = active_index_;
    const Vec2 target = world_.waypoints[active_index_];

    // Plan with the weights as they were while this segment's planning was
    // virtually in flight; the previous segment's update lands afterwards.
    const ContextPopulation& ctx = context_for(active_index_);
    PlanResult plan = plan_segment(net_, ctx, entry_state_, cfg_.n_samples, cfg_.horizon, cfg_.smoothing_sigma,
                                   cfg_.traj_dt, derive_seed(seed_, kStreamPlan, s));
    seg.mental = plan.mental;
    seg.samples_drawn = cfg_.n_samples;
    seg.samples_accepted = static_cast<int>(plan.accepted.size());
    seg.planning_time = cfg_.wall_clock ? plan.wall_time : cfg_.nominal_plan_time;
    seg.expected_exec_time = plan.mental.path_length() / cfg_.velocity;

    for (auto& [field, signal] : pending_updates_) apply_update(net_, field, signal);
    pending_updates_.clear();

    const ExecutionResult exec = execute(seg.mental, world_, cfg_.tracking_noise, derive_seed(seed_, kStreamNoise, s));
    seg.executed = exec.executed;
    seg.collided = exec.collided;
    seg.hit_obstacle = exec.obstacle_id;
    seg.contact_step = exec.contact_step;

    if (cfg_.kind != AdaptationKind::none) {
        const Mat2 Sigma = Mat2::isotropic(cfg_.resp_sigma);
        DissonanceSignal signal;
        switch (cfg_.kind) {
            case AdaptationKind::global:
                signal = global_alpha(seg.mental, seg.executed);
                break;
            case AdaptationKind::local:
                signal = local_alpha(responsibilities(seg.mental, net_.grid, Sigma, TrajectorySource::mental),
                                     responsibilities(seg.executed, net_.grid, Sigma, TrajectorySource::executed),
                                     cfg_.local_scale);
                break;
            case AdaptationKind::constant:
                signal = constant_alpha(global_alpha(seg.mental, seg.executed), cfg_.constant_rate, cfg_.ungated);
                break;
            default:
                break;
        }

        // collect the generated learning signals over update-capable steps
        for (int t = 1; t < signal.values.rows; ++t) {
            for (int i = 0; i < signal.values.cols; ++i) {
                const double a = signal.values(t, i);
                if (signal.ungated || a > signal.threshold) {
                    ++seg.gates_opened;
                    seg.gated_alphas.push_back(signal.kind == SignalKind::constant ? signal.constant_scale : a);
                    seg.alpha_max = std::max(seg.alpha_max, a);
                }
            }
        }

        if (seg.gates_opened > 0) {
            seg.update_triggered = true;
            ++updates_triggered_;
            const ReplayBatch batch = mental_replay(seg.mental, seg.executed, net_.grid, Sigma, net_.tau,
                                                    cfg_.replay_count, derive_seed(seed_, kStreamReplay, s));
            signal.batch_scale = cfg_.replay_gain / static_cast<double>(batch.count());
            pending_updates_.reserve(batch.pairs.size());
            for (const auto& [data, model] : batch.pairs)
                pending_updates_.emplace_back(cd_delta(data, model, net_.tau), signal);
        }
    }

    entry_state_ = incorporate_feedback(seg.executed, net_.grid, net_.tau);

    for (const auto& p : seg.executed.states) {
        if (distance(p, target) <= cfg_.reach_radius) {
            seg.reached = true;
            break;
        }
    }
    if (seg.reached) {
        ++active_index_;
        if (active_index_ == static_cast<int>(world_.waypoints.size())) {
            active_index_ = 0;
            ++cycles_;
        }
    }

    // simulated-clock bookkeeping: planning of s+1 starts inside this
    // segment's execution window, three sigma of planning time before its end
    seg.plan_start = next_plan_start_;
    seg.plan_end = seg.plan_start + seg.planning_time;
    seg.exec_start = std::max(last_exec_end_, seg.plan_end);
    seg.exec_end = seg.exec_start + seg.expected_exec_time;
    plan_stats_.add(seg.planning_time);
    seg.plan_start_offset = schedule_next_planning(plan_stats_, seg.expected_exec_time);
    next_plan_start_ = seg.exec_start + seg.plan_start_offset;
    last_exec_end_ = seg.exec_end;

    return seg;
}

std::vector<Segment> OnlinePlanner::run(int budget) {
    if (budget < 1) throw std::invalid_argument("OnlinePlanner::run: budget must be >= 1");
    std::vector<Segment> segments;
    segments.reserve(static_cast<size_t>(budget));
    for (int i = 0; i < budget; ++i) segments.push_back(step());
    // flush the last deferred update so the final weights include it
    for (auto& [field, signal] : pending_updates_) apply_update(net_, field, signal);
    pending_updates_.clear();
    return segments;
}

}  // namespace spikeplan
