#include "spikeplan/harness.hpp"

#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "spikeplan/model_io.hpp"
#include "spikeplan/rng.hpp"

namespace spikeplan {

namespace {
constexpr uint64_t kStreamTrial = 100;
}

StateNetwork build_network(const TrialConfig& config) {
    const GridSpec grid = make_grid(config.neurons_per_dim);
    if (!config.load_model.empty()) {
        StateNetwork net = load_model(config.load_model);
        if (net.grid.neurons_per_dim != config.neurons_per_dim || net.tau != config.tau)
            throw std::runtime_error("build_network: loaded model does not match the configured grid/tau");
        return net;
    }
    LogisticActivation act{config.activation_offset, config.activation_scale};
    return make_network(grid, config.tau, act, config.resolved_sigma_init(grid), config.weight_offset);
}

TrialMetrics run_single_trial(const TrialConfig& config, const World& world, int trial_index) {
    StateNetwork net = build_network(config);

    PlannerConfig pcfg = config.planner;
    pcfg.kind = config.kind;
    pcfg.resp_sigma = config.resolved_sigma_init(net.grid);

    TrialMetrics metrics;
    metrics.trial = trial_index;
    metrics.seed = derive_seed(config.master_seed, kStreamTrial, static_cast<uint64_t>(trial_index));
    metrics.w_initial = net.weights;

    OnlinePlanner planner(net, world, pcfg, metrics.seed);
    metrics.segments = planner.run(config.segments);
    metrics.updates_triggered = planner.updates_triggered();
    metrics.targets_reached = planner.cycles_completed();
    for (const auto& seg : metrics.segments)
        if (seg.collided) ++metrics.collisions;
    metrics.w_final = net.weights;
    return metrics;
}

std::vector<TrialMetrics> run_trials(const TrialConfig& config) {
    if (config.trials < 1 || config.segments < 1) throw std::invalid_argument("run_trials: bad budget");
    const World world = resolve_world(config.world);

    unsigned n_threads = config.threads > 0 ? static_cast<unsigned>(config.threads) : std::thread::hardware_concurrency();
    if (n_threads == 0) n_threads = 1;

    std::vector<TrialMetrics> results(static_cast<size_t>(config.trials));
    int next = 0;
    while (next < config.trials) {
        const int batch = std::min<int>(static_cast<int>(n_threads), config.trials - next);
        std::vector<std::future<TrialMetrics>> futures;
        futures.reserve(static_cast<size_t>(batch));
        for (int b = 0; b < batch; ++b) {
            const int idx = next + b;
            futures.push_back(
                std::async(std::launch::async, [&config, &world, idx] { return run_single_trial(config, world, idx); }));
        }
        for (int b = 0; b < batch; ++b) results[static_cast<size_t>(next + b)] = futures[static_cast<size_t>(b)].get();
        next += batch;
    }
    return results;
}

std::vector<RunSummaryRow> summarize_run(std::span<const TrialMetrics> metrics) {
    std::vector<double> updates, targets, collisions, plan_times, exec_times;
    for (const auto& m : metrics) {
        updates.push_back(m.updates_triggered);
        targets.push_back(m.targets_reached);
        collisions.push_back(m.collisions);
        for (const auto& seg : m.segments) {
            plan_times.push_back(seg.planning_time);
            exec_times.push_back(seg.expected_exec_time);
        }
    }
    return {
        {"updates_triggered", summarize(updates)},
        {"targets_reached", summarize(targets)},
        {"collisions", summarize(collisions)},
        {"planning_time", summarize(plan_times)},
        {"exec_time", summarize(exec_times)},
    };
}

// --- exports ---------------------------------------------------------------

namespace {

std::string join_alphas(const std::vector<double>& values) {
    std::string out;
    char buf[32];
    for (size_t i = 0; i < values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", values[i]);
        if (i) out += '|';
        out += buf;
    }
    return out;
}

std::vector<double> split_alphas(const std::string& text) {
    std::vector<double> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, '|')) out.push_back(std::stod(tok));
    return out;
}

}  // namespace

void write_segments_csv(const std::string& path, std::span<const TrialMetrics> metrics) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_segments_csv: cannot write '" + path + "'");
    out << "# spikeplan-segments v1\n";
    out << "trial,segment,waypoint,collided,hit_obstacle,reached,update_triggered,gates_opened,alpha_max,"
           "planning_time,exec_time,path_length,end_x,end_y,samples_drawn,samples_accepted,plan_start_offset,"
           "gated_alphas\n";
    char buf[512];
    for (const auto& m : metrics) {
        for (const auto& seg : m.segments) {
            std::snprintf(buf, sizeof(buf), "%d,%d,%d,%d,%d,%d,%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d,%.17g,",
                          m.trial, seg.index, seg.waypoint, seg.collided ? 1 : 0, seg.hit_obstacle,
                          seg.reached ? 1 : 0, seg.update_triggered ? 1 : 0, seg.gates_opened, seg.alpha_max,
                          seg.planning_time, seg.expected_exec_time, seg.mental.path_length(),
                          seg.executed.back().x, seg.executed.back().y, seg.samples_drawn, seg.samples_accepted,
                          seg.plan_start_offset);
            out << buf << join_alphas(seg.gated_alphas) << "\n";
        }
    }
}

std::vector<SegmentRow> read_segments_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_segments_csv: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != "# spikeplan-segments v1")
        throw std::runtime_error("read_segments_csv: bad header in '" + path + "'");
    std::getline(in, line);  // column names

    std::vector<SegmentRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        std::vector<std::string> cols;
        while (std::getline(ss, tok, ',')) cols.push_back(tok);
        if (line.back() == ',') cols.push_back("");  // empty trailing alpha list
        if (cols.size() != 18) throw std::runtime_error("read_segments_csv: malformed row '" + line + "'");
        SegmentRow r;
        r.trial = std::stoi(cols[0]);
        r.segment = std::stoi(cols[1]);
        r.waypoint = std::stoi(cols[2]);
        r.collided = cols[3] == "1";
        r.hit_obstacle = std::stoi(cols[4]);
        r.reached = cols[5] == "1";
        r.update_triggered = cols[6] == "1";
        r.gates_opened = std::stoi(cols[7]);
        r.alpha_max = std::stod(cols[8]);
        r.planning_time = std::stod(cols[9]);
        r.expected_exec_time = std::stod(cols[10]);
        r.path_length = std::stod(cols[11]);
        r.end_x = std::stod(cols[12]);
        r.end_y = std::stod(cols[13]);
        r.samples_drawn = std::stoi(cols[14]);
        r.samples_accepted = std::stoi(cols[15]);
        r.plan_start_offset = std::stod(cols[16]);
        r.gated_alphas = split_alphas(cols[17]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string kind_name(AdaptationKind kind) {
    switch (kind) {
        case AdaptationKind::none: return "none";
        case AdaptationKind::global: return "global";
        case AdaptationKind::local: return "local";
        case AdaptationKind::constant: return "constant";
    }
    return "unknown";
}

AdaptationKind kind_from_name(const std::string& name) {
    if (name == "none") return AdaptationKind::none;
    if (name == "global") return AdaptationKind::global;
    if (name == "local") return AdaptationKind::local;
    if (name == "constant") return AdaptationKind::constant;
    throw std::invalid_argument("unknown adaptation kind '" + name + "'");
}

std::string summary_json(const TrialConfig& config, std::span<const TrialMetrics> metrics) {
    nlohmann::ordered_json j;
    j["format"] = "spikeplan-summary";
    j["version"] = 1;
    j["config"] = {{"world", config.world},
                   {"adaptation", kind_name(config.kind)},
                   {"constant_rate", config.planner.constant_rate},
                   {"ungated", config.planner.ungated},
                   {"segments", config.segments},
                   {"trials", config.trials},
                   {"master_seed", config.master_seed},
                   {"neurons_per_dim", config.neurons_per_dim},
                   {"tau", config.tau},
                   {"n_samples", config.planner.n_samples},
                   {"replay_count", config.planner.replay_count},
                   {"horizon", config.planner.horizon}};
    j["trials"] = nlohmann::ordered_json::array();
    for (const auto& m : metrics) {
        j["trials"].push_back({{"trial", m.trial},
                               {"seed", m.seed},
                               {"updates_triggered", m.updates_triggered},
                               {"targets_reached", m.targets_reached},
                               {"collisions", m.collisions}});
    }
    j["aggregate"] = nlohmann::ordered_json::object();
    for (const auto& row : summarize_run(metrics))
        j["aggregate"][row.metric] = {{"mean", row.summary.mean}, {"stddev", row.summary.stddev}};
    return j.dump(2) + "\n";
}

void write_summary_json(const std::string& path, const TrialConfig& config, std::span<const TrialMetrics> metrics) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_summary_json: cannot write '" + path + "'");
    out << summary_json(config, metrics);
}

}  // namespace spikeplan
