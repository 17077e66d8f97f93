// Command-line front end: run experiments, aggregate metrics, export
// heatmap/histogram data and manage model files.

#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "spikeplan/harness.hpp"
#include "spikeplan/model_io.hpp"

using namespace spikeplan;

namespace {

struct RunOptions {
    TrialConfig config;
    std::string adaptation = "global";
    std::string out_dir = "runs/latest";
    bool save_models = false;
};

void add_config_flags(CLI::App* cmd, RunOptions& opt) {
    cmd->add_option("--world", opt.config.world, "World preset (paper-sim, paper-transfer) or world file");
    cmd->add_option("--adaptation", opt.adaptation, "Adaptation kind: none | global | local | constant");
    cmd->add_option("--alpha", opt.config.planner.constant_rate, "Learning rate for constant adaptation");
    cmd->add_flag("--ungated", opt.config.planner.ungated, "Disable the learning gate (update every segment)");
    cmd->add_option("--segments", opt.config.segments, "Segment budget per trial");
    cmd->add_option("--trials", opt.config.trials, "Number of independent trials");
    cmd->add_option("--seed", opt.config.master_seed, "Master seed");
    cmd->add_option("--threads", opt.config.threads, "Worker threads (0 = hardware)");
    cmd->add_option("--samples", opt.config.planner.n_samples, "Trajectory samples per segment");
    cmd->add_option("--replay", opt.config.planner.replay_count, "Mental-replay pairs per observation");
    cmd->add_option("--horizon", opt.config.planner.horizon, "Network timesteps per segment");
    cmd->add_option("--reach-radius", opt.config.planner.reach_radius, "Waypoint reach radius");
    cmd->add_option("--velocity", opt.config.planner.velocity, "Execution velocity (units/s)");
    cmd->add_option("--smoothing", opt.config.planner.smoothing_sigma, "Decoding smoothing width (timesteps)");
    cmd->add_option("--nominal-plan-time", opt.config.planner.nominal_plan_time,
                    "Virtual planning time per segment (s)");
    cmd->add_flag("--wall-clock", opt.config.planner.wall_clock, "Schedule on measured planning times");
    cmd->add_option("--tracking-noise", opt.config.planner.tracking_noise, "Gaussian tracking noise stddev");
    cmd->add_option("--neurons-per-dim", opt.config.neurons_per_dim, "State neurons per dimension");
    cmd->add_option("--tau", opt.config.tau, "Refractory length (timesteps)");
    cmd->add_option("--sigma-init", opt.config.sigma_init, "Weight-init basis width (0 = lattice spacing)");
    cmd->add_option("--weight-offset", opt.config.weight_offset, "Additive negative weight offset");
    cmd->add_option("--act-offset", opt.config.activation_offset, "Activation midpoint u0");
    cmd->add_option("--act-scale", opt.config.activation_scale, "Activation temperature");
    cmd->add_option("--ctx-count", opt.config.planner.context.count, "Context neurons per target");
    cmd->add_option("--ctx-spread", opt.config.planner.context.spread, "Context cluster spread");
    cmd->add_option("--ctx-rate", opt.config.planner.context.spike_probability, "Context spike probability");
    cmd->add_option("--ctx-shape", opt.config.planner.context.shape, "Feedforward profile exponent");
    cmd->add_option("--ctx-reach", opt.config.planner.context.reach, "Feedforward profile distance scale");
    cmd->add_option("--ctx-gain", opt.config.planner.context.gain, "Feedforward peak weight");
    cmd->add_option("--local-scale", opt.config.planner.local_scale, "Local signal scaling factor c");
    cmd->add_option("--replay-gain", opt.config.planner.replay_gain, "Gain on the replay batch-mean update");
    cmd->add_option("--load-model", opt.config.load_model, "Start every trial from this model file");
    cmd->set_config("--config", "", "Key-value config file; flags override");
}

void print_table(std::span<const TrialMetrics> metrics) {
    std::printf("%-20s %12s %12s\n", "metric", "mean", "stddev");
    for (const auto& row : summarize_run(metrics))
        std::printf("%-20s %12.4f %12.4f\n", row.metric.c_str(), row.summary.mean, row.summary.stddev);
}

int cmd_run(RunOptions& opt) {
    opt.config.kind = kind_from_name(opt.adaptation);
    std::filesystem::create_directories(opt.out_dir);
    const auto metrics = run_trials(opt.config);

    write_segments_csv(opt.out_dir + "/segments.csv", metrics);
    write_summary_json(opt.out_dir + "/summary.json", opt.config, metrics);
    if (opt.save_models) {
        TrialConfig base = opt.config;
        for (const auto& m : metrics) {
            StateNetwork net = build_network(base);
            net.weights = m.w_final;
            save_model(net, opt.out_dir + "/model_trial" + std::to_string(m.trial) + ".bin");
        }
    }

    std::printf("run: %s, %d trials x %d segments, adaptation=%s\n", opt.config.world.c_str(), opt.config.trials,
                opt.config.segments, opt.adaptation.c_str());
    print_table(metrics);
    std::printf("wrote %s/segments.csv and %s/summary.json\n", opt.out_dir.c_str(), opt.out_dir.c_str());
    return 0;
}

int cmd_report(const std::string& segments_path) {
    const auto rows = read_segments_csv(segments_path);
    if (rows.empty()) {
        std::fprintf(stderr, "report: no segments in %s\n", segments_path.c_str());
        return 1;
    }
    // recompute per-trial metrics from the raw records
    int max_trial = 0;
    for (const auto& r : rows) max_trial = std::max(max_trial, r.trial);
    std::vector<double> updates(static_cast<size_t>(max_trial) + 1, 0.0);
    std::vector<double> collisions(static_cast<size_t>(max_trial) + 1, 0.0);
    std::vector<double> plan_times, exec_times;
    for (const auto& r : rows) {
        if (r.update_triggered) updates[static_cast<size_t>(r.trial)] += 1.0;
        if (r.collided) collisions[static_cast<size_t>(r.trial)] += 1.0;
        plan_times.push_back(r.planning_time);
        exec_times.push_back(r.expected_exec_time);
    }
    const auto u = summarize(updates);
    const auto c = summarize(collisions);
    const auto p = summarize(plan_times);
    const auto e = summarize(exec_times);
    std::printf("%-20s %12s %12s\n", "metric", "mean", "stddev");
    std::printf("%-20s %12.4f %12.4f\n", "updates_triggered", u.mean, u.stddev);
    std::printf("%-20s %12.4f %12.4f\n", "collisions", c.mean, c.stddev);
    std::printf("%-20s %12.4f %12.4f\n", "planning_time", p.mean, p.stddev);
    std::printf("%-20s %12.4f %12.4f\n", "exec_time", e.mean, e.stddev);
    return 0;
}

int cmd_heatmap(const std::string& before, const std::string& after, const std::string& out) {
    const StateNetwork a = load_model(before);
    const StateNetwork b = load_model(after);
    const auto report = synaptic_change_report(a.weights, b.weights, a.grid);
    write_heatmap_csv(report, a.grid, out);
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

int cmd_histogram(const std::string& segments_path, const std::string& out, int bins) {
    const auto rows = read_segments_csv(segments_path);
    std::vector<double> alphas;
    for (const auto& r : rows) alphas.insert(alphas.end(), r.gated_alphas.begin(), r.gated_alphas.end());
    const auto hist = signal_histogram(alphas, bins);
    write_histogram_csv(hist, out);
    std::printf("signals=%ld update_mass=%.6f top15_mass_share=%.4f max=%.6f\n", hist.total, hist.update_mass,
                hist.top15_mass_share, hist.max_magnitude);
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

int cmd_save(RunOptions& opt, const std::string& out_path) {
    opt.config.kind = kind_from_name(opt.adaptation);
    opt.config.trials = 1;
    const World world = resolve_world(opt.config.world);
    const TrialMetrics m = run_single_trial(opt.config, world, 0);
    StateNetwork net = build_network(opt.config);
    net.weights = m.w_final;
    save_model(net, out_path);
    std::printf("trained one trial (%d segments, %d updates triggered, %d targets) and wrote %s\n",
                opt.config.segments, m.updates_triggered, m.targets_reached, out_path.c_str());
    return 0;
}

int cmd_load(const std::string& path) {
    const StateNetwork net = load_model(path);
    std::printf("model: %dx%d grid (K=%d), tau=%d, activation offset=%.6g scale=%.6g, max|W|=%.6g\n",
                net.grid.neurons_per_dim, net.grid.neurons_per_dim, net.K(), net.tau, net.activation.offset,
                net.activation.scale, max_abs_weight(net.weights));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spikeplan: online motion planning and adaptation with a stochastic spiking recurrent network"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "Run trials and export per-segment records");
    add_config_flags(run, run_opt);
    run->add_option("--out", run_opt.out_dir, "Output directory");
    run->add_flag("--save-models", run_opt.save_models, "Save each trial's final model");

    std::string segments_path = "runs/latest/segments.csv";
    auto* report = app.add_subcommand("report", "Recompute aggregates from exported segment records");
    report->add_option("--segments", segments_path, "segments.csv to read");

    std::string before, after, heat_out = "heatmap.csv";
    auto* heatmap = app.add_subcommand("export-heatmap", "Per-neuron synaptic change between two models");
    heatmap->add_option("--before", before, "Model file before adaptation")->required();
    heatmap->add_option("--after", after, "Model file after adaptation")->required();
    heatmap->add_option("--out", heat_out, "Output CSV");

    std::string hist_segments = "runs/latest/segments.csv", hist_out = "histogram.csv";
    int bins = 30;
    auto* hist = app.add_subcommand("histogram", "Gated learning-signal magnitudes and update mass");
    hist->add_option("--segments", hist_segments, "segments.csv to read");
    hist->add_option("--out", hist_out, "Output CSV");
    hist->add_option("--bins", bins, "Number of bins");

    RunOptions save_opt;
    std::string model_out = "model.bin";
    auto* save = app.add_subcommand("save", "Train a single trial and save the resulting model");
    add_config_flags(save, save_opt);
    save->add_option("--out", model_out, "Model file to write");

    std::string model_in;
    auto* load = app.add_subcommand("load", "Validate and describe a model file");
    load->add_option("--model", model_in, "Model file to read")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_opt);
        if (report->parsed()) return cmd_report(segments_path);
        if (heatmap->parsed()) return cmd_heatmap(before, after, heat_out);
        if (hist->parsed()) return cmd_histogram(hist_segments, hist_out, bins);
        if (save->parsed()) return cmd_save(save_opt, model_out);
        if (load->parsed()) return cmd_load(model_in);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
