#include <doctest.h>

#include <cmath>

#include "spikeplan/harness.hpp"
#include "spikeplan/planner.hpp"
#include "spikeplan/rng.hpp"

using namespace spikeplan;

namespace {

Trajectory straight(Vec2 from, Vec2 dir, int n) {
    std::vector<Vec2> pts;
    for (int i = 0; i < n; ++i) pts.push_back(from + static_cast<double>(i) * dir);
    return Trajectory(std::move(pts), 0.02, {-1, -1}, {1, 1});
}

}  // namespace

TEST_CASE("reject_samples") {
    SUBCASE("a single sample is always accepted") {
        std::vector<Trajectory> samples{straight({0, 0}, {0.01, 0}, 10)};
        CHECK(reject_samples(samples) == std::vector<int>{0});
    }

    SUBCASE("identical directions are all accepted") {
        std::vector<Trajectory> samples;
        for (int i = 0; i < 12; ++i) samples.push_back(straight({0, 0}, {0.01, 0.0}, 10));
        const auto accepted = reject_samples(samples);
        CHECK(accepted.size() == 12);
    }

    SUBCASE("one opposite-direction sample among forty is rejected") {
        std::vector<Trajectory> samples;
        for (int i = 0; i < 39; ++i) samples.push_back(straight({0, 0}, {0.02, 0}, 10));
        samples.push_back(straight({0, 0}, {-0.02, 0}, 10));  // pi away from the rest
        const auto accepted = reject_samples(samples);
        CHECK(accepted.size() == 39);
        for (int idx : accepted) CHECK(idx != 39);
    }

    SUBCASE("accepted directions always stay within the reference bound") {
        Rng rng(5);
        std::vector<Trajectory> samples;
        for (int i = 0; i < 40; ++i)
            samples.push_back(straight({0, 0}, {rng.uniform(-0.02, 0.02), rng.uniform(-0.02, 0.02)}, 8));
        const auto accepted = reject_samples(samples);
        CHECK(!accepted.empty());
        CHECK(accepted.size() <= 40);
    }
}

TEST_CASE("schedule_next_planning") {
    RunningStats stats;

    SUBCASE("needs at least one observation") { CHECK_THROWS(schedule_next_planning(stats, 1.0)); }

    SUBCASE("zero variance: start mean-plan-time before the end") {
        stats.add(0.2);
        CHECK(schedule_next_planning(stats, 1.0) == doctest::Approx(0.8));
    }

    SUBCASE("three-sigma margin") {
        // observations with mean 0.2 and sample stddev 0.05
        stats.add(0.15);
        stats.add(0.2);
        stats.add(0.25);
        const double sd = stats.stddev();
        CHECK(schedule_next_planning(stats, 1.0) == doctest::Approx(1.0 - (0.2 + 3.0 * sd)));
    }

    SUBCASE("insufficient budget clamps to an immediate start") {
        stats.add(0.2);
        CHECK(schedule_next_planning(stats, 0.1) == 0.0);
    }
}

TEST_CASE("incorporate_feedback") {
    const GridSpec grid = make_grid(15);

    SUBCASE("the neuron nearest the final position is just-spiked, everyone else free") {
        const Trajectory executed = straight({0.0, 0.0}, {0.01, 0.005}, 12);
        const auto entry = incorporate_feedback(executed, grid, 10);
        const int k = grid.nearest(executed.back());
        for (int i = 0; i < grid.K(); ++i) CHECK(entry[i] == (i == k ? 9 : 0));
    }

    SUBCASE("an exact preferred position marks that neuron") {
        const Trajectory executed = straight(grid.preferred[37], {0, 0}, 3);
        const auto entry = incorporate_feedback(executed, grid, 10);
        CHECK(entry[37] == 9);
    }

    SUBCASE("equidistant final position breaks the tie toward the lower index") {
        const Vec2 mid = 0.5 * (grid.preferred[111] + grid.preferred[112]);
        const Trajectory executed({mid}, 0.02, grid.lo, grid.hi);
        const auto entry = incorporate_feedback(executed, grid, 10);
        CHECK(entry[111] == 9);
        CHECK(entry[112] == 0);
    }
}

TEST_CASE("plan_segment basics") {
    TrialConfig cfg;
    const StateNetwork net = build_network(cfg);
    const ContextPopulation ctx =
        set_context_for_target(net.grid, {0.5, 0.0}, cfg.planner.context, 11);
    const auto entry = anchor_entry_state({-0.5, 0.0}, net.grid, net.tau);

    SUBCASE("n_samples = 1 returns that sample as the mental trajectory") {
        const PlanResult r = plan_segment(net, ctx, entry, 1, 30, 5.0, 0.02, 77);
        REQUIRE(r.samples.size() == 1);
        REQUIRE(r.accepted == std::vector<int>{0});
        CHECK(r.mental.states == r.samples[0].states);
    }

    SUBCASE("mental equals the timestep-wise mean of the accepted samples") {
        const PlanResult r = plan_segment(net, ctx, entry, 8, 30, 5.0, 0.02, 78);
        REQUIRE(!r.accepted.empty());
        for (int t = 0; t < 30; t += 7) {
            Vec2 mean{0, 0};
            for (int idx : r.accepted) mean += r.samples[idx].states[t];
            mean = mean * (1.0 / static_cast<double>(r.accepted.size()));
            CHECK(r.mental.states[t].x == doctest::Approx(mean.x).epsilon(1e-12));
            CHECK(r.mental.states[t].y == doctest::Approx(mean.y).epsilon(1e-12));
        }
    }

    SUBCASE("deterministic given the seed") {
        const PlanResult a = plan_segment(net, ctx, entry, 6, 30, 5.0, 0.02, 79);
        const PlanResult b = plan_segment(net, ctx, entry, 6, 30, 5.0, 0.02, 79);
        CHECK(a.mental.states == b.mental.states);
    }
}

TEST_CASE("online planner loop") {
    TrialConfig cfg;
    cfg.kind = AdaptationKind::none;
    const World world = resolve_world("paper-sim");

    StateNetwork net = build_network(cfg);
    PlannerConfig pcfg = cfg.planner;
    pcfg.kind = cfg.kind;
    pcfg.resp_sigma = cfg.resolved_sigma_init(net.grid);
    OnlinePlanner planner(net, world, pcfg, 12345);
    const auto segments = planner.run(40);

    SUBCASE("bookkeeping is consistent") {
        for (const auto& seg : segments) {
            CHECK(seg.samples_drawn == pcfg.n_samples);
            CHECK(seg.samples_accepted >= 1);
            CHECK(seg.mental.length() == pcfg.horizon);
            CHECK(seg.executed.length() == pcfg.horizon);
            CHECK(seg.expected_exec_time ==
                  doctest::Approx(seg.mental.path_length() / pcfg.velocity).epsilon(1e-12));
            CHECK_FALSE(seg.update_triggered);  // adaptation disabled
        }
    }

    SUBCASE("waypoints only advance forward and cycles count wraps") {
        int last_wp = segments.front().waypoint;
        int wraps = 0;
        for (const auto& seg : segments) {
            const int wp = seg.waypoint;
            if (wp != last_wp) {
                const bool forward = wp == last_wp + 1 || (last_wp == 3 && wp == 0);
                CHECK(forward);
                if (last_wp == 3 && wp == 0) ++wraps;
                last_wp = wp;
            }
        }
        CHECK(planner.cycles_completed() == wraps);
    }

    SUBCASE("planning of the next segment starts no later than the current execution ends") {
        for (size_t i = 1; i < segments.size(); ++i) {
            CHECK(segments[i].plan_start <= segments[i - 1].exec_end + 1e-12);
            CHECK(segments[i].plan_start >= segments[i - 1].exec_start - 1e-12);
        }
    }

    SUBCASE("feedback anchoring holds on average") {
        double acc = 0.0;
        for (size_t i = 1; i < segments.size(); ++i)
            acc += distance(segments[i].mental.front(), segments[i - 1].executed.back());
        const double mean = acc / static_cast<double>(segments.size() - 1);
        CHECK(mean < net.grid.lattice_spacing());
    }

    SUBCASE("weights untouched when adaptation is off") {
        const StateNetwork fresh = build_network(cfg);
        CHECK(net.weights == fresh.weights);
    }
}

TEST_CASE("adaptation in the loop stays gated and clamped") {
    TrialConfig cfg;
    cfg.kind = AdaptationKind::global;
    const World world = resolve_world("paper-sim");
    StateNetwork net = build_network(cfg);
    PlannerConfig pcfg = cfg.planner;
    pcfg.kind = cfg.kind;
    pcfg.resp_sigma = cfg.resolved_sigma_init(net.grid);
    OnlinePlanner planner(net, world, pcfg, 999);
    const auto segments = planner.run(60);

    CHECK(max_abs_weight(net.weights) <= 1.0);
    for (const auto& seg : segments) {
        if (seg.update_triggered) {
            CHECK(seg.gates_opened > 0);
            CHECK(seg.alpha_max > kGlobalThreshold);
        } else {
            CHECK(seg.gates_opened == 0);
        }
        for (double a : seg.gated_alphas) CHECK(a <= kAlphaCap + 1e-12);
    }
    CHECK(planner.updates_triggered() ==
          static_cast<int>(std::count_if(segments.begin(), segments.end(),
                                         [](const Segment& s) { return s.update_triggered; })));
}
