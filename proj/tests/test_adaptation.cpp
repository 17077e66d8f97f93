#include <doctest.h>

#include <cmath>

#include "spikeplan/cd.hpp"
#include "spikeplan/decode.hpp"
#include "spikeplan/dissonance.hpp"
#include "spikeplan/replay.hpp"
#include "spikeplan/rng.hpp"
#include "spikeplan/sampler.hpp"

using namespace spikeplan;

namespace {

Trajectory make_traj(std::vector<Vec2> pts) { return Trajectory(std::move(pts), 0.02, {-1, -1}, {1, 1}); }

}  // namespace

TEST_CASE("global_alpha") {
    SUBCASE("identical trajectories give zero signal and no gate") {
        const Trajectory t = make_traj({{0, 0}, {0.1, 0.1}, {0.2, 0.2}});
        const DissonanceSignal sig = global_alpha(t, t);
        for (double v : sig.values.data) CHECK(v == 0.0);
        CHECK_FALSE(sig.any_gate_open());
    }

    SUBCASE("a (0.1, 0.1) gap evaluates to the threshold value") {
        const Trajectory m = make_traj({{0, 0}, {0.1, 0.1}});
        const Trajectory e = make_traj({{0, 0}, {0.0, 0.0}});
        const DissonanceSignal sig = global_alpha(m, e);
        // hand-evaluated: 0.1^2 + 0.1^2 = 0.02
        CHECK(sig.values(1, 0) == doctest::Approx(0.02).epsilon(1e-12));
        CHECK(sig.threshold == 0.02);
    }

    SUBCASE("the gate requires strictly more than the threshold") {
        DissonanceSignal sig;
        sig.kind = SignalKind::global;
        sig.threshold = 0.02;
        sig.values = Matrix(3, 1, 0.0);
        sig.values(1, 0) = 0.02;  // exactly at threshold: closed
        CHECK_FALSE(sig.any_gate_open());
        sig.values(2, 0) = 0.0200001;
        CHECK(sig.any_gate_open());
    }

    SUBCASE("a (0.5, 0.5) gap clamps to the cap") {
        const Trajectory m = make_traj({{0.5, 0.5}});
        const Trajectory e = make_traj({{0.0, 0.0}});
        const DissonanceSignal sig = global_alpha(m, e);
        CHECK(sig.values(0, 0) == doctest::Approx(0.3));
    }

    SUBCASE("length mismatch throws") {
        CHECK_THROWS(global_alpha(make_traj({{0, 0}}), make_traj({{0, 0}, {1, 1}})));
    }
}

TEST_CASE("local_alpha") {
    ResponsibilityField a, b;
    a.omega = Matrix(2, 3);
    b.omega = Matrix(2, 3);

    SUBCASE("identical fields give zeros") {
        a.omega(0, 0) = b.omega(0, 0) = 0.7;
        const DissonanceSignal sig = local_alpha(a, b);
        for (double v : sig.values.data) CHECK(v == 0.0);
    }

    SUBCASE("difference 0.2 with c = 3 gives 0.12") {
        a.omega(1, 2) = 0.5;
        b.omega(1, 2) = 0.3;
        const DissonanceSignal sig = local_alpha(a, b, 3.0);
        CHECK(sig.values(1, 2) == doctest::Approx(0.12).epsilon(1e-12));
        CHECK(sig.threshold == 0.05);
        CHECK(sig.any_gate_open());
    }

    SUBCASE("difference 0.4 clamps to the cap") {
        a.omega(0, 1) = 0.4;
        const DissonanceSignal sig = local_alpha(a, b, 3.0);
        CHECK(sig.values(0, 1) == doctest::Approx(0.3));
    }

    SUBCASE("shape mismatch throws") {
        ResponsibilityField c;
        c.omega = Matrix(3, 3);
        CHECK_THROWS(local_alpha(a, c));
    }
}

TEST_CASE("constant_alpha wraps a global gate") {
    const Trajectory m = make_traj({{0, 0}, {0.2, 0.2}});
    const Trajectory e = make_traj({{0, 0}, {0.0, 0.0}});
    const DissonanceSignal gate = global_alpha(m, e);
    const DissonanceSignal sig = constant_alpha(gate, 0.001);
    CHECK(sig.kind == SignalKind::constant);
    CHECK(sig.constant_scale == 0.001);
    CHECK(sig.values == gate.values);
    CHECK(sig.any_gate_open());

    const DissonanceSignal always = constant_alpha(gate, 0.1, true);
    CHECK(always.ungated);
    CHECK_THROWS(constant_alpha(gate, 0.0));
}

TEST_CASE("cd_delta") {
    // two neurons, tau 2; craft trains by hand
    SUBCASE("matched data and model spikes cancel") {
        SpikeTrain data(4, 2, 2), model(4, 2, 2);
        data.set_spike(0, 0);  // presynaptic support at t = 1, 2
        data.set_spike(1, 1);
        model.set_spike(1, 1);
        const CdUpdateField field = cd_delta(data, model, 2);
        CHECK(field.delta_at(1, 0, 1) == 0);  // 1 - 1
    }

    SUBCASE("data-only postsynaptic spike potentiates") {
        SpikeTrain data(4, 2, 2), model(4, 2, 2);
        data.set_spike(0, 0);
        data.set_spike(1, 1);
        const CdUpdateField field = cd_delta(data, model, 2);
        CHECK(field.delta_at(1, 0, 1) == 1);
    }

    SUBCASE("model-only postsynaptic spike depresses") {
        SpikeTrain data(4, 2, 2), model(4, 2, 2);
        data.set_spike(0, 0);
        model.set_spike(1, 1);
        const CdUpdateField field = cd_delta(data, model, 2);
        CHECK(field.delta_at(1, 0, 1) == -1);
    }

    SUBCASE("no presynaptic support, no update") {
        SpikeTrain data(4, 2, 2), model(4, 2, 2);
        model.set_spike(2, 1);
        const CdUpdateField field = cd_delta(data, model, 2);
        CHECK(field.delta_at(2, 0, 1) == 0);
        CHECK(field.pre[2].empty());
    }

    SUBCASE("horizon mismatch throws") {
        SpikeTrain a(4, 2, 2), b(5, 2, 2);
        CHECK_THROWS(cd_delta(a, b, 2));
    }
}

TEST_CASE("apply_update") {
    const GridSpec grid = make_grid(3, {-1, -1}, {1, 1});
    StateNetwork net = make_network(grid, 2, LogisticActivation{}, grid.lattice_spacing(), -0.1);

    SpikeTrain data(5, 9, 2), model(5, 9, 2);
    data.set_spike(0, 4);
    data.set_spike(1, 5);   // potentiation target
    model.set_spike(1, 3);  // depression target
    const CdUpdateField field = cd_delta(data, model, 2);

    SUBCASE("all signals below threshold leave the weights bit-identical") {
        DissonanceSignal sig;
        sig.kind = SignalKind::global;
        sig.values = Matrix(5, 1, 0.019);
        sig.threshold = 0.02;
        const Matrix before = net.weights;
        const int gates = apply_update(net, field, sig);
        CHECK(gates == 0);
        CHECK(net.weights == before);
    }

    SUBCASE("an open global gate applies alpha-scaled deltas") {
        DissonanceSignal sig;
        sig.kind = SignalKind::global;
        sig.values = Matrix(5, 1, 0.0);
        sig.values(1, 0) = 0.1;
        const double w45 = net.weights(4, 5);
        const double w43 = net.weights(4, 3);
        const int gates = apply_update(net, field, sig);
        CHECK(gates == 1);
        CHECK(net.weights(4, 5) == doctest::Approx(w45 + 0.1));
        CHECK(net.weights(4, 3) == doctest::Approx(w43 - 0.1));
    }

    SUBCASE("constant kind gates like global but applies the constant rate") {
        DissonanceSignal gate;
        gate.kind = SignalKind::global;
        gate.values = Matrix(5, 1, 0.0);
        gate.values(1, 0) = 0.25;
        const DissonanceSignal sig = constant_alpha(gate, 0.001);
        const double w45 = net.weights(4, 5);
        apply_update(net, field, sig);
        CHECK(net.weights(4, 5) == doctest::Approx(w45 + 0.001));
    }

    SUBCASE("local kind gates per postsynaptic neuron") {
        DissonanceSignal sig;
        sig.kind = SignalKind::local;
        sig.threshold = 0.05;
        sig.values = Matrix(5, 9, 0.0);
        sig.values(1, 5) = 0.2;  // only neuron 5 open at t = 1
        const double w45 = net.weights(4, 5);
        const double w43 = net.weights(4, 3);
        const int gates = apply_update(net, field, sig);
        CHECK(gates == 1);
        CHECK(net.weights(4, 5) == doctest::Approx(w45 + 0.2));
        CHECK(net.weights(4, 3) == doctest::Approx(w43));  // gate closed for neuron 3
    }

    SUBCASE("updates re-clamp into [-1, 1]") {
        net.weights(4, 5) = 0.95;
        DissonanceSignal sig;
        sig.kind = SignalKind::global;
        sig.values = Matrix(5, 1, 0.3);
        apply_update(net, field, sig);
        CHECK(net.weights(4, 5) == 1.0);
        CHECK(max_abs_weight(net.weights) <= 1.0);
    }

    SUBCASE("batch scale multiplies the applied amount but not the gate") {
        DissonanceSignal sig;
        sig.kind = SignalKind::global;
        sig.values = Matrix(5, 1, 0.0);
        sig.values(1, 0) = 0.1;
        sig.batch_scale = 0.5;
        const double w45 = net.weights(4, 5);
        const int gates = apply_update(net, field, sig);
        CHECK(gates == 1);
        CHECK(net.weights(4, 5) == doctest::Approx(w45 + 0.05));
    }
}

TEST_CASE("mental_replay") {
    const GridSpec grid = make_grid(15);
    const Mat2 Sigma = Mat2::isotropic(0.75 * grid.lattice_spacing());
    const Trajectory mental = make_traj({{0.0, 0.0}, {0.1, 0.0}, {0.2, 0.0}, {0.3, 0.0}});
    const Trajectory executed = make_traj({{0.0, 0.0}, {0.1, 0.0}, {0.1, 0.0}, {0.1, 0.0}});

    SUBCASE("produces the requested number of pairs") {
        CHECK(mental_replay(mental, executed, grid, Sigma, 10, 20, 1).count() == 20);
        CHECK(mental_replay(mental, executed, grid, Sigma, 10, 1, 1).count() == 1);
        CHECK_THROWS(mental_replay(mental, executed, grid, Sigma, 10, 0, 1));
    }

    SUBCASE("pairs are distinct across the batch") {
        const ReplayBatch batch = mental_replay(mental, executed, grid, Sigma, 10, 20, 7);
        int distinct = 0;
        for (int r = 1; r < batch.count(); ++r)
            if (batch.pairs[r].first.activity != batch.pairs[0].first.activity) ++distinct;
        CHECK(distinct >= 2);
    }

    SUBCASE("deterministic given the seed") {
        const ReplayBatch a = mental_replay(mental, executed, grid, Sigma, 10, 5, 42);
        const ReplayBatch b = mental_replay(mental, executed, grid, Sigma, 10, 5, 42);
        for (int r = 0; r < 5; ++r) {
            CHECK(a.pairs[r].first.activity == b.pairs[r].first.activity);
            CHECK(a.pairs[r].second.activity == b.pairs[r].second.activity);
        }
    }
}

TEST_CASE("replay batch equals sequential single-pair updates") {
    const GridSpec grid = make_grid(15);
    const Mat2 Sigma = Mat2::isotropic(0.75 * grid.lattice_spacing());
    const Trajectory mental = make_traj({{0.0, 0.0}, {0.15, 0.0}, {0.3, 0.0}});
    const Trajectory executed = make_traj({{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}});

    DissonanceSignal sig = global_alpha(mental, executed);
    sig.batch_scale = 1.0 / 8.0;
    const ReplayBatch batch = mental_replay(mental, executed, grid, Sigma, 10, 8, 3);

    StateNetwork net_a = make_network(grid, 10, LogisticActivation{}, 0.75 * grid.lattice_spacing(), -0.02);
    StateNetwork net_b = net_a;

    // batch application
    for (const auto& [data, model] : batch.pairs) apply_update(net_a, cd_delta(data, model, net_a.tau), sig);
    // manual sequential application in the same order
    for (int r = 0; r < batch.count(); ++r) {
        const CdUpdateField field = cd_delta(batch.pairs[r].first, batch.pairs[r].second, net_b.tau);
        apply_update(net_b, field, sig);
    }
    CHECK(net_a.weights == net_b.weights);
    CHECK(net_a.weights.data != make_network(grid, 10, LogisticActivation{}, 0.75 * grid.lattice_spacing(), -0.02)
                                    .weights.data);  // something actually changed
}

TEST_CASE("repeated CD updates pull model samples toward a fixed data train") {
    // 3x3 toy grid; the data train walks the bottom edge
    const GridSpec grid = make_grid(3);
    const Mat2 Sigma = Mat2::isotropic(0.75 * grid.lattice_spacing());
    const int T = 12, tau = 3;
    StateNetwork base = make_network(grid, tau, LogisticActivation{0.5, 0.15}, 0.75 * grid.lattice_spacing(), -0.02);

    const Trajectory data_traj = make_traj({{-1, -1}, {-0.7, -1}, {-0.4, -1}, {-0.1, -1}, {0.2, -1}, {0.5, -1},
                                            {0.8, -1}, {1, -1}, {1, -1}, {1, -1}, {1, -1}, {1, -1}});
    const ResponsibilityField data_field = responsibilities(data_traj, grid, Sigma);
    const std::vector<int> entry(static_cast<size_t>(grid.K()), 0);

    auto mean_distance = [&](const StateNetwork& net, uint64_t seed) {
        double acc = 0.0;
        int used = 0;
        for (int c = 0; c < 60; ++c) {
            const SpikeTrain train = sample_spiketrain(net, empty_context(), entry, T, derive_seed(seed, c));
            if (train.spike_count() == 0) continue;
            const Trajectory traj = decode(train, grid, 2.0);
            for (int t = 0; t < T; ++t) acc += distance(traj.states[t], data_traj.states[t]);
            used += T;
        }
        return used > 0 ? acc / used : 2.0;
    };

    const int n_updates = 10, n_seeds = 48;
    std::vector<double> avg(static_cast<size_t>(n_updates) + 1, 0.0);
    for (int s = 0; s < n_seeds; ++s) {
        StateNetwork net = base;
        const SpikeTrain data_train = encode_poisson(data_field, tau, derive_seed(1000, s));
        // common measurement seeds across the sequence so the per-update
        // comparison is not drowned by evaluation noise
        avg[0] += mean_distance(net, derive_seed(2000, s));
        for (int u = 1; u <= n_updates; ++u) {
            const SpikeTrain model_train =
                sample_spiketrain(net, empty_context(), entry, T, derive_seed(3000, s, u));
            DissonanceSignal sig;
            sig.kind = SignalKind::constant;
            sig.values = Matrix(T, 1, 1.0);  // always above threshold
            sig.constant_scale = 0.05;
            apply_update(net, cd_delta(data_train, model_train, tau), sig);
            avg[static_cast<size_t>(u)] += mean_distance(net, derive_seed(2000, s));
        }
    }
    // averaged over seeds, the distance decreases strictly across the updates
    for (int u = 0; u < n_updates; ++u) CHECK(avg[static_cast<size_t>(u + 1)] < avg[static_cast<size_t>(u)] + 1e-9);
    CHECK(avg[n_updates] < avg[0] * 0.9);
}
