#include "spikeplan/sampler.hpp"

#include <limits>
#include <stdexcept>

#include "spikeplan/rng.hpp"

namespace spikeplan {

std::vector<double> membrane_potential(const StateNetwork& net, const ContextPopulation& ctx,
                                       std::span<const uint8_t> psp_state, std::span<const uint8_t> ctx_spikes) {
    const int K = net.K();
    if (static_cast<int>(psp_state.size()) != K) throw std::invalid_argument("membrane_potential: psp size mismatch");
    if (static_cast<int>(ctx_spikes.size()) != ctx.N())
        throw std::invalid_argument("membrane_potential: context size mismatch");

    std::vector<double> u(static_cast<size_t>(K), 0.0);
    for (int i = 0; i < K; ++i) {
        if (!psp_state[i]) continue;
        const auto row = net.weights.row(i);
        for (int k = 0; k < K; ++k) u[k] += row[k];
    }
    for (int j = 0; j < ctx.N(); ++j) {
        if (!ctx_spikes[j]) continue;
        const auto row = ctx.theta.row(j);
        for (int k = 0; k < K; ++k) u[k] += row[k];
    }
    return u;
}

SpikeTrain sample_spiketrain(const StateNetwork& net, const ContextPopulation& ctx, std::span<const int> entry_state,
                             int T, uint64_t seed) {
    const int K = net.K();
    const int tau = net.tau;
    if (T < 1) throw std::invalid_argument("sample_spiketrain: horizon must be >= 1");
    if (static_cast<int>(entry_state.size()) != K)
        throw std::invalid_argument("sample_spiketrain: entry state size mismatch");

    SpikeTrain train(T, K, tau);
    constexpr int kNever = std::numeric_limits<int>::min() / 2;
    std::vector<int> last_spike(static_cast<size_t>(K), kNever);
    std::vector<int> next_allowed(static_cast<size_t>(K), 0);
    for (int k = 0; k < K; ++k) {
        const int r = entry_state[k];
        if (r < 0) throw std::invalid_argument("sample_spiketrain: negative entry state");
        train.entry_state[k] = r;
        next_allowed[k] = r;
        if (r >= 1 && r <= tau - 1) last_spike[k] = r - tau;  // virtual spike before t = 0
    }

    Rng rng(seed);
    const int N = ctx.N();
    std::vector<uint8_t> psp(static_cast<size_t>(K));
    std::vector<uint8_t> ctx_spikes(static_cast<size_t>(N));

    for (int t = 0; t < T; ++t) {
        for (int k = 0; k < K; ++k) psp[k] = (last_spike[k] >= t - tau && last_spike[k] <= t - 1) ? 1 : 0;
        for (int j = 0; j < N; ++j) ctx_spikes[j] = rng.uniform01() < ctx.neurons[j].spike_probability ? 1 : 0;

        const std::vector<double> u = membrane_potential(net, ctx, psp, ctx_spikes);
        for (int k = 0; k < K; ++k) {
            if (t < next_allowed[k]) continue;
            if (rng.uniform01() < net.activation(u[k])) {
                train.set_spike(t, k);
                last_spike[k] = t;
                next_allowed[k] = t + tau;
            }
        }
    }
    return train;
}

}  // namespace spikeplan
