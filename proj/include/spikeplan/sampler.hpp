#pragma once

#include <cstdint>
#include <span>

#include "spikeplan/context.hpp"
#include "spikeplan/network.hpp"
#include "spikeplan/spike_train.hpp"

namespace spikeplan {

/// u_k = sum_i W[i][k] * psp[i] + sum_j theta[j][k] * ctx_spikes[j].
std::vector<double> membrane_potential(const StateNetwork& net, const ContextPopulation& ctx,
                                       std::span<const uint8_t> psp_state, std::span<const uint8_t> ctx_spikes);

/// Simulate the network for T steps. Non-refractory neurons spike with
/// probability f(u); a spike blocks the neuron for the next tau - 1 steps
/// (so consecutive spikes are at least tau apart) while its PSP stays active
/// for tau steps. Context neurons spike independently at their fixed rate.
/// entry_state seeds the refractory/PSP bookkeeping (see SpikeTrain).
/// Deterministic given the seed.
SpikeTrain sample_spiketrain(const StateNetwork& net, const ContextPopulation& ctx, std::span<const int> entry_state,
                             int T, uint64_t seed);

}  // namespace spikeplan
