#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "spikeplan/dissonance.hpp"
#include "spikeplan/network.hpp"
#include "spikeplan/spike_train.hpp"

namespace spikeplan {

/// One-cycle contrastive-divergence update field between a data train and a
/// model train:
///   delta[t][k][i] = psp_data(t)[k] * (v_data(t)[i] - v_model(t)[i])
/// where psp_data(t) is the tau-window presynaptic trace over [t-tau, t-1]
/// and the postsynaptic factors are raw spikes, keeping the data and model
/// statistics balanced (zero expected update at matched distributions).
/// Stored factorized per timestep as the presynaptic support and the
/// postsynaptic difference entries in {-1, +1}; index 0 is empty, updates
/// exist for t in [1, T).
struct CdUpdateField {
    int T = 0;
    int K = 0;
    std::vector<std::vector<int32_t>> pre;
    std::vector<std::vector<std::pair<int32_t, int8_t>>> post;

    /// Dense lookup, mainly for tests.
    int delta_at(int t, int k, int i) const;
};

CdUpdateField cd_delta(const SpikeTrain& data, const SpikeTrain& model, int tau);

/// Apply a gated, scaled update field to the recurrent weights:
///   global:   W[k][i] += alpha_t       * delta[t][k][i]  where alpha_t   > threshold
///   local:    W[k][i] += alpha_{t,i}   * delta[t][k][i]  where alpha_{t,i} > threshold
///   constant: W[k][i] += constant_rate * delta[t][k][i]  gated like global
/// Entries are re-clamped to [-1, 1]. Returns the number of gates that
/// opened on a nonempty delta (timesteps for global/constant, (t, i) pairs
/// for local); zero means the weights are untouched.
int apply_update(StateNetwork& net, const CdUpdateField& delta, const DissonanceSignal& signal);

}  // namespace spikeplan
