#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace spikeplan {

/// Binary activity of K neurons over T timesteps plus the refractory state
/// the train was started from.
///
/// entry_state[k] is the number of remaining refractory steps at t = 0, i.e.
/// the first timestep at which neuron k may spike. A value r in [1, tau-1]
/// corresponds to a spike that happened at virtual time r - tau (before the
/// train); that virtual spike still drives a PSP for t in [0, r]. Values
/// >= tau only block, they carry no PSP. "Just spiked" therefore maps to
/// r = tau - 1.
struct SpikeTrain {
    int T = 0;
    int K = 0;
    int tau = 1;
    std::vector<uint8_t> activity;  // T x K, row-major
    std::vector<int> entry_state;   // K

    SpikeTrain() = default;
    SpikeTrain(int T_, int K_, int tau_);

    bool spiked(int t, int k) const { return activity[static_cast<size_t>(t) * K + k] != 0; }
    void set_spike(int t, int k) { activity[static_cast<size_t>(t) * K + k] = 1; }
    std::span<const uint8_t> step(int t) const { return {activity.data() + static_cast<size_t>(t) * K, static_cast<size_t>(K)}; }

    int spike_count() const;

    /// True iff, for each neuron, consecutive spikes are at least tau steps
    /// apart, counting the virtual spike implied by entry_state.
    bool refractory_valid() const;
};

/// Rectangular PSP: component k is 1 iff neuron k spiked in [t - tau, t - 1],
/// window truncated at 0 and extended by the train's entry state. Valid for
/// 0 <= t <= T. The tau argument lets learning rules use a kernel independent
/// of the train's own refractory constant.
std::vector<uint8_t> psp_window(const SpikeTrain& train, int t, int tau);
std::vector<uint8_t> psp_rectangular(const SpikeTrain& train, int t);

}  // namespace spikeplan
