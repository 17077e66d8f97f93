#pragma once

#include <cstdint>

#include "spikeplan/responsibilities.hpp"
#include "spikeplan/spike_train.hpp"

namespace spikeplan {

inline constexpr double kEncodeRateScale = 100.0;
inline constexpr double kEncodeRateCap = 10.0;
inline constexpr int kEncodeSpikeThreshold = 4;

/// Poisson spike encoding of a responsibility field: the per-neuron mean is
/// clamp(100 * omega, 0, 10); a neuron spikes at t iff its Poisson draw
/// reaches 4 and it has not spiked within the last tau steps (earlier spikes
/// win). Deterministic given the seed.
SpikeTrain encode_poisson(const ResponsibilityField& field, int tau, uint64_t seed);

}  // namespace spikeplan
