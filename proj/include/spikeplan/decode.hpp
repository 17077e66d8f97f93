#pragma once

#include "spikeplan/grid.hpp"
#include "spikeplan/spike_train.hpp"
#include "spikeplan/trajectory.hpp"

namespace spikeplan {

/// Population decoding: filter each neuron's binary activity with a Gaussian
/// temporal window (stddev smoothing_sigma, truncated at 3 sigma), then take
/// the activity-weighted mean of preferred positions per timestep.
/// Timesteps with no activity in reach are filled by linear interpolation
/// from their decoded neighbors; a fully silent train is an error.
Trajectory decode(const SpikeTrain& train, const GridSpec& grid, double smoothing_sigma = 5.0, double dt = 0.02);

}  // namespace spikeplan
