#pragma once

#include <cstdint>

#include "spikeplan/grid.hpp"
#include "spikeplan/matrix.hpp"

namespace spikeplan {

struct ContextNeuron {
    Vec2 position;
    double spike_probability = 0.5;
};

struct ContextConfig {
    int count = 36;                  // neurons per target
    double spread = 0.05;            // Gaussian spatial spread around the target
    double spike_probability = 0.5;  // fixed per-timestep rate
    double shape = 1.5;              // generalized-error exponent; 2 gives a Gaussian profile
    double reach = 2.0;              // distance scale of the feedforward profile
    double gain = 0.0403;            // peak feedforward weight
};

/// Task-input population: no lateral connections, feedforward weights theta
/// (N x K) installing a gradient toward the population's target.
struct ContextPopulation {
    std::vector<ContextNeuron> neurons;
    Matrix theta;
    Vec2 target;

    int N() const { return static_cast<int>(neurons.size()); }
};

/// Place a cluster of context neurons Gaussian-distributed around the target.
/// Feedforward weight from context neuron j to state neuron k follows a
/// generalized-error profile of their distance:
///   theta[j][k] = gain * exp(-(|p_k - pos_j| / reach)^shape)
/// so the row peaks at the state neuron nearest pos_j and decays with a
/// longer tail than the local transition prior.
ContextPopulation set_context_for_target(const GridSpec& grid, const Vec2& target, const ContextConfig& config,
                                         uint64_t seed);

/// N = 0 population for context-free sampling.
ContextPopulation empty_context();

}  // namespace spikeplan
