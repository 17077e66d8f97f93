#pragma once

#include "spikeplan/grid.hpp"
#include "spikeplan/matrix.hpp"

namespace spikeplan {

/// f(u) = 1 / (1 + exp(-(u - offset) / scale)); monotone and differentiable.
struct LogisticActivation {
    double offset = 1.22;
    double scale = 0.06;

    double operator()(double u) const { return 1.0 / (1.0 + std::exp(-(u - offset) / scale)); }
};

/// The recurrent layer: state-neuron grid, transition weights W (row =
/// presynaptic, column = postsynaptic), refractory length and activation.
struct StateNetwork {
    GridSpec grid;
    Matrix weights;  // K x K, every entry in [-1, 1]
    int tau = 10;
    LogisticActivation activation;

    int K() const { return grid.K(); }
};

/// Gaussian-profile initial transition weights with an additive negative
/// offset: W[k][i] = exp(-0.5 (|p_k - p_i| / sigma_init)^2) + offset, clamped
/// to [-1, 1]. Near neighbors come out excitatory, distant ones inhibitory,
/// which makes the initial model an unbiased local random walk.
Matrix init_transition_weights(const GridSpec& grid, double sigma_init, double offset);

void clamp_weights(Matrix& w);
double max_abs_weight(const Matrix& w);

StateNetwork make_network(const GridSpec& grid, int tau, LogisticActivation activation, double sigma_init,
                          double offset);

}  // namespace spikeplan
