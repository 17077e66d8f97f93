#pragma once

#include "spikeplan/matrix.hpp"
#include "spikeplan/responsibilities.hpp"
#include "spikeplan/trajectory.hpp"

namespace spikeplan {

inline constexpr double kAlphaCap = 0.3;
inline constexpr double kGlobalThreshold = 0.02;
inline constexpr double kLocalThreshold = 0.05;
inline constexpr double kLocalScaleDefault = 3.0;

enum class SignalKind { global, local, constant };

/// Learning-rate field derived from the mismatch between expectation and
/// observation. For global/constant kinds, values is T x 1; for local it is
/// T x K (per postsynaptic neuron). All stored values are clamped to
/// [0, cap]. A gate opens where the stored value exceeds the threshold
/// strictly; constant kind applies constant_scale wherever its (global)
/// gate opens. ungated drops the gate entirely (instability experiments).
struct DissonanceSignal {
    SignalKind kind = SignalKind::global;
    Matrix values;
    double threshold = kGlobalThreshold;
    double cap = kAlphaCap;
    double constant_scale = 0.0;
    bool ungated = false;
    // Applied updates are scaled by this factor (gating still compares the
    // raw values against the threshold). Replay batches estimate the two CD
    // expectations as a batch mean, so each of the R pair updates carries 1/R.
    double batch_scale = 1.0;

    int T() const { return values.rows; }
    bool any_gate_open() const;
};

/// alpha_t = |mental_t - executed_t|^2, clamped to [0, 0.3], threshold 0.02.
DissonanceSignal global_alpha(const Trajectory& mental, const Trajectory& executed);

/// alpha_{t,i} = c * (omega_m - omega_e)^2, clamped to [0, 0.3], threshold 0.05.
DissonanceSignal local_alpha(const ResponsibilityField& omega_m, const ResponsibilityField& omega_e,
                             double c = kLocalScaleDefault);

/// Constant learning rate gated by a global dissonance signal (or ungated).
DissonanceSignal constant_alpha(const DissonanceSignal& global_gate, double rate, bool ungated = false);

}  // namespace spikeplan
