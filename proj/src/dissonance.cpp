#include "spikeplan/dissonance.hpp"

#include <stdexcept>

namespace spikeplan {

bool DissonanceSignal::any_gate_open() const {
    if (ungated) return values.rows > 0;
    for (double v : values.data)
        if (v > threshold) return true;
    return false;
}

DissonanceSignal global_alpha(const Trajectory& mental, const Trajectory& executed) {
    if (mental.length() != executed.length()) throw std::invalid_argument("global_alpha: trajectory length mismatch");
    DissonanceSignal sig;
    sig.kind = SignalKind::global;
    sig.threshold = kGlobalThreshold;
    sig.cap = kAlphaCap;
    sig.values = Matrix(mental.length(), 1);
    for (int t = 0; t < mental.length(); ++t)
        sig.values(t, 0) = clamp((mental.states[t] - executed.states[t]).norm2(), 0.0, sig.cap);
    return sig;
}

DissonanceSignal local_alpha(const ResponsibilityField& omega_m, const ResponsibilityField& omega_e, double c) {
    if (!omega_m.omega.same_shape(omega_e.omega)) throw std::invalid_argument("local_alpha: shape mismatch");
    DissonanceSignal sig;
    sig.kind = SignalKind::local;
    sig.threshold = kLocalThreshold;
    sig.cap = kAlphaCap;
    sig.values = Matrix(omega_m.T(), omega_m.K());
    for (size_t n = 0; n < sig.values.data.size(); ++n) {
        const double d = omega_m.omega.data[n] - omega_e.omega.data[n];
        sig.values.data[n] = clamp(c * d * d, 0.0, sig.cap);
    }
    return sig;
}

DissonanceSignal constant_alpha(const DissonanceSignal& global_gate, double rate, bool ungated) {
    if (global_gate.kind != SignalKind::global) throw std::invalid_argument("constant_alpha: gate must be global");
    if (rate <= 0.0) throw std::invalid_argument("constant_alpha: rate must be positive");
    DissonanceSignal sig = global_gate;
    sig.kind = SignalKind::constant;
    sig.constant_scale = rate;
    sig.ungated = ungated;
    return sig;
}

}  // namespace spikeplan
