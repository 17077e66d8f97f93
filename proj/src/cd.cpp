#include "spikeplan/cd.hpp"

#include <stdexcept>

namespace spikeplan {

int CdUpdateField::delta_at(int t, int k, int i) const {
    if (t < 1 || t >= T) return 0;
    bool pre_active = false;
    for (int32_t p : pre[t])
        if (p == k) {
            pre_active = true;
            break;
        }
    if (!pre_active) return 0;
    for (const auto& [idx, d] : post[t])
        if (idx == i) return d;
    return 0;
}

CdUpdateField cd_delta(const SpikeTrain& data, const SpikeTrain& model, int tau) {
    if (data.T != model.T) throw std::invalid_argument("cd_delta: horizon mismatch");
    if (data.K != model.K) throw std::invalid_argument("cd_delta: population mismatch");

    CdUpdateField field;
    field.T = data.T;
    field.K = data.K;
    field.pre.resize(static_cast<size_t>(field.T));
    field.post.resize(static_cast<size_t>(field.T));

    // Presynaptic factor: tau-window PSP of the data train. Postsynaptic
    // factors: raw spikes of data and model, so the two statistics are
    // balanced and the expected update vanishes when the model matches the
    // data distribution.
    for (int t = 1; t < field.T; ++t) {
        // window [t - tau, t - 1]: the presynaptic trace driving step t
        const std::vector<uint8_t> psp_prev = psp_window(data, t, tau);
        auto& pre = field.pre[t];
        auto& post = field.post[t];
        for (int k = 0; k < field.K; ++k)
            if (psp_prev[k]) pre.push_back(k);
        if (!pre.empty()) {
            for (int i = 0; i < field.K; ++i) {
                const int d = static_cast<int>(data.spiked(t, i)) - static_cast<int>(model.spiked(t, i));
                if (d != 0) post.push_back({i, static_cast<int8_t>(d)});
            }
        }
    }
    return field;
}

int apply_update(StateNetwork& net, const CdUpdateField& delta, const DissonanceSignal& signal) {
    if (delta.K != net.K()) throw std::invalid_argument("apply_update: population mismatch");
    if (signal.values.rows != delta.T) throw std::invalid_argument("apply_update: signal horizon mismatch");
    if (signal.kind == SignalKind::local && signal.values.cols != delta.K)
        throw std::invalid_argument("apply_update: local signal width mismatch");

    int gates_opened = 0;
    for (int t = 1; t < delta.T; ++t) {
        const auto& pre = delta.pre[t];
        const auto& post = delta.post[t];
        if (pre.empty() || post.empty()) continue;

        if (signal.kind == SignalKind::local) {
            // gate and scale per postsynaptic neuron
            std::vector<std::pair<int32_t, double>> scaled;
            scaled.reserve(post.size());
            for (const auto& [i, d] : post) {
                const double a = signal.values(t, i);
                if (!signal.ungated && !(a > signal.threshold)) continue;
                ++gates_opened;
                scaled.push_back({i, a * signal.batch_scale * d});
            }
            if (scaled.empty()) continue;
            for (int32_t k : pre) {
                auto row = net.weights.row(k);
                for (const auto& [i, v] : scaled) row[i] = clamp(row[i] + v, -1.0, 1.0);
            }
        } else {
            const double g = signal.values(t, 0);
            if (!signal.ungated && !(g > signal.threshold)) continue;
            ++gates_opened;
            const double scale = (signal.kind == SignalKind::constant ? signal.constant_scale : g) * signal.batch_scale;
            for (int32_t k : pre) {
                auto row = net.weights.row(k);
                for (const auto& [i, d] : post) row[i] = clamp(row[i] + scale * d, -1.0, 1.0);
            }
        }
    }
    return gates_opened;
}

}  // namespace spikeplan
