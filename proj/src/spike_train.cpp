#include "spikeplan/spike_train.hpp"

#include <stdexcept>

namespace spikeplan {

SpikeTrain::SpikeTrain(int T_, int K_, int tau_) : T(T_), K(K_), tau(tau_) {
    if (T < 0 || K <= 0) throw std::invalid_argument("SpikeTrain: bad shape");
    if (tau < 1) throw std::invalid_argument("SpikeTrain: tau must be >= 1");
    activity.assign(static_cast<size_t>(T) * K, 0);
    entry_state.assign(static_cast<size_t>(K), 0);
}

int SpikeTrain::spike_count() const {
    int n = 0;
    for (uint8_t v : activity) n += v;
    return n;
}

bool SpikeTrain::refractory_valid() const {
    for (int k = 0; k < K; ++k) {
        const int r = entry_state[k];
        // virtual spike before the train; first allowed spike is t = r
        long last = (r >= 1) ? static_cast<long>(r) - tau : -(1L << 40);
        for (int t = 0; t < T; ++t) {
            if (!spiked(t, k)) continue;
            if (t - last < tau) return false;
            last = t;
        }
    }
    return true;
}

std::vector<uint8_t> psp_window(const SpikeTrain& train, int t, int tau) {
    if (t < 0 || t > train.T) throw std::invalid_argument("psp_window: t out of range");
    if (tau < 1) throw std::invalid_argument("psp_window: tau must be >= 1");
    std::vector<uint8_t> out(static_cast<size_t>(train.K), 0);
    const int s_lo = t - tau;
    for (int k = 0; k < train.K; ++k) {
        const int r = train.entry_state[k];
        if (r >= 1 && r <= train.tau - 1) {
            const int virt = r - train.tau;
            if (virt >= s_lo && virt <= t - 1) {
                out[k] = 1;
                continue;
            }
        }
        const int lo = s_lo < 0 ? 0 : s_lo;
        for (int s = lo; s <= t - 1 && s < train.T; ++s) {
            if (train.spiked(s, k)) {
                out[k] = 1;
                break;
            }
        }
    }
    return out;
}

std::vector<uint8_t> psp_rectangular(const SpikeTrain& train, int t) { return psp_window(train, t, train.tau); }

}  // namespace spikeplan
