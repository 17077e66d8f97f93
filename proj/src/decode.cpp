#include "spikeplan/decode.hpp"

#include <cmath>
#include <stdexcept>

namespace spikeplan {

Trajectory decode(const SpikeTrain& train, const GridSpec& grid, double smoothing_sigma, double dt) {
    if (train.K != grid.K()) throw std::invalid_argument("decode: train/grid size mismatch");
    if (smoothing_sigma <= 0.0) throw std::invalid_argument("decode: smoothing width must be positive");
    const int T = train.T;
    const int K = train.K;

    const int radius = static_cast<int>(std::ceil(3.0 * smoothing_sigma));
    std::vector<double> window(static_cast<size_t>(radius) + 1);
    for (int d = 0; d <= radius; ++d) window[d] = std::exp(-0.5 * d * d / (smoothing_sigma * smoothing_sigma));

    std::vector<Vec2> states(static_cast<size_t>(T));
    std::vector<bool> defined(static_cast<size_t>(T), false);
    int n_defined = 0;

    for (int t = 0; t < T; ++t) {
        double mass = 0.0;
        Vec2 acc{0.0, 0.0};
        const int s_lo = std::max(0, t - radius);
        const int s_hi = std::min(T - 1, t + radius);
        for (int k = 0; k < K; ++k) {
            double v = 0.0;
            for (int s = s_lo; s <= s_hi; ++s)
                if (train.spiked(s, k)) v += window[std::abs(s - t)];
            if (v > 0.0) {
                mass += v;
                acc += v * grid.preferred[k];
            }
        }
        if (mass > 0.0) {
            states[t] = acc * (1.0 / mass);
            defined[t] = true;
            ++n_defined;
        }
    }

    if (n_defined == 0) throw std::runtime_error("decode: silent spiketrain");

    // Fill undefined timesteps from decoded neighbors.
    if (n_defined < T) {
        int prev = -1;
        for (int t = 0; t < T; ++t) {
            if (defined[t]) {
                prev = t;
                continue;
            }
            int next = t + 1;
            while (next < T && !defined[next]) ++next;
            if (prev < 0) {
                states[t] = states[next];
            } else if (next >= T) {
                states[t] = states[prev];
            } else {
                const double f = static_cast<double>(t - prev) / (next - prev);
                states[t] = states[prev] + f * (states[next] - states[prev]);
            }
        }
    }

    return Trajectory(std::move(states), dt, grid.lo, grid.hi);
}

}  // namespace spikeplan
