#include "spikeplan/encoder.hpp"

#include <limits>

#include "spikeplan/rng.hpp"

namespace spikeplan {

SpikeTrain encode_poisson(const ResponsibilityField& field, int tau, uint64_t seed) {
    const int T = field.T();
    const int K = field.K();
    SpikeTrain train(T, K, tau);

    Rng rng(seed);
    constexpr int kNever = std::numeric_limits<int>::min() / 2;
    std::vector<int> last_spike(static_cast<size_t>(K), kNever);

    for (int t = 0; t < T; ++t) {
        const auto row = field.omega.row(t);
        for (int k = 0; k < K; ++k) {
            const double mean = clamp(kEncodeRateScale * row[k], 0.0, kEncodeRateCap);
            const int draw = rng.poisson(mean);
            if (draw >= kEncodeSpikeThreshold && t - last_spike[k] >= tau) {
                train.set_spike(t, k);
                last_spike[k] = t;
            }
        }
    }
    return train;
}

}  // namespace spikeplan
