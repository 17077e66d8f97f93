#include "spikeplan/network.hpp"

#include <cmath>
#include <stdexcept>

namespace spikeplan {

Matrix init_transition_weights(const GridSpec& grid, double sigma_init, double offset) {
    if (sigma_init <= 0.0) throw std::invalid_argument("init_transition_weights: sigma_init must be positive");
    if (offset >= 0.0) throw std::invalid_argument("init_transition_weights: offset must be negative");

    const int K = grid.K();
    Matrix w(K, K);
    const double inv2s2 = 1.0 / (2.0 * sigma_init * sigma_init);
    for (int k = 0; k < K; ++k) {
        auto row = w.row(k);
        for (int i = 0; i < K; ++i) {
            const double d2 = (grid.preferred[k] - grid.preferred[i]).norm2();
            row[i] = clamp(std::exp(-d2 * inv2s2) + offset, -1.0, 1.0);
        }
    }
    return w;
}

void clamp_weights(Matrix& w) {
    for (double& v : w.data) v = clamp(v, -1.0, 1.0);
}

double max_abs_weight(const Matrix& w) {
    double m = 0.0;
    for (double v : w.data) m = std::max(m, std::fabs(v));
    return m;
}

StateNetwork make_network(const GridSpec& grid, int tau, LogisticActivation activation, double sigma_init,
                          double offset) {
    if (tau < 1) throw std::invalid_argument("make_network: tau must be >= 1");
    StateNetwork net;
    net.grid = grid;
    net.weights = init_transition_weights(grid, sigma_init, offset);
    net.tau = tau;
    net.activation = activation;
    return net;
}

}  // namespace spikeplan
