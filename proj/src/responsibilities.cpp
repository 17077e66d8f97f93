#include "spikeplan/responsibilities.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spikeplan {

ResponsibilityField responsibilities(const Trajectory& traj, const GridSpec& grid, const Mat2& Sigma,
                                     TrajectorySource source) {
    if (!Sigma.positive_definite()) throw std::invalid_argument("responsibilities: Sigma must be positive definite");
    const Mat2 inv = Sigma.inverse();
    const int T = traj.length();
    const int K = grid.K();

    ResponsibilityField field;
    field.source = source;
    field.omega = Matrix(T, K);
    std::vector<double> q(static_cast<size_t>(K));
    for (int t = 0; t < T; ++t) {
        double q_min = std::numeric_limits<double>::max();
        for (int k = 0; k < K; ++k) {
            q[k] = 0.5 * inv.quad(traj.states[t] - grid.preferred[k]);
            q_min = std::min(q_min, q[k]);
        }
        // shift by the max exponent before normalizing; the factor cancels
        auto row = field.omega.row(t);
        double sum = 0.0;
        for (int k = 0; k < K; ++k) {
            row[k] = std::exp(q_min - q[k]);
            sum += row[k];
        }
        for (int k = 0; k < K; ++k) row[k] /= sum;
    }
    return field;
}

}  // namespace spikeplan
