#include "spikeplan/replay.hpp"

#include <stdexcept>

#include "spikeplan/rng.hpp"

namespace spikeplan {

ReplayBatch mental_replay(const Trajectory& mental, const Trajectory& executed, const GridSpec& grid,
                          const Mat2& Sigma, int tau, int R, uint64_t seed) {
    if (R < 1) throw std::invalid_argument("mental_replay: need at least one pair");

    const ResponsibilityField omega_e = responsibilities(executed, grid, Sigma, TrajectorySource::executed);
    const ResponsibilityField omega_m = responsibilities(mental, grid, Sigma, TrajectorySource::mental);

    ReplayBatch batch;
    batch.pairs.reserve(static_cast<size_t>(R));
    for (int r = 0; r < R; ++r) {
        batch.pairs.emplace_back(encode_poisson(omega_e, tau, derive_seed(seed, 2 * r)),
                                 encode_poisson(omega_m, tau, derive_seed(seed, 2 * r + 1)));
    }
    return batch;
}

}  // namespace spikeplan
