#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "spikeplan/encoder.hpp"
#include "spikeplan/grid.hpp"
#include "spikeplan/trajectory.hpp"

namespace spikeplan {

inline constexpr int kReplayCountDefault = 20;

/// R independent spike encodings of one experienced (executed, mental)
/// trajectory pair. The executed encoding plays the data role, the mental
/// encoding the model role.
struct ReplayBatch {
    std::vector<std::pair<SpikeTrain, SpikeTrain>> pairs;  // (data, model)

    int count() const { return static_cast<int>(pairs.size()); }
};

/// Exploits the stochastic Poisson encoding to intensify one observation
/// into R training pairs with derived seeds.
ReplayBatch mental_replay(const Trajectory& mental, const Trajectory& executed, const GridSpec& grid,
                          const Mat2& Sigma, int tau, int R, uint64_t seed);

}  // namespace spikeplan
