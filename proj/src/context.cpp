#include "spikeplan/context.hpp"

#include <cmath>
#include <stdexcept>

#include "spikeplan/rng.hpp"

namespace spikeplan {

ContextPopulation set_context_for_target(const GridSpec& grid, const Vec2& target, const ContextConfig& config,
                                         uint64_t seed) {
    if (!grid.inside(target)) throw std::invalid_argument("set_context_for_target: target out of bounds");
    if (config.count < 1) throw std::invalid_argument("set_context_for_target: need at least one neuron");
    if (config.reach <= 0.0 || config.shape <= 0.0)
        throw std::invalid_argument("set_context_for_target: bad profile parameters");

    Rng rng(seed);
    ContextPopulation pop;
    pop.target = target;
    pop.neurons.reserve(static_cast<size_t>(config.count));
    for (int j = 0; j < config.count; ++j) {
        Vec2 pos{rng.normal(target.x, config.spread), rng.normal(target.y, config.spread)};
        pop.neurons.push_back({grid.clamp_to_bounds(pos), config.spike_probability});
    }

    const int K = grid.K();
    pop.theta = Matrix(config.count, K);
    for (int j = 0; j < config.count; ++j) {
        auto row = pop.theta.row(j);
        for (int k = 0; k < K; ++k) {
            const double d = distance(grid.preferred[k], pop.neurons[j].position);
            row[k] = config.gain * std::exp(-std::pow(d / config.reach, config.shape));
        }
    }
    return pop;
}

ContextPopulation empty_context() {
    ContextPopulation pop;
    pop.theta = Matrix(0, 0);
    return pop;
}

}  // namespace spikeplan
