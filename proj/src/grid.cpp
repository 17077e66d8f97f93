#include "spikeplan/grid.hpp"

#include <stdexcept>

namespace spikeplan {

int GridSpec::nearest(const Vec2& p) const {
    int best = 0;
    double best_d = (preferred[0] - p).norm2();
    for (int k = 1; k < K(); ++k) {
        const double d = (preferred[k] - p).norm2();
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

GridSpec make_grid(int neurons_per_dim, Vec2 lo, Vec2 hi) {
    if (neurons_per_dim < 2) throw std::invalid_argument("make_grid: need at least 2 neurons per dimension");
    if (hi.x <= lo.x || hi.y <= lo.y) throw std::invalid_argument("make_grid: empty bounds");

    GridSpec grid;
    grid.neurons_per_dim = neurons_per_dim;
    grid.lo = lo;
    grid.hi = hi;
    grid.preferred.reserve(static_cast<size_t>(neurons_per_dim) * neurons_per_dim);
    const Vec2 h = grid.spacing();
    for (int iy = 0; iy < neurons_per_dim; ++iy)
        for (int ix = 0; ix < neurons_per_dim; ++ix)
            grid.preferred.push_back({lo.x + ix * h.x, lo.y + iy * h.y});
    return grid;
}

}  // namespace spikeplan
