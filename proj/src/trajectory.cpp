#include "spikeplan/trajectory.hpp"

#include <utility>

namespace spikeplan {

Trajectory::Trajectory(std::vector<Vec2> pts, double dt_, const Vec2& lo, const Vec2& hi)
    : states(std::move(pts)), dt(dt_) {
    for (auto& p : states) {
        p.x = clamp(p.x, lo.x, hi.x);
        p.y = clamp(p.y, lo.y, hi.y);
    }
}

double Trajectory::path_length() const {
    double len = 0.0;
    for (size_t i = 1; i < states.size(); ++i) len += (states[i] - states[i - 1]).norm();
    return len;
}

}  // namespace spikeplan
