#pragma once

#include <vector>

#include "spikeplan/geometry.hpp"

namespace spikeplan {

/// Time-indexed sequence of continuous workspace states. States are clamped
/// into the given bounds at construction.
struct Trajectory {
    std::vector<Vec2> states;
    double dt = 0.02;

    Trajectory() = default;
    Trajectory(std::vector<Vec2> pts, double dt_, const Vec2& lo, const Vec2& hi);

    int length() const { return static_cast<int>(states.size()); }
    const Vec2& front() const { return states.front(); }
    const Vec2& back() const { return states.back(); }

    /// Sum of step distances.
    double path_length() const;
};

}  // namespace spikeplan
