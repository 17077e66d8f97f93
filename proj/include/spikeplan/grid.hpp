#pragma once

#include <vector>

#include "spikeplan/geometry.hpp"

namespace spikeplan {

/// Uniform 2D lattice of state neurons over a rectangular workspace.
/// Neuron index = iy * neurons_per_dim + ix; preferred positions include the
/// workspace boundary on all sides.
struct GridSpec {
    int neurons_per_dim = 15;
    Vec2 lo{-1.0, -1.0};
    Vec2 hi{1.0, 1.0};
    std::vector<Vec2> preferred;

    int K() const { return static_cast<int>(preferred.size()); }

    Vec2 spacing() const {
        const double n = neurons_per_dim - 1;
        return {(hi.x - lo.x) / n, (hi.y - lo.y) / n};
    }

    /// Lattice spacing along x; the default workspace is square so this is
    /// the natural length unit of the grid.
    double lattice_spacing() const { return spacing().x; }

    bool inside(const Vec2& p) const { return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y; }

    Vec2 clamp_to_bounds(const Vec2& p) const { return {clamp(p.x, lo.x, hi.x), clamp(p.y, lo.y, hi.y)}; }

    /// Index of the neuron whose preferred position is closest to p.
    /// Ties resolve to the lower index.
    int nearest(const Vec2& p) const;
};

GridSpec make_grid(int neurons_per_dim = 15, Vec2 lo = {-1.0, -1.0}, Vec2 hi = {1.0, 1.0});

}  // namespace spikeplan
