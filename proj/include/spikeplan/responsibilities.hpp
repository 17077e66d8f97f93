#pragma once

#include "spikeplan/grid.hpp"
#include "spikeplan/matrix.hpp"
#include "spikeplan/trajectory.hpp"

namespace spikeplan {

enum class TrajectorySource { mental, executed };

/// Normalized Gaussian responsibilities of the state neurons for a
/// trajectory: omega is T x K, rows nonnegative and summing to 1.
struct ResponsibilityField {
    Matrix omega;
    TrajectorySource source = TrajectorySource::mental;

    int T() const { return omega.rows; }
    int K() const { return omega.cols; }
};

/// b_i(x_t) = exp(-0.5 (x_t - p_i)^T Sigma^-1 (x_t - p_i)), normalized per
/// timestep. Sigma must be positive definite.
ResponsibilityField responsibilities(const Trajectory& traj, const GridSpec& grid, const Mat2& Sigma,
                                     TrajectorySource source = TrajectorySource::mental);

}  // namespace spikeplan
