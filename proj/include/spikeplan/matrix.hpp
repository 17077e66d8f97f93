#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spikeplan {

/// Dense row-major matrix of doubles. Small enough here (K = 225) that a
/// plain vector beats pulling in a linear-algebra dependency.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c, double fill = 0.0)
        : rows(r), cols(c), data(static_cast<size_t>(r) * static_cast<size_t>(c), fill) {}

    double& operator()(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }

    std::span<double> row(int r) { return {data.data() + static_cast<size_t>(r) * cols, static_cast<size_t>(cols)}; }
    std::span<const double> row(int r) const {
        return {data.data() + static_cast<size_t>(r) * cols, static_cast<size_t>(cols)};
    }

    bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }
    bool operator==(const Matrix& o) const = default;
};

}  // namespace spikeplan
