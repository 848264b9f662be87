#pragma once

#include <cstddef>
#include <vector>

namespace marketnet {

// Dense row-major matrix of doubles.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const double& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    bool operator==(const Matrix&) const = default;
};

}  // namespace marketnet
