// SPDX-License-Identifier: Apache-2.0
// ScalarGrid (2-D real data with optional no-data mask) and RgbImage.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "colorspace.hpp"

namespace cmapforge {

struct ScalarGrid {
    int width{}, height{};
    std::vector<double> values;  // row-major
    std::vector<std::uint8_t> mask;  // empty = all valid; nonzero = no-data cell

    ScalarGrid() = default;
    ScalarGrid(int w, int h, double fill = 0.0)
        : width(w), height(h),
          values(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {
        if (w <= 0 || h <= 0) throw std::invalid_argument("grid dimensions must be positive");
    }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
               static_cast<std::size_t>(x);
    }
    double at(int x, int y) const { return values[index(x, y)]; }
    double& at(int x, int y) { return values[index(x, y)]; }
    bool masked(int x, int y) const { return !mask.empty() && mask[index(x, y)] != 0; }
    void set_masked(int x, int y) {
        if (mask.empty()) mask.assign(values.size(), 0);
        mask[index(x, y)] = 1;
    }
};

struct RgbImage {
    int width{}, height{};
    std::vector<RgbColor> pixels;  // row-major

    RgbImage() = default;
    RgbImage(int w, int h, RgbColor fill = {0, 0, 0})
        : width(w), height(h),
          pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {
        if (w <= 0 || h <= 0) throw std::invalid_argument("image dimensions must be positive");
    }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
               static_cast<std::size_t>(x);
    }
    const RgbColor& at(int x, int y) const { return pixels[index(x, y)]; }
    RgbColor& at(int x, int y) { return pixels[index(x, y)]; }
};

}  // namespace cmapforge
