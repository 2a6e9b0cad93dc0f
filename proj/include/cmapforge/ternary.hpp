// SPDX-License-Identifier: Apache-2.0
// Ternary image composition: three data channels weight three basis colours
// that sum to white, either RGB primaries or a lightness-balanced basis.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "colorspace.hpp"
#include "grid.hpp"

namespace cmapforge {

struct TernaryBasis {
    RgbColor red_basis, green_basis, blue_basis;
};

// Lightness-balanced basis: primaries and pairwise secondaries agree in
// CIELAB lightness to within a few units, unlike the RGB primaries.
inline TernaryBasis balanced_basis() {
    return {{0.90, 0.17, 0.00}, {0.00, 0.50, 0.00}, {0.10, 0.33, 1.00}};
}

inline TernaryBasis rgb_primaries_basis() {
    return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
}

inline void validate_basis(const TernaryBasis& b) {
    double sums[3] = {b.red_basis.r + b.green_basis.r + b.blue_basis.r,
                      b.red_basis.g + b.green_basis.g + b.blue_basis.g,
                      b.red_basis.b + b.green_basis.b + b.blue_basis.b};
    for (double s : sums)
        if (std::fabs(s - 1.0) > 1e-9)
            throw std::invalid_argument("ternary basis colours must sum to white");
}

// Per pixel c = v1*B1 + v2*B2 + v3*B3; because the basis sums to white and
// channels lie in [0,1], every output channel stays in [0,1]. Masked cells
// contribute zero.
inline RgbImage compose(const ScalarGrid& ch1, const ScalarGrid& ch2,
                        const ScalarGrid& ch3, const TernaryBasis& basis) {
    validate_basis(basis);
    if (ch1.width != ch2.width || ch1.height != ch2.height || ch1.width != ch3.width ||
        ch1.height != ch3.height)
        throw std::invalid_argument("compose: channel dimensions differ");
    RgbImage img(ch1.width, ch1.height);
    const ScalarGrid* chans[3] = {&ch1, &ch2, &ch3};
    const RgbColor bases[3] = {basis.red_basis, basis.green_basis, basis.blue_basis};
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            RgbColor c{0, 0, 0};
            for (int k = 0; k < 3; ++k) {
                if (chans[k]->masked(x, y)) continue;
                double v = chans[k]->at(x, y);
                if (!(v >= 0.0 && v <= 1.0))
                    throw std::invalid_argument(
                        "compose: channel values must be normalized to [0,1]");
                c.r += v * bases[k].r;
                c.g += v * bases[k].g;
                c.b += v * bases[k].b;
            }
            img.at(x, y) = c;
        }
    }
    return img;
}

inline ScalarGrid lightness_image(const RgbImage& img) {
    ScalarGrid out(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            out.at(x, y) = srgb_to_lab(img.at(x, y)).L;
    return out;
}

// The 8 parallelepiped vertices of the representable colour volume:
// {0, B1, B2, B3, B1+B2, B1+B3, B2+B3, B1+B2+B3}.
inline std::vector<RgbColor> basis_gamut_vertices(const TernaryBasis& basis) {
    auto add = [](const RgbColor& a, const RgbColor& b) {
        return RgbColor{a.r + b.r, a.g + b.g, a.b + b.b};
    };
    const RgbColor& b1 = basis.red_basis;
    const RgbColor& b2 = basis.green_basis;
    const RgbColor& b3 = basis.blue_basis;
    return {{0, 0, 0}, b1, b2, b3, add(b1, b2), add(b1, b3), add(b2, b3),
            add(add(b1, b2), b3)};
}

}  // namespace cmapforge
