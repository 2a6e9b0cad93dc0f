// SPDX-License-Identifier: Apache-2.0
// Value-respecting rendering of scalar grids through colour maps (linear,
// diverging about a reference value, cyclic modulo a period) and modulation
// of rendered colours by auxiliary data.
#pragma once

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "colormap.hpp"
#include "grid.hpp"

namespace cmapforge {

struct RenderPolicy {
    enum class Mode { Linear, Diverging, Cyclic } mode{Mode::Linear};
    bool auto_range{true};      // Linear: derive lo/hi from unmasked data
    double lo{0.0}, hi{1.0};    // Linear explicit range
    double reference{0.0};      // Diverging: data value tied to the central entry
    double period{1.0};         // Cyclic
    double origin{0.0};         // Cyclic
    RgbColor background{0.5, 0.5, 0.5};  // no-data cells

    static RenderPolicy linear_auto() { return {}; }
    static RenderPolicy linear_range(double lo, double hi) {
        RenderPolicy p;
        p.auto_range = false;
        p.lo = lo;
        p.hi = hi;
        return p;
    }
    static RenderPolicy diverging(double reference) {
        RenderPolicy p;
        p.mode = Mode::Diverging;
        p.reference = reference;
        return p;
    }
    static RenderPolicy cyclic(double period, double origin = 0.0) {
        RenderPolicy p;
        p.mode = Mode::Cyclic;
        p.period = period;
        p.origin = origin;
        return p;
    }
};

namespace detail {

// round-half-away-from-zero on the affine index
inline int nearest_index(double x) { return static_cast<int>(std::round(x)); }

inline RgbImage map_values(const ScalarGrid& grid, const ColorMap& map,
                           const RenderPolicy& policy) {
    if (grid.values.empty()) throw std::invalid_argument("render: empty grid");
    const int n = map.size();
    if (n < 1) throw std::invalid_argument("render: empty colour map");

    double lo = policy.lo, hi = policy.hi;
    if (policy.mode == RenderPolicy::Mode::Linear && policy.auto_range) {
        bool any = false;
        lo = 0.0;
        hi = 0.0;
        for (int y = 0; y < grid.height; ++y)
            for (int x = 0; x < grid.width; ++x) {
                if (grid.masked(x, y)) continue;
                double v = grid.at(x, y);
                if (!any) {
                    lo = hi = v;
                    any = true;
                } else {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
        if (!any) throw std::domain_error("render: grid is fully masked, no auto range");
        if (!(lo < hi)) throw std::domain_error("render: degenerate data range");
    } else if (policy.mode == RenderPolicy::Mode::Linear) {
        if (!(lo < hi)) throw std::invalid_argument("render: explicit range needs lo < hi");
    } else if (policy.mode == RenderPolicy::Mode::Diverging) {
        bool any = false;
        double vmin = 0.0, vmax = 0.0;
        for (int y = 0; y < grid.height; ++y)
            for (int x = 0; x < grid.width; ++x) {
                if (grid.masked(x, y)) continue;
                double v = grid.at(x, y);
                if (!any) {
                    vmin = vmax = v;
                    any = true;
                } else {
                    vmin = std::min(vmin, v);
                    vmax = std::max(vmax, v);
                }
            }
        if (!any) throw std::domain_error("render: grid is fully masked, no auto range");
        if (policy.reference < vmin || policy.reference > vmax)
            std::cerr << "render: warning: diverging reference " << policy.reference
                      << " lies outside the data range [" << vmin << ", " << vmax
                      << "]; one half of the map is unused\n";
        double h = std::max(vmax - policy.reference, policy.reference - vmin);
        if (!(h > 0.0)) throw std::domain_error("render: degenerate data range");
        lo = policy.reference - h;
        hi = policy.reference + h;
    } else {
        if (!(policy.period > 0.0))
            throw std::invalid_argument("render: cyclic period must be positive");
    }

    RgbImage img(grid.width, grid.height);
    for (int y = 0; y < grid.height; ++y) {
        for (int x = 0; x < grid.width; ++x) {
            if (grid.masked(x, y)) {
                img.at(x, y) = policy.background;
                continue;
            }
            double v = grid.at(x, y);
            int idx;
            if (policy.mode == RenderPolicy::Mode::Cyclic) {
                double frac = std::fmod(v - policy.origin, policy.period);
                if (frac < 0.0) frac += policy.period;
                frac /= policy.period;  // [0, 1)
                idx = nearest_index(frac * n) % n;
            } else {
                double t = (v - lo) / (hi - lo) * (n - 1);
                idx = std::clamp(nearest_index(t), 0, n - 1);
            }
            img.at(x, y) = map.entries[static_cast<std::size_t>(idx)];
        }
    }
    return img;
}

}  // namespace detail

// Policy-checked rendering: cyclic mode demands a cyclic map; diverging mode
// warns when the map lacks the diverging attribute.
inline RgbImage render(const ScalarGrid& grid, const ColorMap& map,
                       const RenderPolicy& policy) {
    if (policy.mode == RenderPolicy::Mode::Cyclic && !map.has_attribute("cyclic"))
        throw std::invalid_argument("render: cyclic mode requires a cyclic colour map");
    if (policy.mode == RenderPolicy::Mode::Diverging && !map.has_attribute("diverging"))
        std::cerr << "render: warning: map '" << map.name
                  << "' lacks the diverging attribute\n";
    return detail::map_values(grid, map, policy);
}

// Scale colours toward black (c*w) or toward white (w*c + (1-w)) by a weight
// field in [0,1]; w = 1 is the identity. Masked weight cells leave the pixel
// unchanged.
enum class ModulateDirection { TowardBlack, TowardWhite };

inline RgbImage modulate(const RgbImage& img, const ScalarGrid& weights,
                         ModulateDirection dir) {
    if (img.width != weights.width || img.height != weights.height)
        throw std::invalid_argument("modulate: image and weight dimensions differ");
    RgbImage out = img;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            if (weights.masked(x, y)) continue;
            double w = weights.at(x, y);
            if (!(w >= 0.0 && w <= 1.0))
                throw std::invalid_argument("modulate: weights must lie in [0,1]");
            const RgbColor& c = img.at(x, y);
            if (dir == ModulateDirection::TowardBlack)
                out.at(x, y) = {w * c.r, w * c.g, w * c.b};
            else
                out.at(x, y) = {w * c.r + (1.0 - w), w * c.g + (1.0 - w),
                                w * c.b + (1.0 - w)};
        }
    }
    return out;
}

}  // namespace cmapforge
