// SPDX-License-Identifier: Apache-2.0
// Perceptual-contrast equalization of spline paths (cumulative-contrast
// inversion, recursively refined on its own output) and Gaussian smoothing of
// lightness-gradient reversals.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "spline.hpp"

namespace cmapforge {

struct EqualizeSpec {
    int n{256};
    ContrastMetric metric{ContrastMetric::LightnessOnly};
    int iterations{15};
    bool cyclic{false};  // derived from the path when driven via equalize()
};

struct SmoothSpec {
    double sigma{0.0};  // Gaussian sigma in index units of a 256-entry map
    bool cyclic{false};
};

namespace detail {

inline constexpr int kDenseSamples = 2048;

// Invert the cumulative contrast accumulated over `grid` (strictly increasing
// parameters spanning [0,1], including the wrap end for cyclic paths) at n
// equispaced contrast levels.
inline std::vector<double> invert_contrast_grid(const MapPath& path,
                                                const std::vector<double>& grid, int n,
                                                ContrastMetric metric) {
    std::size_t g = grid.size();
    std::vector<LabColor> samples(g);
    for (std::size_t i = 0; i < g; ++i) {
        double t = grid[i];
        if (path.cyclic) t = t - std::floor(t);  // wrap the closing parameter
        samples[i] = eval_raw(path, t);
    }
    std::vector<double> K(g);
    K[0] = 0.0;
    for (std::size_t i = 1; i < g; ++i) {
        double d = metric == ContrastMetric::LightnessOnly
                       ? std::fabs(samples[i].L - samples[i - 1].L)
                       : delta_e76(samples[i], samples[i - 1]);
        K[i] = K[i - 1] + d;
    }
    double total = K.back();
    if (total <= 0.0) {
        if (metric == ContrastMetric::LightnessOnly)
            throw std::domain_error(
                "degenerate path: zero total contrast under the lightness-only metric; "
                "use the cie76 metric for isoluminant paths");
        throw std::domain_error(
            "degenerate path: zero total contrast (all control points coincide)");
    }
    // tiny strictly-increasing ramp so flat stretches stay invertible
    for (std::size_t i = 0; i < g; ++i)
        K[i] += total * 1e-12 * static_cast<double>(i) / static_cast<double>(g - 1);

    std::vector<double> params(n);
    double denom = path.cyclic ? n : n - 1;
    for (int j = 0; j < n; ++j) {
        double level = (j / denom) * K.back();
        auto it = std::lower_bound(K.begin(), K.end(), level);
        if (it == K.begin()) {
            params[j] = grid.front();
        } else if (it == K.end()) {
            params[j] = grid.back();
        } else {
            std::size_t hi = static_cast<std::size_t>(it - K.begin());
            double w = (level - K[hi - 1]) / (K[hi] - K[hi - 1]);
            params[j] = grid[hi - 1] + w * (grid[hi] - grid[hi - 1]);
        }
    }
    params[0] = 0.0;
    if (!path.cyclic) params[n - 1] = 1.0;
    return params;
}

}  // namespace detail

// Remap sample positions so successive colours have equal contrast under the
// chosen metric: dense uniform sampling, cumulative-contrast inversion, then
// the same inversion repeated on refined grids that subdivide the current
// output intervals (the equal-contrast configuration is a fixed point).
inline SampledPath equalize(const MapPath& path, EqualizeSpec spec) {
    validate_path(path);
    if (spec.n < 2) throw std::invalid_argument("equalize: n must be >= 2");
    if (spec.iterations < 1) throw std::invalid_argument("equalize: iterations must be >= 1");
    spec.cyclic = path.cyclic;

    std::vector<double> grid(detail::kDenseSamples + 1);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = static_cast<double>(i) / detail::kDenseSamples;
    std::vector<double> params = detail::invert_contrast_grid(path, grid, spec.n, spec.metric);

    int m = std::max(2, static_cast<int>(std::lround(
                            static_cast<double>(detail::kDenseSamples) / spec.n)));
    for (int pass = 1; pass < spec.iterations; ++pass) {
        std::vector<double> ext = params;
        if (path.cyclic) ext.push_back(1.0 + params[0]);
        grid.clear();
        grid.reserve((ext.size() - 1) * m + 1);
        for (std::size_t i = 0; i + 1 < ext.size(); ++i)
            for (int j = 0; j < m; ++j)
                grid.push_back(ext[i] + (ext[i + 1] - ext[i]) * j / m);
        grid.push_back(ext.back());
        params = detail::invert_contrast_grid(path, grid, spec.n, spec.metric);
    }

    SampledPath out;
    out.cyclic = path.cyclic;
    out.params = params;
    out.samples.reserve(params.size());
    for (double t : params) out.samples.push_back(detail::eval_raw(path, t));
    return out;
}

namespace detail {

// Antisymmetric reflection about the endpoint values: the extension is affine
// through each endpoint, so smoothing preserves affine profiles and endpoint
// samples exactly.
inline double fetch_reflected(const std::vector<double>& x, long i) {
    long n = static_cast<long>(x.size());
    if (i < 0) return 2.0 * x[0] - fetch_reflected(x, -i);
    if (i > n - 1) return 2.0 * x[n - 1] - fetch_reflected(x, 2 * (n - 1) - i);
    return x[static_cast<std::size_t>(i)];
}

inline std::vector<double> gauss_smooth(const std::vector<double>& x, double sigma_eff,
                                        bool cyclic) {
    long n = static_cast<long>(x.size());
    int K = static_cast<int>(std::ceil(4.0 * sigma_eff));
    std::vector<double> kern(2 * K + 1);
    double sum = 0.0;
    for (int j = -K; j <= K; ++j) {
        double w = std::exp(-0.5 * (j / sigma_eff) * (j / sigma_eff));
        kern[j + K] = w;
        sum += w;
    }
    for (double& w : kern) w /= sum;
    std::vector<double> out(x.size(), 0.0);
    for (long i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = -K; j <= K; ++j) {
            double v = cyclic ? x[static_cast<std::size_t>(((i + j) % n + n) % n)]
                              : fetch_reflected(x, i + j);
            acc += kern[j + K] * v;
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

}  // namespace detail

// Gaussian-smooth all three CIELAB channels along the map index. Sigma is
// stated for a 256-entry map and rescaled by n/256; boundaries reflect for
// open maps and wrap for cyclic maps.
inline SampledPath smooth_reversals(const SampledPath& s, const SmoothSpec& spec) {
    if (spec.sigma < 0.0) throw std::invalid_argument("smooth: sigma must be >= 0");
    if (s.samples.size() < 3) throw std::invalid_argument("smooth: need >= 3 samples");
    if (spec.sigma == 0.0) return s;
    std::size_t n = s.samples.size();
    double sigma_eff = spec.sigma * static_cast<double>(n) / 256.0;

    SampledPath out = s;
    std::vector<double> chan(n);
    auto smooth_channel = [&](auto get, auto set) {
        for (std::size_t i = 0; i < n; ++i) chan[i] = get(s.samples[i]);
        std::vector<double> sm = detail::gauss_smooth(chan, sigma_eff, spec.cyclic);
        for (std::size_t i = 0; i < n; ++i) set(out.samples[i], sm[i]);
    };
    smooth_channel([](const LabColor& c) { return c.L; },
                   [](LabColor& c, double v) { c.L = v; });
    smooth_channel([](const LabColor& c) { return c.a; },
                   [](LabColor& c, double v) { c.a = v; });
    smooth_channel([](const LabColor& c) { return c.b; },
                   [](LabColor& c, double v) { c.b = v; });
    return out;
}

}  // namespace cmapforge
