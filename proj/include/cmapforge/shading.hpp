// SPDX-License-Identifier: Apache-2.0
// Lambertian relief shading (no shadows, no ambient term), multiplicative
// combination with colour images, 1/f^p noise synthesis, and amplitude
// spectrum slope estimation.
#pragma once

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "colormap.hpp"
#include "grid.hpp"
#include "render.hpp"

namespace cmapforge {

struct ShadingParams {
    double azimuth_deg{135.0};    // light direction, degrees clockwise from north
    double elevation_deg{45.0};   // degrees above the horizon
    double gradient_scale{1.0};   // multiplier applied to surface gradients
};

struct SpectrumFit {
    double slope{};       // fitted exponent of the amplitude power law
    double intercept{};
    double f_lo{}, f_hi{};  // fit band in cycles/pixel
    double residual{};    // RMS of log-amplitude about the fitted line
    int bins_used{};
};

// Surface intensity from central-difference gradients (one-sided at borders)
// and a light vector set by azimuth/elevation: I = clamp(n . l, 0, 1).
inline ScalarGrid shade(const ScalarGrid& grid, const ShadingParams& params) {
    if (grid.width < 2 || grid.height < 2)
        throw std::domain_error("shade: grid must be at least 2x2");
    if (!(params.elevation_deg > 0.0 && params.elevation_deg <= 90.0))
        throw std::invalid_argument("shade: elevation must lie in (0, 90]");
    if (!(params.gradient_scale > 0.0))
        throw std::invalid_argument("shade: gradient scale must be positive");
    double az = params.azimuth_deg * kPi / 180.0;
    double el = params.elevation_deg * kPi / 180.0;
    // y grows downward, so north is -y
    double lx = std::sin(az) * std::cos(el);
    double ly = -std::cos(az) * std::cos(el);
    double lz = std::sin(el);

    ScalarGrid out(grid.width, grid.height);
    out.mask = grid.mask;
    auto sample = [&](int x, int y, double centre) {
        if (grid.masked(x, y)) return centre;  // missing neighbours add no gradient
        return grid.at(x, y);
    };
    for (int y = 0; y < grid.height; ++y) {
        for (int x = 0; x < grid.width; ++x) {
            if (grid.masked(x, y)) {
                out.at(x, y) = 0.0;
                continue;
            }
            double c = grid.at(x, y);
            double xl = x > 0 ? sample(x - 1, y, c) : c;
            double xr = x < grid.width - 1 ? sample(x + 1, y, c) : c;
            double yl = y > 0 ? sample(x, y - 1, c) : c;
            double yr = y < grid.height - 1 ? sample(x, y + 1, c) : c;
            double dx = ((x > 0 ? 1 : 0) + (x < grid.width - 1 ? 1 : 0));
            double dy = ((y > 0 ? 1 : 0) + (y < grid.height - 1 ? 1 : 0));
            double zx = (xr - xl) / dx;
            double zy = (yr - yl) / dy;
            double nx = -params.gradient_scale * zx;
            double ny = -params.gradient_scale * zy;
            double norm = std::sqrt(nx * nx + ny * ny + 1.0);
            double intensity = (nx * lx + ny * ly + lz) / norm;
            out.at(x, y) = std::clamp(intensity, 0.0, 1.0);
        }
    }
    return out;
}

// Per-channel c' = c * I. Deliberately not a transparency blend: luminance is
// modulated, never mixed toward a backdrop. Masked shading cells leave the
// pixel untouched.
inline RgbImage combine_multiplicative(const RgbImage& color, const ScalarGrid& shading) {
    if (color.width != shading.width || color.height != shading.height)
        throw std::invalid_argument("combine: image and shading dimensions differ");
    RgbImage out = color;
    for (int y = 0; y < color.height; ++y) {
        for (int x = 0; x < color.width; ++x) {
            if (shading.masked(x, y)) continue;
            double i = std::clamp(shading.at(x, y), 0.0, 1.0);
            const RgbColor& c = color.at(x, y);
            out.at(x, y) = {c.r * i, c.g * i, c.b * i};
        }
    }
    return out;
}

namespace detail {

// numpy-style FFT sample frequencies (cycles/sample)
inline double fft_freq(int k, int n) {
    return (k < (n + 1) / 2 ? k : k - n) / static_cast<double>(n);
}

}  // namespace detail

// Spectral synthesis: random phases under a radial amplitude law f^-p (DC
// zero), Hermitian-symmetrized half spectrum, inverse real FFT, then affine
// normalization to [0,1]. Deterministic for a fixed seed.
inline ScalarGrid one_on_f_noise(int width, int height, double p, std::uint64_t seed) {
    if (width < 16 || height < 16)
        throw std::invalid_argument("noise: dimensions must be >= 16");
    if (!(p >= 0.0)) throw std::invalid_argument("noise: exponent must be >= 0");
    const int w = width, h = height, wh = w / 2 + 1;

    std::mt19937 rng(static_cast<std::uint32_t>(seed));
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * kPi);
    std::vector<std::complex<double>> spec(static_cast<std::size_t>(h) * wh);
    for (int ky = 0; ky < h; ++ky) {
        double fy = detail::fft_freq(ky, h);
        for (int kx = 0; kx < wh; ++kx) {
            double fx = kx / static_cast<double>(w);
            double f = std::hypot(fy, fx);
            double amp = f > 0.0 ? std::pow(f, -p) : 0.0;
            double phase = uniform(rng);
            spec[static_cast<std::size_t>(ky) * wh + kx] = std::polar(amp, phase);
        }
    }
    // real output needs Hermitian symmetry on the self-paired columns
    for (int kx : {0, (w % 2 == 0 ? w / 2 : -1)}) {
        if (kx < 0) continue;
        for (int ky = h / 2 + 1; ky < h; ++ky)
            spec[static_cast<std::size_t>(ky) * wh + kx] =
                std::conj(spec[static_cast<std::size_t>(h - ky) * wh + kx]);
        spec[kx] = {std::abs(spec[kx]), 0.0};
        if (h % 2 == 0)
            spec[static_cast<std::size_t>(h / 2) * wh + kx] = {
                std::abs(spec[static_cast<std::size_t>(h / 2) * wh + kx]), 0.0};
    }
    spec[0] = {0.0, 0.0};

    std::vector<double> out(static_cast<std::size_t>(h) * w);
    fftw_plan plan = fftw_plan_dft_c2r_2d(
        h, w, reinterpret_cast<fftw_complex*>(spec.data()), out.data(), FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    double lo = out[0], hi = out[0];
    for (double v : out) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    ScalarGrid grid(w, h);
    if (hi > lo)
        for (std::size_t i = 0; i < out.size(); ++i)
            grid.values[i] = (out[i] - lo) / (hi - lo);
    return grid;
}

// Radially averaged log-log amplitude spectrum fit: Hann window, real FFT,
// geometric binning over the band, least squares on (log f, log A).
inline SpectrumFit spectrum_slope(const ScalarGrid& grid,
                                  double f_lo = 0.0, double f_hi = 0.25) {
    const int w = grid.width, h = grid.height;
    if (w < 16 || h < 16) throw std::invalid_argument("spectrum: grid must be >= 16x16");
    if (std::max(w, h) > 2 * std::min(w, h))
        throw std::invalid_argument("spectrum: grid aspect must be within 2:1");
    if (f_lo <= 0.0) f_lo = 4.0 / std::min(w, h);
    if (!(f_lo < f_hi && f_hi <= 0.5))
        throw std::invalid_argument("spectrum: band must satisfy 0 < f_lo < f_hi <= 0.5");

    // fill no-data cells with the mean so they contribute no structure
    double mean = 0.0;
    std::size_t count = 0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (!grid.masked(x, y)) {
                mean += grid.at(x, y);
                ++count;
            }
    if (count == 0) throw std::domain_error("spectrum: grid is fully masked");
    mean /= static_cast<double>(count);

    std::vector<double> windowed(static_cast<std::size_t>(h) * w);
    auto hann = [](int i, int n) {
        return 0.5 - 0.5 * std::cos(2.0 * kPi * i / (n - 1));
    };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double v = grid.masked(x, y) ? mean : grid.at(x, y);
            windowed[static_cast<std::size_t>(y) * w + x] =
                (v - mean) * hann(y, h) * hann(x, w);
        }

    const int wh = w / 2 + 1;
    std::vector<std::complex<double>> spec(static_cast<std::size_t>(h) * wh);
    fftw_plan plan = fftw_plan_dft_r2c_2d(
        h, w, windowed.data(), reinterpret_cast<fftw_complex*>(spec.data()),
        FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    constexpr int kBins = 24;
    double sums[kBins] = {};
    long counts[kBins] = {};
    double log_ratio = std::log(f_hi / f_lo);
    for (int ky = 0; ky < h; ++ky) {
        double fy = detail::fft_freq(ky, h);
        for (int kx = 0; kx < wh; ++kx) {
            double f = std::hypot(fy, kx / static_cast<double>(w));
            if (f < f_lo || f >= f_hi) continue;
            int bin = static_cast<int>(std::log(f / f_lo) / log_ratio * kBins);
            bin = std::clamp(bin, 0, kBins - 1);
            sums[bin] += std::abs(spec[static_cast<std::size_t>(ky) * wh + kx]);
            counts[bin] += 1;
        }
    }
    std::vector<double> lf, la;
    for (int i = 0; i < kBins; ++i) {
        if (counts[i] == 0) continue;
        double e0 = f_lo * std::exp(log_ratio * i / kBins);
        double e1 = f_lo * std::exp(log_ratio * (i + 1) / kBins);
        lf.push_back(std::log10(std::sqrt(e0 * e1)));
        la.push_back(std::log10(sums[i] / static_cast<double>(counts[i])));
    }
    if (lf.size() < 2) throw std::domain_error("spectrum: band empty after discretization");

    double n = static_cast<double>(lf.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lf.size(); ++i) {
        sx += lf[i];
        sy += la[i];
        sxx += lf[i] * lf[i];
        sxy += lf[i] * la[i];
    }
    SpectrumFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.f_lo = f_lo;
    fit.f_hi = f_hi;
    fit.bins_used = static_cast<int>(lf.size());
    double rss = 0.0;
    for (std::size_t i = 0; i < lf.size(); ++i) {
        double r = la[i] - (fit.slope * lf[i] + fit.intercept);
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / n);
    return fit;
}

inline RgbImage shade_and_drape(const ScalarGrid& grid, const ColorMap& map,
                                const RenderPolicy& policy, const ShadingParams& params) {
    return combine_multiplicative(render(grid, map, policy), shade(grid, params));
}

}  // namespace cmapforge
