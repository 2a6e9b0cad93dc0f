// SPDX-License-Identifier: Apache-2.0
// Colour-map paths as 1st/2nd-order B-splines through CIELAB control points,
// open (clamped uniform knots) or periodic, with uniform-parameter sampling
// and per-step contrast sequences.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "colorspace.hpp"

namespace cmapforge {

enum class ContrastMetric { LightnessOnly, Cie76 };

inline const char* to_string(ContrastMetric m) {
    return m == ContrastMetric::Cie76 ? "cie76" : "lightness-only";
}

struct MapPath {
    std::vector<LabColor> control_points;
    int order{1};  // 1 = piecewise linear, 2 = quadratic B-spline
    bool cyclic{false};
};

struct SampledPath {
    std::vector<LabColor> samples;
    std::vector<double> params;  // matching spline parameters, strictly increasing
    bool cyclic{false};
};

// Rejects malformed paths: wrong order, too few control points, or control
// points outside the display gamut (designer error, not clamped silently).
inline void validate_path(const MapPath& p, double gamut_tol = 0.01) {
    if (p.order != 1 && p.order != 2)
        throw std::invalid_argument("path order must be 1 or 2");
    std::size_t min_pts = p.order == 2 ? 3 : 2;
    if (p.control_points.size() < min_pts)
        throw std::invalid_argument("path needs at least " + std::to_string(min_pts) +
                                    " control points for order " + std::to_string(p.order));
    for (std::size_t i = 0; i < p.control_points.size(); ++i) {
        double resid = gamut_residual(p.control_points[i]);
        if (resid > gamut_tol)
            throw std::domain_error("control point " + std::to_string(i) +
                                    " is out of gamut by " + std::to_string(resid));
    }
}

namespace detail {

// Evaluation core; callers guarantee the path was validated and t is in [0,1].
inline LabColor eval_raw(const MapPath& p, double t) {
    const auto& cp = p.control_points;
    const int c = static_cast<int>(cp.size());
    auto lerp = [](const LabColor& x, const LabColor& y, double u) {
        return LabColor{(1 - u) * x.L + u * y.L, (1 - u) * x.a + u * y.a,
                        (1 - u) * x.b + u * y.b};
    };
    if (p.cyclic) {
        double s = t * c;
        int i = static_cast<int>(std::floor(s)) % c;
        double u = s - std::floor(s);
        if (p.order == 1) return lerp(cp[i], cp[(i + 1) % c], u);
        // periodic quadratic B-spline over P_{i-1}, P_i, P_{i+1}
        double w0 = (1 - u) * (1 - u) / 2.0;
        double w1 = (1 + 2 * u - 2 * u * u) / 2.0;
        double w2 = u * u / 2.0;
        const LabColor& p0 = cp[(i - 1 + c) % c];
        const LabColor& p1 = cp[i];
        const LabColor& p2 = cp[(i + 1) % c];
        return {w0 * p0.L + w1 * p1.L + w2 * p2.L, w0 * p0.a + w1 * p1.a + w2 * p2.a,
                w0 * p0.b + w1 * p1.b + w2 * p2.b};
    }
    if (p.order == 1) {
        double s = t * (c - 1);
        int i = std::min(static_cast<int>(std::floor(s)), c - 2);
        return lerp(cp[i], cp[i + 1], s - i);
    }
    // clamped uniform quadratic: knots 0,0,0,1/(c-2),...,1,1,1; evaluated in
    // the local Bezier form of segment i
    int nseg = c - 2;
    double s = t * nseg;
    int i = std::min(static_cast<int>(std::floor(s)), nseg - 1);
    double u = s - i;
    auto mid = [](const LabColor& x, const LabColor& y) {
        return LabColor{0.5 * (x.L + y.L), 0.5 * (x.a + y.a), 0.5 * (x.b + y.b)};
    };
    LabColor q0 = i == 0 ? cp[0] : mid(cp[i], cp[i + 1]);
    LabColor q2 = i == nseg - 1 ? cp[c - 1] : mid(cp[i + 1], cp[i + 2]);
    const LabColor& q1 = cp[i + 1];
    double b0 = (1 - u) * (1 - u), b1 = 2 * u * (1 - u), b2 = u * u;
    return {b0 * q0.L + b1 * q1.L + b2 * q2.L, b0 * q0.a + b1 * q1.a + b2 * q2.a,
            b0 * q0.b + b1 * q1.b + b2 * q2.b};
}

}  // namespace detail

inline LabColor evaluate(const MapPath& p, double t) {
    validate_path(p);
    if (!(t >= 0.0 && t <= 1.0))
        throw std::out_of_range("spline parameter outside [0,1]");
    return detail::eval_raw(p, t);
}

// n samples at t = i/(n-1) for open paths, t = i/n for cyclic paths
// (the closing point is not duplicated).
inline SampledPath sample_uniform(const MapPath& p, int n) {
    validate_path(p);
    if (n < 2) throw std::invalid_argument("sample count must be >= 2");
    SampledPath out;
    out.cyclic = p.cyclic;
    out.params.reserve(n);
    out.samples.reserve(n);
    double denom = p.cyclic ? n : n - 1;
    for (int i = 0; i < n; ++i) {
        double t = i / denom;
        out.params.push_back(t);
        out.samples.push_back(detail::eval_raw(p, t));
    }
    return out;
}

// Per-step contrasts between successive samples; cyclic sampled paths get a
// final wrap-around element.
inline std::vector<double> path_arc_lengths(const SampledPath& s, ContrastMetric metric) {
    if (s.samples.size() < 2) throw std::invalid_argument("need at least 2 samples");
    std::size_t n = s.samples.size();
    std::size_t steps = s.cyclic ? n : n - 1;
    std::vector<double> out(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const LabColor& a = s.samples[i];
        const LabColor& b = s.samples[(i + 1) % n];
        out[i] = metric == ContrastMetric::LightnessOnly ? std::fabs(b.L - a.L)
                                                         : delta_e76(a, b);
    }
    return out;
}

}  // namespace cmapforge
