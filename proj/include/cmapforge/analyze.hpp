// SPDX-License-Identifier: Apache-2.0
// Uniformity analysis of colour maps: per-step contrast statistics, flat-spot
// and discontinuity detection, and an attribute-aware lint verdict.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "colormap.hpp"

namespace cmapforge {

struct FlatRun {
    int first{}, last{};  // inclusive step indices
    int length{};
    double fraction{};  // extent as a fraction of the map
    bool forgiven{};    // expected smoothing artefact or low-contrast design
};

struct Discontinuity {
    enum class Kind { DeltaEStep, GradientJump };
    int index{};
    Kind kind{};
    double value{};
};

inline const char* to_string(Discontinuity::Kind k) {
    return k == Discontinuity::Kind::DeltaEStep ? "delta-e" : "gradient-jump";
}

struct UniformityReport {
    int n{};
    bool cyclic{};
    std::vector<double> delta_L;   // signed per-step lightness difference
    std::vector<double> delta_e;   // per-step CIE76 difference
    double mean_abs_dL{}, min_dL{}, max_dL{}, cov_abs_dL{};
    double mean_dE{}, min_dE{}, max_dE{}, cov_dE{};
    std::vector<FlatRun> flat_spots;
    std::vector<Discontinuity> discontinuities;
    std::vector<int> reversals;  // step indices where the lightness gradient flips
    bool low_contrast{};         // judged on delta-E uniformity, dL flats expected
    bool clean{};                // no unforgiven flat spots and no discontinuities
};

// Sign changes of the per-step lightness difference; exact-zero steps carry
// the last nonzero sign forward so a reversal straddling a zero step is still
// a single reversal. Cyclic sequences seed from the last nonzero sign so a
// flip across the wrap is caught exactly once.
inline std::vector<int> lightness_reversals(const std::vector<LabColor>& lab, bool cyclic) {
    std::size_t n = lab.size();
    std::size_t m = cyclic ? n : n - 1;
    std::vector<int> sign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        double d = lab[(i + 1) % n].L - lab[i].L;
        if (std::fabs(d) >= 1e-12) sign[i] = d > 0 ? 1 : -1;
    }
    std::vector<int> revs;
    int last = 0;
    bool lastset = false;
    if (cyclic) {
        for (std::size_t i = m; i-- > 0;) {
            if (sign[i] != 0) {
                last = sign[i];
                lastset = true;
                break;
            }
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (sign[i] == 0) continue;
        if (lastset && sign[i] != last) revs.push_back(static_cast<int>(i));
        last = sign[i];
        lastset = true;
    }
    return revs;
}

namespace detail {

inline bool near_flat_run(int r, int a, int b) {
    if (a <= b) return a - 2 <= r && r <= b + 2;
    return r >= a - 2 || r <= b + 2;  // run spans the wrap point
}

}  // namespace detail

// Low-level analyzer; sigma_hint is the smoothing sigma used when deciding
// whether a flat run is the expected smoothing artefact around a reversal.
inline UniformityReport analyze_uniformity(const std::vector<RgbColor>& entries,
                                           const std::vector<std::string>& attributes,
                                           double sigma_hint = 7.0) {
    if (entries.size() < 2) throw std::invalid_argument("analyze: need >= 2 entries");
    std::size_t n = entries.size();
    std::vector<LabColor> lab;
    lab.reserve(n);
    for (const auto& e : entries) lab.push_back(srgb_to_lab(e));

    UniformityReport rep;
    rep.n = static_cast<int>(n);
    rep.cyclic = std::find(attributes.begin(), attributes.end(), "cyclic") != attributes.end();
    std::size_t m = rep.cyclic ? n : n - 1;
    rep.delta_L.resize(m);
    rep.delta_e.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        rep.delta_L[i] = lab[(i + 1) % n].L - lab[i].L;
        rep.delta_e[i] = delta_e76(lab[(i + 1) % n], lab[i]);
    }

    auto stats = [](const std::vector<double>& v, bool absolute, double& mean, double& mn,
                    double& mx, double& cov) {
        double s = 0.0;
        mn = v[0];
        mx = v[0];
        for (double x : v) {
            s += absolute ? std::fabs(x) : x;
            mn = std::min(mn, x);
            mx = std::max(mx, x);
        }
        mean = s / static_cast<double>(v.size());
        double var = 0.0;
        for (double x : v) {
            double d = (absolute ? std::fabs(x) : x) - mean;
            var += d * d;
        }
        cov = mean > 0.0 ? std::sqrt(var / static_cast<double>(v.size())) / mean : 0.0;
    };
    stats(rep.delta_L, true, rep.mean_abs_dL, rep.min_dL, rep.max_dL, rep.cov_abs_dL);
    stats(rep.delta_e, false, rep.mean_dE, rep.min_dE, rep.max_dE, rep.cov_dE);

    // flat spots: maximal runs of |dL| below 0.25 x mean |dL|, floored so an
    // exactly-constant-lightness map still reads as one whole-map flat spot
    double flat_th = 0.25 * std::max(rep.mean_abs_dL, 12.8 / static_cast<double>(n - 1));
    for (std::size_t i = 0; i < m;) {
        if (std::fabs(rep.delta_L[i]) < flat_th) {
            std::size_t j = i;
            while (j < m && std::fabs(rep.delta_L[j]) < flat_th) ++j;
            FlatRun run;
            run.first = static_cast<int>(i);
            run.last = static_cast<int>(j - 1);
            run.length = static_cast<int>(j - i);
            rep.flat_spots.push_back(run);
            i = j;
        } else {
            ++i;
        }
    }
    if (rep.cyclic && rep.flat_spots.size() >= 2 && rep.flat_spots.front().first == 0 &&
        rep.flat_spots.back().last == static_cast<int>(m - 1)) {
        FlatRun tail = rep.flat_spots.back();
        FlatRun head = rep.flat_spots.front();
        rep.flat_spots.pop_back();
        rep.flat_spots.erase(rep.flat_spots.begin());
        FlatRun merged;
        merged.first = tail.first;
        merged.last = head.last;
        merged.length = tail.length + head.length;
        rep.flat_spots.push_back(merged);
    }
    for (auto& run : rep.flat_spots)
        run.fraction = static_cast<double>(run.length) / static_cast<double>(m);

    // discontinuities: oversized delta-E steps, plus lightness-gradient jumps
    // (a derivative kink induces apparent structure without any single large step)
    for (std::size_t i = 0; i < m; ++i)
        if (rep.delta_e[i] > 3.0 * rep.mean_dE)
            rep.discontinuities.push_back({static_cast<int>(i),
                                           Discontinuity::Kind::DeltaEStep, rep.delta_e[i]});
    double grad_th = std::max(rep.mean_abs_dL, 0.25 * 255.0 / static_cast<double>(n - 1));
    for (std::size_t i = 1; i < m; ++i) {
        double jump = std::fabs(rep.delta_L[i] - rep.delta_L[i - 1]);
        if (jump > grad_th)
            rep.discontinuities.push_back({static_cast<int>(i),
                                           Discontinuity::Kind::GradientJump, jump});
    }
    if (rep.cyclic) {
        double jump = std::fabs(rep.delta_L[0] - rep.delta_L[m - 1]);
        if (jump > grad_th)
            rep.discontinuities.push_back({0, Discontinuity::Kind::GradientJump, jump});
    }

    rep.reversals = lightness_reversals(lab, rep.cyclic);

    // verdict: low-contrast designs are judged on delta-E uniformity (dL flats
    // are the design); short flat runs hugging a reversal are the deliberate
    // smoothing flat spot; discontinuities are never forgiven
    double l_min = lab[0].L, l_max = lab[0].L;
    for (const auto& c : lab) {
        l_min = std::min(l_min, c.L);
        l_max = std::max(l_max, c.L);
    }
    auto has = [&](const char* a) {
        return std::find(attributes.begin(), attributes.end(), a) != attributes.end();
    };
    rep.low_contrast = has("isoluminant") || has("low-contrast") || (l_max - l_min < 10.0);
    double sigma_eff = sigma_hint * static_cast<double>(n) / 256.0;
    int forgivable_len = static_cast<int>(std::ceil(3.0 * sigma_eff)) + 2;
    bool any_unforgiven = false;
    for (auto& run : rep.flat_spots) {
        bool near_rev = false;
        for (int r : rep.reversals)
            if (detail::near_flat_run(r, run.first, run.last)) {
                near_rev = true;
                break;
            }
        run.forgiven = rep.low_contrast || (near_rev && run.length <= forgivable_len);
        if (!run.forgiven) any_unforgiven = true;
    }
    rep.clean = !any_unforgiven && rep.discontinuities.empty();
    return rep;
}

inline UniformityReport analyze_uniformity(const ColorMap& map) {
    double hint = map.provenance.sigma > 0.0 ? std::max(map.provenance.sigma, 5.0) : 7.0;
    return analyze_uniformity(map.entries, map.attributes, hint);
}

}  // namespace cmapforge
