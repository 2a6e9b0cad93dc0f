// SPDX-License-Identifier: Apache-2.0
// Colour-map family builders (linear, diverging, rainbow, cyclic,
// isoluminant), the shipped preset registry, and rotation/reversal utilities.
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "analyze.hpp"
#include "colormap.hpp"
#include "equalize.hpp"
#include "cmapforge/presets_data.hpp"

namespace cmapforge {

// Shared pipeline: validate, equalize, smooth, convert to display RGB.
inline ColorMap build_from_path(const std::string& name, const MapPath& path, int n,
                                ContrastMetric metric, double sigma,
                                std::vector<std::string> attributes, int iterations = 15) {
    validate_attributes(attributes);
    EqualizeSpec espec;
    espec.n = n;
    espec.metric = metric;
    espec.iterations = iterations;
    SampledPath sampled = equalize(path, espec);
    if (sigma > 0.0) sampled = smooth_reversals(sampled, {sigma, path.cyclic});
    ColorMap map;
    map.name = name;
    map.attributes = std::move(attributes);
    map.provenance.path = path;
    map.provenance.metric = metric;
    map.provenance.iterations = iterations;
    map.provenance.sigma = sigma;
    map.entries = labs_to_entries(sampled.samples, 0.01, &map.provenance.clip_residual);
    return map;
}

// lightness-only when the path spans >= 10 L units, cie76 otherwise
inline ContrastMetric auto_metric(const MapPath& path) {
    validate_path(path);
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i <= 256; ++i) {
        double L = detail::eval_raw(path, i / 256.0).L;
        lo = std::min(lo, L);
        hi = std::max(hi, L);
    }
    return hi - lo >= 10.0 ? ContrastMetric::LightnessOnly : ContrastMetric::Cie76;
}

inline ColorMap build_linear(const MapPath& path, int n,
                             std::pair<double, double> lightness_span) {
    auto [lo, hi] = lightness_span;
    if (!(lo < hi)) throw std::invalid_argument("lightness span must have lo < hi");
    validate_path(path);
    double prev = detail::eval_raw(path, 0.0).L;
    int dir = 0;
    for (int i = 1; i <= 1024; ++i) {
        double L = detail::eval_raw(path, i / 1024.0).L;
        int step = L > prev ? 1 : (L < prev ? -1 : 0);
        if (step != 0) {
            if (dir == 0) dir = step;
            else if (step != dir)
                throw std::domain_error("linear map requires monotone path lightness");
        }
        prev = L;
    }
    EqualizeSpec espec;
    espec.n = n;
    SampledPath sampled = equalize(path, espec);
    // affine L rescale onto the requested span, direction preserved
    double l_min = sampled.samples.front().L, l_max = l_min;
    for (const auto& s : sampled.samples) {
        l_min = std::min(l_min, s.L);
        l_max = std::max(l_max, s.L);
    }
    for (auto& s : sampled.samples)
        s.L = lo + (s.L - l_min) * (hi - lo) / (l_max - l_min);
    ColorMap map;
    map.name = "linear";
    map.attributes = {"linear"};
    map.provenance.path = path;
    map.entries = labs_to_entries(sampled.samples, 0.01, &map.provenance.clip_residual);
    return map;
}

struct DivergingSpec {
    LabColor end_low, end_high;
    LabColor centre;  // neutral: chroma <= 2
    enum class Style { Reversing, LinearDiverging } style{Style::Reversing};
};

inline ColorMap build_diverging(const DivergingSpec& spec, int n, double sigma) {
    if (spec.centre.chroma() > 2.0)
        throw std::domain_error("diverging centre must be neutral (chroma <= 2)");
    if (spec.style == DivergingSpec::Style::Reversing) {
        if (std::fabs(spec.end_low.chroma() - spec.end_high.chroma()) > 2.0 ||
            std::fabs(spec.end_low.L - spec.end_high.L) > 2.0)
            throw std::domain_error(
                "reversing diverging map needs endpoints matched in chroma and lightness");
    } else {
        bool rising = spec.end_low.L < spec.centre.L && spec.centre.L < spec.end_high.L;
        bool falling = spec.end_low.L > spec.centre.L && spec.centre.L > spec.end_high.L;
        if (!rising && !falling)
            throw std::domain_error(
                "linear-diverging map needs lightness monotone through the centre");
    }
    MapPath path{{spec.end_low, spec.centre, spec.end_high}, 1, false};
    ColorMap map = build_from_path("diverging", path, n, ContrastMetric::LightnessOnly,
                                   sigma, {"diverging"});
    LabColor centre_entry = srgb_to_lab(map.entries[static_cast<std::size_t>(n / 2)]);
    if (delta_e76(centre_entry, spec.centre) > 2.0)
        throw std::domain_error("diverging construction failed: central entry strayed " +
                                std::to_string(delta_e76(centre_entry, spec.centre)) +
                                " delta-E from the specified centre");
    return map;
}

enum class CyclicStyle { Zigzag, Diamond, DivergingCyclic, Grey };

namespace detail {

inline MapPath iso_circle_path(double lightness, double chroma, int segments) {
    MapPath path;
    path.order = 2;
    path.cyclic = true;
    path.control_points.reserve(segments);
    for (int k = 0; k < segments; ++k) {
        double h = 2.0 * kPi * k / segments;
        path.control_points.push_back(
            {lightness, chroma * std::cos(h), chroma * std::sin(h)});
    }
    return path;
}

struct PresetDef {
    std::string name;
    std::vector<std::string> attributes;
    ContrastMetric metric{ContrastMetric::LightnessOnly};
    double sigma{0.0};
    std::string style;
    std::optional<MapPath> path;
    double iso_lightness{0.0}, iso_chroma{0.0};
    int iso_segments{0};
};

inline const std::vector<PresetDef>& preset_definitions() {
    static const std::vector<PresetDef> defs = [] {
        nlohmann::json doc = nlohmann::json::parse(kPresetsJson);
        std::vector<PresetDef> out;
        for (const auto& p : doc.at("presets")) {
            PresetDef def;
            def.name = p.at("name").get<std::string>();
            def.attributes = p.at("attributes").get<std::vector<std::string>>();
            def.metric = p.at("metric").get<std::string>() == "cie76"
                             ? ContrastMetric::Cie76
                             : ContrastMetric::LightnessOnly;
            def.sigma = p.at("sigma").get<double>();
            if (p.contains("style")) def.style = p.at("style").get<std::string>();
            if (p.contains("path")) {
                MapPath path;
                path.order = p.at("path").at("order").get<int>();
                path.cyclic = p.at("path").at("cyclic").get<bool>();
                for (const auto& cp : p.at("path").at("control_points"))
                    path.control_points.push_back({cp.at(0).get<double>(),
                                                   cp.at(1).get<double>(),
                                                   cp.at(2).get<double>()});
                def.path = std::move(path);
            }
            if (p.contains("iso")) {
                def.iso_lightness = p.at("iso").at("lightness").get<double>();
                def.iso_chroma = p.at("iso").at("chroma").get<double>();
                def.iso_segments = p.at("iso").at("segments").get<int>();
            }
            out.push_back(std::move(def));
        }
        return out;
    }();
    return defs;
}

inline const PresetDef& preset_definition(const std::string& name) {
    for (const auto& d : preset_definitions())
        if (d.name == name) return d;
    throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace detail

inline std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& d : detail::preset_definitions()) out.push_back(d.name);
    return out;
}

inline ColorMap build_rainbow(int n, double sigma) {
    if (n < 8) throw std::invalid_argument("rainbow map needs n >= 8");
    const auto& def = detail::preset_definition("rainbow_bgyr");
    return build_from_path("rainbow_bgyr", *def.path, n, ContrastMetric::LightnessOnly,
                           sigma, {"rainbow"});
}

inline ColorMap build_cyclic(CyclicStyle style, int n, double sigma) {
    if (n < 8) throw std::invalid_argument("cyclic map needs n >= 8");
    const char* name = style == CyclicStyle::Zigzag            ? "cyclic_mrybm"
                       : style == CyclicStyle::Diamond         ? "cyclic_mygbm"
                       : style == CyclicStyle::DivergingCyclic ? "cyclic_wrwbw"
                                                               : "cyclic_grey";
    const auto& def = detail::preset_definition(name);
    return build_from_path(name, *def.path, n, ContrastMetric::LightnessOnly, sigma,
                           {"cyclic"});
}

// chroma 0 selects the largest circle that fits the gamut (minus a margin);
// an explicit chroma beyond the gamut bound is an error naming that bound.
inline ColorMap build_isoluminant(double lightness, int n, double chroma = 0.0,
                                  int segments = 36, double sigma = 0.0) {
    double feasible = 1e300;
    for (int h = 0; h < 360; ++h)
        feasible = std::min(feasible, max_feasible_chroma(lightness, h));
    if (chroma <= 0.0) {
        chroma = feasible - 0.5;
        if (chroma <= 0.0)
            throw std::domain_error("no isoluminant circle fits the gamut at L=" +
                                    std::to_string(lightness));
    } else if (chroma > feasible) {
        throw std::domain_error("isoluminant circle at L=" + std::to_string(lightness) +
                                " with chroma " + std::to_string(chroma) +
                                " leaves the gamut; maximum feasible chroma is " +
                                std::to_string(feasible));
    }
    MapPath path = detail::iso_circle_path(lightness, chroma, segments);
    return build_from_path("isoluminant", path, n, ContrastMetric::Cie76, sigma,
                           {"isoluminant"});
}

inline ColorMap build_preset(const std::string& name, int n = 256,
                             double sigma_override = -1.0) {
    const auto& def = detail::preset_definition(name);
    double sigma = sigma_override >= 0.0 ? sigma_override : def.sigma;
    ColorMap map;
    if (def.path) {
        map = build_from_path(def.name, *def.path, n, def.metric, sigma, def.attributes);
    } else {
        map = build_isoluminant(def.iso_lightness, n, def.iso_chroma, def.iso_segments,
                                sigma);
        map.name = def.name;
        map.attributes = def.attributes;
    }
    return map;
}

inline ColorMap cyclic_shift(const ColorMap& map, double fraction) {
    if (!map.has_attribute("cyclic"))
        throw std::invalid_argument("cyclic_shift requires a cyclic map");
    int n = map.size();
    long k = std::lround(fraction * n) % n;
    if (k < 0) k += n;
    ColorMap out = map;
    for (int i = 0; i < n; ++i)
        out.entries[static_cast<std::size_t>(i)] =
            map.entries[static_cast<std::size_t>((i + k) % n)];
    return out;
}

inline ColorMap reverse(const ColorMap& map) {
    ColorMap out = map;
    std::reverse(out.entries.begin(), out.entries.end());
    return out;
}

}  // namespace cmapforge
