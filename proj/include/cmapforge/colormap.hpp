// SPDX-License-Identifier: Apache-2.0
// ColorMap: ordered RGB entries plus taxonomy attributes and the build
// parameters that produced them.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "colorspace.hpp"
#include "spline.hpp"

namespace cmapforge {

struct Provenance {
    MapPath path;  // control points the map was built from (empty for foreign maps)
    ContrastMetric metric{ContrastMetric::LightnessOnly};
    int iterations{15};
    double sigma{0.0};
    double clip_residual{0.0};  // largest out-of-gamut residual clamped on conversion
};

struct ColorMap {
    std::string name;
    std::vector<RgbColor> entries;
    std::vector<std::string> attributes;  // subset of known_attributes()
    Provenance provenance;

    int size() const { return static_cast<int>(entries.size()); }
    bool has_attribute(std::string_view a) const {
        return std::find(attributes.begin(), attributes.end(), a) != attributes.end();
    }
};

inline const std::vector<std::string>& known_attributes() {
    static const std::vector<std::string> k = {"linear",  "diverging",   "rainbow",
                                               "cyclic",  "isoluminant", "low-contrast"};
    return k;
}

inline void validate_attributes(const std::vector<std::string>& attrs) {
    const auto& known = known_attributes();
    for (const auto& a : attrs)
        if (std::find(known.begin(), known.end(), a) == known.end())
            throw std::invalid_argument("unknown colour-map attribute: " + a);
}

inline std::vector<LabColor> map_to_lab(const ColorMap& m) {
    std::vector<LabColor> out;
    out.reserve(m.entries.size());
    for (const auto& e : m.entries) out.push_back(srgb_to_lab(e));
    return out;
}

// Convert CIELAB samples to display RGB entries; residuals beyond `tol` are a
// construction error, smaller ones are clamped and reported via *residual.
inline std::vector<RgbColor> labs_to_entries(const std::vector<LabColor>& labs,
                                             double tol = 0.01, double* residual = nullptr) {
    std::vector<RgbColor> out;
    out.reserve(labs.size());
    double worst = 0.0;
    for (const auto& lab : labs) {
        RgbColor c = lab_to_srgb(lab);
        for (double v : {c.r, c.g, c.b}) {
            worst = std::max(worst, v - 1.0);
            worst = std::max(worst, -v);
        }
        out.push_back({std::clamp(c.r, 0.0, 1.0), std::clamp(c.g, 0.0, 1.0),
                       std::clamp(c.b, 0.0, 1.0)});
    }
    if (worst > tol)
        throw std::domain_error("map entries leave the display gamut by " +
                                std::to_string(worst) + " (tolerance " +
                                std::to_string(tol) + ")");
    if (residual) *residual = worst;
    return out;
}

}  // namespace cmapforge
