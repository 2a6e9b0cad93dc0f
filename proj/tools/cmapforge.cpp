// SPDX-License-Identifier: Apache-2.0
// cmapforge command-line tool: generate/equalize/analyze colour maps,
// build test images, render grids, relief-shade, and compose ternary images.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "cmapforge/analyze.hpp"
#include "cmapforge/catalog.hpp"
#include "cmapforge/colormap.hpp"
#include "cmapforge/colorspace.hpp"
#include "cmapforge/equalize.hpp"
#include "cmapforge/grid.hpp"
#include "cmapforge/io.hpp"
#include "cmapforge/render.hpp"
#include "cmapforge/shading.hpp"
#include "cmapforge/spline.hpp"
#include "cmapforge/ternary.hpp"
#include "cmapforge/test_images.hpp"

namespace {

using namespace cmapforge;

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

ContrastMetric parse_metric(const std::string& s, const MapPath& path) {
    if (s == "auto") return auto_metric(path);
    if (s == "lightness-only") return ContrastMetric::LightnessOnly;
    if (s == "cie76") return ContrastMetric::Cie76;
    throw std::invalid_argument("unknown metric '" + s +
                                "' (expected auto, lightness-only or cie76)");
}

void print_report(const ColorMap& map, const UniformityReport& rep) {
    std::string attrs;
    for (std::size_t i = 0; i < map.attributes.size(); ++i) {
        if (i) attrs += '|';
        attrs += map.attributes[i];
    }
    if (attrs.empty()) attrs = "(none)";
    std::cout << "map '" << map.name << "': n=" << rep.n << ", attributes=" << attrs
              << (rep.cyclic ? ", cyclic" : ", open") << "\n";
    std::cout << "  lightness step |dL|: mean " << fmt("%.4f", rep.mean_abs_dL)
              << ", range [" << fmt("%.4f", rep.min_dL) << ", " << fmt("%.4f", rep.max_dL)
              << "], CoV " << fmt("%.2f", 100.0 * rep.cov_abs_dL) << "%\n";
    std::cout << "  contrast step dE76:  mean " << fmt("%.4f", rep.mean_dE) << ", range ["
              << fmt("%.4f", rep.min_dE) << ", " << fmt("%.4f", rep.max_dE) << "], CoV "
              << fmt("%.2f", 100.0 * rep.cov_dE) << "%\n";
    if (rep.low_contrast)
        std::cout << "  low-contrast map: lightness flats not penalized\n";
    int active_flats = 0;
    for (const auto& f : rep.flat_spots)
        if (!f.forgiven) ++active_flats;
    std::cout << "  flat spots: " << active_flats;
    if (rep.flat_spots.size() > static_cast<std::size_t>(active_flats))
        std::cout << " (+" << (rep.flat_spots.size() - active_flats) << " forgiven)";
    std::cout << "\n";
    for (const auto& f : rep.flat_spots)
        std::cout << "    entries " << f.first << ".." << f.last << " (length " << f.length
                  << ", " << fmt("%.1f", 100.0 * f.fraction) << "% of map)"
                  << (f.forgiven ? " [forgiven]" : "") << "\n";
    std::cout << "  discontinuities: " << rep.discontinuities.size() << "\n";
    for (const auto& d : rep.discontinuities)
        std::cout << "    entry " << d.index << ": " << to_string(d.kind) << ", value "
                  << fmt("%.3f", d.value) << "\n";
    std::cout << "  lightness reversals: " << rep.reversals.size();
    if (!rep.reversals.empty()) {
        std::cout << " (at";
        for (int r : rep.reversals) std::cout << ' ' << r;
        std::cout << ')';
    }
    std::cout << "\n";
    std::cout << "verdict: " << (rep.clean ? "clean" : "issues found") << "\n";
}

void write_profile_csv(const std::string& path, const ColorMap& map,
                       const UniformityReport& rep) {
    auto f = detail::open_out(path);
    f << "index,L,dL,dE76\n";
    auto lab = map_to_lab(map);
    for (int i = 0; i < rep.n; ++i) {
        f << i << ',' << detail::fmt6(lab[static_cast<std::size_t>(i)].L) << ',';
        if (i < static_cast<int>(rep.delta_L.size()))
            f << detail::fmt6(rep.delta_L[static_cast<std::size_t>(i)]) << ','
              << detail::fmt6(rep.delta_e[static_cast<std::size_t>(i)]);
        else
            f << ',';
        f << '\n';
    }
}

double percentile(const std::vector<double>& sorted, double p) {
    double idx = (p / 100.0) * static_cast<double>(sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(std::floor(idx));
    std::size_t hi = static_cast<std::size_t>(std::ceil(idx));
    double frac = idx - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

// scale a data channel to [0,1], optionally clipping at percentiles first
ScalarGrid normalize_channel(const ScalarGrid& g, bool clip, double p_lo, double p_hi) {
    std::vector<double> vals;
    vals.reserve(g.values.size());
    for (std::size_t i = 0; i < g.values.size(); ++i)
        if (g.mask.empty() || !g.mask[i]) vals.push_back(g.values[i]);
    if (vals.empty()) throw std::invalid_argument("channel grid is fully masked");
    std::sort(vals.begin(), vals.end());
    double lo = vals.front(), hi = vals.back();
    if (clip) {
        lo = percentile(vals, p_lo);
        hi = percentile(vals, p_hi);
    }
    ScalarGrid out = g;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        if (!out.mask.empty() && out.mask[i]) continue;
        double v = hi > lo ? (out.values[i] - lo) / (hi - lo) : 0.0;
        out.values[i] = std::clamp(v, 0.0, 1.0);
    }
    return out;
}

RgbImage intensity_to_image(const ScalarGrid& intensity) {
    RgbImage img(intensity.width, intensity.height);
    for (int y = 0; y < intensity.height; ++y)
        for (int x = 0; x < intensity.width; ++x) {
            if (intensity.masked(x, y)) {
                img.at(x, y) = {0.5, 0.5, 0.5};
            } else {
                double v = intensity.at(x, y);
                img.at(x, y) = {v, v, v};
            }
        }
    return img;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"colour-map construction, analysis and rendering toolkit"};
    app.require_subcommand(1);
    int rc = 0;

    // ---- generate ----------------------------------------------------------
    auto* gen = app.add_subcommand(
        "generate", "Build a colour map from a preset or a spline-path JSON file");
    struct {
        std::string preset, pathfile, out, metric = "auto";
        int n = 256, iterations = 15;
        double sigma = -1.0, shift = 0.0;
        bool reverse = false;
    } g;
    auto* g_preset = gen->add_option("--preset", g.preset,
                                     "preset name (see --list-presets)");
    auto* g_path =
        gen->add_option("--path", g.pathfile, "spline path JSON {order,cyclic,control_points}");
    g_preset->excludes(g_path);
    gen->add_option("--n", g.n, "number of entries")->default_val(256);
    gen->add_option("--sigma", g.sigma,
                    "reversal-smoothing width in entries at n=256 (default: preset's)");
    auto* g_metric = gen->add_option("--metric", g.metric,
                                     "contrast metric: auto, lightness-only, cie76");
    auto* g_iter = gen->add_option("--iterations", g.iterations, "equalizer passes")
                       ->default_val(15);
    g_metric->excludes(g_preset);
    g_iter->excludes(g_preset);
    gen->add_option("--shift", g.shift, "rotate a cyclic map by this fraction of n");
    gen->add_flag("--reverse", g.reverse, "reverse entry order");
    gen->add_option("--out", g.out, "output map file (.csv or .json)");
    bool list_presets = false;
    gen->add_flag("--list-presets", list_presets, "list preset names and exit");
    gen->callback([&] {
        if (list_presets) {
            for (const auto& name : preset_names()) std::cout << name << "\n";
            return;
        }
        if (g.preset.empty() == g.pathfile.empty())
            throw std::invalid_argument("generate: give exactly one of --preset/--path");
        ColorMap map;
        if (!g.preset.empty()) {
            map = build_preset(g.preset, g.n, g.sigma);
        } else {
            MapPath path = read_path_json(g.pathfile);
            ContrastMetric metric = parse_metric(g.metric, path);
            std::vector<std::string> attrs;
            if (path.cyclic) attrs.push_back("cyclic");
            map = build_from_path(detail::file_stem(g.pathfile), path, g.n, metric,
                                  g.sigma < 0.0 ? 0.0 : g.sigma, attrs, g.iterations);
        }
        if (g.shift != 0.0) map = cyclic_shift(map, g.shift);
        if (g.reverse) map = reverse(map);
        std::string out = g.out.empty() ? map.name + ".csv" : g.out;
        write_map(map, out);
        print_report(map, analyze_uniformity(map));
        std::cout << "wrote " << out << "\n";
    });

    // ---- equalize ----------------------------------------------------------
    auto* eq = app.add_subcommand(
        "equalize", "Re-equalize an existing colour map for uniform perceptual contrast");
    struct {
        std::string in, out, metric = "auto";
        int n = 0, iterations = 15;
        double sigma = 0.0;
    } e;
    eq->add_option("--in", e.in, "input map (.csv or .json)")->required();
    eq->add_option("--out", e.out, "output map file")->required();
    eq->add_option("--n", e.n, "number of entries (default: same as input)");
    eq->add_option("--metric", e.metric, "contrast metric: auto, lightness-only, cie76");
    eq->add_option("--sigma", e.sigma, "reversal-smoothing width")->default_val(0.0);
    eq->add_option("--iterations", e.iterations, "equalizer passes")->default_val(15);
    eq->callback([&] {
        ColorMap in = read_map(e.in);
        MapPath path;
        path.order = 1;
        path.cyclic = in.has_attribute("cyclic");
        path.control_points = map_to_lab(in);
        ContrastMetric metric = parse_metric(e.metric, path);
        int n = e.n > 0 ? e.n : in.size();
        ColorMap out =
            build_from_path(in.name, path, n, metric, e.sigma, in.attributes, e.iterations);
        write_map(out, e.out);
        print_report(out, analyze_uniformity(out));
        std::cout << "wrote " << e.out << "\n";
    });

    // ---- analyze -----------------------------------------------------------
    auto* an = app.add_subcommand(
        "analyze", "Lint a colour map for flat spots, discontinuities and reversals");
    struct {
        std::string mapfile, profile;
    } a;
    an->add_option("mapfile", a.mapfile, "colour map (.csv or .json)")->required();
    an->add_option("--profile", a.profile, "write per-entry CSV: index,L,dL,dE76");
    an->callback([&] {
        ColorMap map = read_map(a.mapfile);
        UniformityReport rep = analyze_uniformity(map);
        print_report(map, rep);
        if (!a.profile.empty()) write_profile_csv(a.profile, map, rep);
        if (!rep.clean) rc = 1;
    });

    // ---- testimage ---------------------------------------------------------
    auto* ti = app.add_subcommand(
        "testimage", "Render a diagnostic ramp or angular-wheel image through a map");
    struct {
        std::string kind, map, out, grid_out;
        int width = 512, height = 256, size = 512;
        double wavelength = 8.0, amplitude = -1.0, cycles = 100.0;
    } t;
    ti->add_option("--kind", t.kind, "linear or cyclic")
        ->required()
        ->check(CLI::IsMember({"linear", "cyclic"}));
    ti->add_option("--map", t.map, "colour map file")->required();
    ti->add_option("--out", t.out, "output image (.ppm or .png)")->required();
    ti->add_option("--grid-out", t.grid_out, "also write the raw grid (ASCII)");
    ti->add_option("--width", t.width, "linear: image width")->default_val(512);
    ti->add_option("--height", t.height, "linear: image height")->default_val(256);
    ti->add_option("--wavelength", t.wavelength, "linear: sine wavelength in pixels")
        ->default_val(8.0);
    ti->add_option("--amplitude", t.amplitude,
                   "modulation amplitude (default 0.10 linear, pi/10 cyclic)");
    ti->add_option("--size", t.size, "cyclic: square image size")->default_val(512);
    ti->add_option("--cycles", t.cycles, "cyclic: angular modulation cycles")
        ->default_val(100.0);
    ti->callback([&] {
        ColorMap map = read_map(t.map);
        ScalarGrid grid(1, 1);
        RgbImage img(1, 1);
        if (t.kind == "linear") {
            LinearTestSpec spec;
            spec.width = t.width;
            spec.height = t.height;
            spec.wavelength = t.wavelength;
            if (t.amplitude >= 0.0) spec.amplitude = t.amplitude;
            grid = linear_test_image(spec);
            img = apply_map(grid, map, ApplyRange::auto_range());
        } else {
            CyclicTestSpec spec;
            spec.size = t.size;
            spec.cycles = t.cycles;
            if (t.amplitude >= 0.0) spec.amplitude = t.amplitude;
            grid = cyclic_test_image(spec);
            if (!map.has_attribute("cyclic"))
                std::cerr << "warning: map '" << map.name
                          << "' is not cyclic; expect a visible seam where the angle wraps\n";
            img = apply_map(grid, map, ApplyRange::cyclic_range(2.0 * kPi));
        }
        if (!t.grid_out.empty()) write_grid_ascii(grid, t.grid_out);
        write_image(img, t.out);
    });

    // ---- render ------------------------------------------------------------
    auto* rn = app.add_subcommand("render", "Map a scalar grid to colours");
    struct {
        std::string map, data, out, modulate, direction = "black";
        double diverging = 0.0, cyclic = 0.0, origin = 0.0, lo = 0.0, hi = 0.0;
    } r;
    rn->add_option("--map", r.map, "colour map file")->required();
    rn->add_option("--data", r.data, "scalar grid (ASCII)")->required();
    rn->add_option("--out", r.out, "output image (.ppm or .png)")->required();
    auto* r_div =
        rn->add_option("--diverging", r.diverging, "centre the map on this data value");
    auto* r_cyc = rn->add_option("--cyclic", r.cyclic, "wrap data over this period");
    auto* r_org = rn->add_option("--origin", r.origin, "cyclic: data value at entry 0");
    auto* r_lo = rn->add_option("--lo", r.lo, "explicit range low");
    auto* r_hi = rn->add_option("--hi", r.hi, "explicit range high");
    r_div->excludes(r_cyc);
    r_org->needs(r_cyc);
    r_lo->needs(r_hi);
    r_hi->needs(r_lo);
    r_lo->excludes(r_div)->excludes(r_cyc);
    auto* r_mod = rn->add_option("--modulate", r.modulate,
                                 "multiply by weights in this grid (e.g. shading)");
    rn->add_option("--direction", r.direction, "modulate toward: black or white")
        ->check(CLI::IsMember({"black", "white"}));
    rn->callback([&] {
        ColorMap map = read_map(r.map);
        ScalarGrid grid = read_grid_ascii(r.data);
        RenderPolicy policy = RenderPolicy::linear_auto();
        if (*r_div) policy = RenderPolicy::diverging(r.diverging);
        else if (*r_cyc) policy = RenderPolicy::cyclic(r.cyclic, r.origin);
        else if (*r_lo) policy = RenderPolicy::linear_range(r.lo, r.hi);
        RgbImage img = render(grid, map, policy);
        if (*r_mod) {
            ScalarGrid weights = read_grid_ascii(r.modulate);
            img = modulate(img, weights,
                           r.direction == "white" ? ModulateDirection::TowardWhite
                                                  : ModulateDirection::TowardBlack);
        }
        write_image(img, r.out);
    });

    // ---- shade -------------------------------------------------------------
    auto* sh = app.add_subcommand(
        "shade", "Relief-shade a grid (or synthesized 1/f^p noise), optionally draping a map");
    struct {
        std::string data, drape_map, out, grid_out;
        double noise = 0.0, azimuth = 135.0, elevation = 45.0, scale = 1.0,
               diverging = 0.0;
        int size = 512;
        std::uint64_t seed = 0;
    } s;
    auto* s_data = sh->add_option("--data", s.data, "scalar grid (ASCII)");
    auto* s_noise =
        sh->add_option("--noise", s.noise, "synthesize 1/f^p noise with this exponent p");
    s_data->excludes(s_noise);
    sh->add_option("--size", s.size, "noise grid size")->default_val(512)->needs(s_noise);
    sh->add_option("--seed", s.seed, "noise RNG seed")->default_val(0)->needs(s_noise);
    sh->add_option("--azimuth", s.azimuth, "light azimuth, degrees clockwise from north")
        ->default_val(135.0);
    sh->add_option("--elevation", s.elevation, "light elevation, degrees above horizon")
        ->default_val(45.0);
    sh->add_option("--scale", s.scale, "vertical exaggeration")->default_val(1.0);
    auto* s_drape = sh->add_option("--drape-map", s.drape_map,
                                   "colour map draped over the shaded surface");
    sh->add_option("--diverging", s.diverging, "drape: centre the map on this data value")
        ->needs(s_drape);
    sh->add_option("--out", s.out, "output image (.ppm or .png)");
    sh->add_option("--grid-out", s.grid_out, "write the input (or synthesized) grid");
    sh->callback([&] {
        if (s.data.empty() && !*s_noise)
            throw std::invalid_argument("shade: give --data or --noise");
        if (s.out.empty() && s.grid_out.empty())
            throw std::invalid_argument("shade: give --out and/or --grid-out");
        ScalarGrid grid = !s.data.empty()
                              ? read_grid_ascii(s.data)
                              : one_on_f_noise(s.size, s.size, s.noise, s.seed);
        if (!s.grid_out.empty()) write_grid_ascii(grid, s.grid_out);
        if (s.out.empty()) return;
        ShadingParams params;
        params.azimuth_deg = s.azimuth;
        params.elevation_deg = s.elevation;
        params.gradient_scale = s.scale;
        ScalarGrid intensity = shade(grid, params);
        RgbImage img(1, 1);
        if (!s.drape_map.empty()) {
            ColorMap map = read_map(s.drape_map);
            RenderPolicy policy = sh->count("--diverging")
                                      ? RenderPolicy::diverging(s.diverging)
                                      : RenderPolicy::linear_auto();
            img = combine_multiplicative(render(grid, map, policy), intensity);
        } else {
            img = intensity_to_image(intensity);
        }
        write_image(img, s.out);
    });

    // ---- ternary -----------------------------------------------------------
    auto* tn = app.add_subcommand(
        "ternary", "Compose three data channels with a three-colour basis");
    struct {
        std::string c1, c2, c3, out, basis = "balanced", clip;
    } y;
    tn->add_option("--c1", y.c1, "channel 1 grid (ASCII)")->required();
    tn->add_option("--c2", y.c2, "channel 2 grid (ASCII)")->required();
    tn->add_option("--c3", y.c3, "channel 3 grid (ASCII)")->required();
    tn->add_option("--basis", y.basis, "balanced (lightness-balanced) or rgb (primaries)")
        ->check(CLI::IsMember({"balanced", "rgb"}));
    tn->add_option("--clip", y.clip, "percentile clip, e.g. 2,98");
    tn->add_option("--out", y.out, "output image (.ppm or .png)")->required();
    tn->callback([&] {
        bool clip = !y.clip.empty();
        double p_lo = 0.0, p_hi = 100.0;
        if (clip) {
            std::size_t comma = y.clip.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("ternary: --clip expects 'LO,HI'");
            p_lo = std::stod(y.clip.substr(0, comma));
            p_hi = std::stod(y.clip.substr(comma + 1));
            if (!(p_lo >= 0.0 && p_hi <= 100.0 && p_lo < p_hi))
                throw std::invalid_argument("ternary: --clip percentiles out of order");
        }
        ScalarGrid c1 = normalize_channel(read_grid_ascii(y.c1), clip, p_lo, p_hi);
        ScalarGrid c2 = normalize_channel(read_grid_ascii(y.c2), clip, p_lo, p_hi);
        ScalarGrid c3 = normalize_channel(read_grid_ascii(y.c3), clip, p_lo, p_hi);
        TernaryBasis basis = y.basis == "rgb" ? rgb_primaries_basis() : balanced_basis();
        write_image(compose(c1, c2, c3, basis), y.out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return rc;
}
