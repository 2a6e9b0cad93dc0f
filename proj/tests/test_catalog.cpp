// SPDX-License-Identifier: Apache-2.0
// Colour-map family builders and the shipped preset catalogue.
#include <catch2/catch_amalgamated.hpp>

#include "cmapforge/analyze.hpp"
#include "cmapforge/catalog.hpp"

using namespace cmapforge;
using Catch::Approx;

namespace {

double wrap_dev(int idx, int expected, int n) {
    int d = ((idx - expected) % n + n) % n;
    return d <= n / 2 ? d : d - n;
}

}  // namespace

TEST_CASE("the preset registry ships the expected catalogue", "[catalog]") {
    auto names = preset_names();
    std::vector<std::string> expected = {
        "linear_grey_0_100", "linear_grey_10_95", "diverging_bwr", "divlinear_bgy",
        "rainbow_bgyr",      "cyclic_mrybm",      "cyclic_mygbm",  "cyclic_wrwbw",
        "cyclic_grey",       "iso_l70"};
    CHECK(names == expected);
    CHECK_THROWS_AS(build_preset("nope"), std::invalid_argument);
    CHECK_THROWS_WITH(build_preset("nope"),
                      Catch::Matchers::ContainsSubstring("unknown preset"));
}

TEST_CASE("every preset builds 256 in-range entries with honest provenance",
          "[catalog][presets]") {
    for (const auto& name : preset_names()) {
        INFO(name);
        ColorMap map = build_preset(name);
        CHECK(map.size() == 256);
        CHECK(map.name == name);
        for (const auto& e : map.entries) {
            CHECK(e.r >= 0.0);
            CHECK(e.r <= 1.0);
            CHECK(e.g >= 0.0);
            CHECK(e.g <= 1.0);
            CHECK(e.b >= 0.0);
            CHECK(e.b <= 1.0);
        }
        CHECK(map.provenance.clip_residual <= 0.01);
        CHECK_FALSE(map.attributes.empty());
    }
}

TEST_CASE("linear grey presets hit their lightness spans", "[catalog]") {
    ColorMap full = build_preset("linear_grey_0_100");
    auto lab_full = map_to_lab(full);
    CHECK(lab_full.front().L == Approx(0.0).margin(0.5));
    CHECK(lab_full.back().L == Approx(100.0).margin(0.5));
    ColorMap clipped = build_preset("linear_grey_10_95");
    auto lab_clip = map_to_lab(clipped);
    CHECK(lab_clip.front().L == Approx(10.0).margin(0.5));
    CHECK(lab_clip.back().L == Approx(95.0).margin(0.5));
    for (std::size_t i = 1; i < lab_clip.size(); ++i)
        CHECK(lab_clip[i].L > lab_clip[i - 1].L);
}

TEST_CASE("build_linear rescales onto a requested span and rejects non-monotone paths",
          "[catalog]") {
    MapPath grey{{{0, 0, 0}, {100, 0, 0}}, 1, false};
    ColorMap map = build_linear(grey, 128, {20.0, 80.0});
    auto lab = map_to_lab(map);
    CHECK(static_cast<int>(lab.size()) == 128);
    CHECK(lab.front().L == Approx(20.0).margin(0.5));
    CHECK(lab.back().L == Approx(80.0).margin(0.5));

    MapPath vee{{{20, 0, 0}, {80, 10, 0}, {20, 0, 0}}, 1, false};
    CHECK_THROWS_AS(build_linear(vee, 128, {10.0, 90.0}), std::domain_error);
    CHECK_THROWS_AS(build_linear(grey, 128, {80.0, 20.0}), std::invalid_argument);
}

TEST_CASE("diverging_bwr centre is neutral and reached smoothly", "[catalog]") {
    ColorMap map = build_preset("diverging_bwr");
    auto lab = map_to_lab(map);
    LabColor centre = lab[128];
    CHECK(centre.chroma() <= 2.0);
    // frozen construction values for this preset
    CHECK(centre.L == Approx(93.58).margin(0.1));
    CHECK(centre.chroma() == Approx(1.069).margin(0.1));
    CHECK(delta_e76(centre, LabColor{95.0, 0.0, 0.0}) <= 2.0);

    // the lightness first-difference may change sign only through the smoothed
    // apex: its discrete derivative must stay well below the mean step
    double mean_abs = 0.0, max_dd = 0.0;
    std::vector<double> dl;
    for (std::size_t i = 1; i < lab.size(); ++i) dl.push_back(lab[i].L - lab[i - 1].L);
    for (double d : dl) mean_abs += std::fabs(d);
    mean_abs /= static_cast<double>(dl.size());
    for (std::size_t i = 1; i < dl.size(); ++i)
        max_dd = std::max(max_dd, std::fabs(dl[i] - dl[i - 1]));
    CHECK(max_dd < mean_abs);
    CHECK(max_dd == Approx(0.056).margin(0.02));

    UniformityReport rep = analyze_uniformity(map);
    CHECK(rep.clean);
    REQUIRE(rep.reversals.size() == 1);
    CHECK(std::abs(rep.reversals[0] - 128) <= 2);
}

TEST_CASE("divlinear_bgy keeps lightness strictly monotone through the centre",
          "[catalog]") {
    ColorMap map = build_preset("divlinear_bgy");
    auto lab = map_to_lab(map);
    for (std::size_t i = 1; i < lab.size(); ++i) CHECK(lab[i].L > lab[i - 1].L);
    CHECK(analyze_uniformity(map).clean);
}

TEST_CASE("naive primary-to-primary diverging construction is rejected", "[catalog]") {
    // sRGB blue (L=32, C=134) to sRGB red (L=53, C=105) through white: the
    // endpoints are unmatched in both lightness and chroma
    DivergingSpec spec;
    spec.end_low = srgb_to_lab({0, 0, 1});
    spec.end_high = srgb_to_lab({1, 0, 0});
    spec.centre = {95.0, 0.0, 0.0};
    CHECK_THROWS_AS(build_diverging(spec, 256, 5.0), std::domain_error);

    // a tinted centre is rejected regardless of endpoints
    DivergingSpec tinted;
    tinted.end_low = {50.0, 30.0, -50.0};
    tinted.end_high = {50.0, 31.0, 49.0};
    tinted.centre = {95.0, 5.0, 0.0};
    CHECK_THROWS_AS(build_diverging(tinted, 256, 5.0), std::domain_error);
}

TEST_CASE("build_diverging accepts matched endpoints and centres the map",
          "[catalog]") {
    const MapPath& bwr = *detail::preset_definition("diverging_bwr").path;
    DivergingSpec spec;
    spec.end_low = bwr.control_points[0];
    spec.centre = bwr.control_points[1];
    spec.end_high = bwr.control_points[2];
    ColorMap map = build_diverging(spec, 256, 5.0);
    LabColor centre = srgb_to_lab(map.entries[128]);
    CHECK(delta_e76(centre, spec.centre) <= 2.0);
    CHECK(map.has_attribute("diverging"));
}

TEST_CASE("rainbow preset: controlled reversals, tamed cyan, ordered hues",
          "[catalog]") {
    ColorMap map = build_preset("rainbow_bgyr");
    auto lab = map_to_lab(map);
    UniformityReport rep = analyze_uniformity(map);
    CHECK(rep.clean);
    REQUIRE(rep.reversals.size() == 2);
    CHECK(std::abs(rep.reversals[0] - 138) <= 2);
    CHECK(std::abs(rep.reversals[1] - 213) <= 2);

    // chroma stays modest in the cyan band (hue 185..215), where the gamut
    // ceiling is low and naive rainbows bleach or clip
    double max_cyan_c = 0.0;
    for (const auto& c : lab) {
        double h = c.hue_deg();
        if (h > 185.0 && h < 215.0) max_cyan_c = std::max(max_cyan_c, c.chroma());
    }
    CHECK(max_cyan_c < 30.0);
    CHECK(max_cyan_c == Approx(24.4).margin(2.0));

    // frozen hue/lightness checkpoints along the blue->green->yellow->red sweep
    struct Point {
        int idx;
        double L, hue;
    };
    for (const auto& pt : std::vector<Point>{{0, 32.0, 291.0},
                                             {60, 56.7, 149.0},
                                             {120, 81.4, 111.0},
                                             {162, 79.3, 84.0},
                                             {200, 63.8, 59.0},
                                             {255, 76.0, 15.0}}) {
        INFO("index " << pt.idx);
        CHECK(lab[static_cast<std::size_t>(pt.idx)].L == Approx(pt.L).margin(1.0));
        CHECK(lab[static_cast<std::size_t>(pt.idx)].hue_deg() ==
              Approx(pt.hue).margin(5.0));
    }
}

TEST_CASE("cyclic presets wrap smoothly with anchors at the quarters",
          "[catalog][cyclic]") {
    for (const char* name :
         {"cyclic_mrybm", "cyclic_mygbm", "cyclic_wrwbw", "cyclic_grey"}) {
        INFO(name);
        ColorMap map = build_preset(name);
        auto lab = map_to_lab(map);
        std::size_t n = lab.size();

        // wrap step no larger than twice the mean step
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            mean += delta_e76(lab[(i + 1) % n], lab[i]);
        mean /= static_cast<double>(n);
        double wrap = delta_e76(lab[0], lab[n - 1]);
        CHECK(wrap <= 2.0 * mean);

        // control points surface nearest their quarter positions
        const MapPath& path = *detail::preset_definition(name).path;
        std::size_t k_anchors = path.control_points.size();
        for (std::size_t k = 0; k < k_anchors; ++k) {
            int expected = static_cast<int>(
                std::lround(static_cast<double>(n) * static_cast<double>(k) /
                            static_cast<double>(k_anchors)));
            int best = -1;
            double best_d = 1e300;
            int w = static_cast<int>(n) / 8;
            for (int j = expected - w; j <= expected + w; ++j) {
                int jj = ((j % static_cast<int>(n)) + static_cast<int>(n)) %
                         static_cast<int>(n);
                double d = delta_e76(lab[static_cast<std::size_t>(jj)],
                                     path.control_points[k]);
                if (d < best_d) {
                    best_d = d;
                    best = jj;
                }
            }
            INFO("anchor " << k);
            CHECK(std::fabs(wrap_dev(best, expected, static_cast<int>(n))) <=
                  0.02 * static_cast<double>(n));
        }
        CHECK(analyze_uniformity(map).clean);
    }
}

TEST_CASE("iso_l70 is isoluminant with near-uniform hue contrast", "[catalog]") {
    ColorMap map = build_preset("iso_l70");
    auto lab = map_to_lab(map);
    double l_min = 1e300, l_max = -1e300;
    for (const auto& c : lab) {
        l_min = std::min(l_min, c.L);
        l_max = std::max(l_max, c.L);
    }
    CHECK(l_max - l_min <= 2.0);
    CHECK(l_max - l_min <= 1.0);  // measured spread is ~1e-14 before quantization
    UniformityReport rep = analyze_uniformity(map);
    CHECK(rep.clean);
    CHECK(rep.cov_dE < 0.01);
}

TEST_CASE("isoluminant chroma beyond the gamut bound names the bound", "[catalog]") {
    CHECK_THROWS_AS(build_isoluminant(70.0, 256, 60.0), std::domain_error);
    CHECK_THROWS_WITH(build_isoluminant(70.0, 256, 60.0),
                      Catch::Matchers::ContainsSubstring("maximum feasible chroma"));
    CHECK_THROWS_WITH(build_isoluminant(70.0, 256, 60.0),
                      Catch::Matchers::ContainsSubstring("38.4"));
    // auto chroma fits just inside that bound
    ColorMap map = build_isoluminant(70.0, 64);
    auto lab = map_to_lab(map);
    for (const auto& c : lab) CHECK(c.chroma() <= 38.5);
}

TEST_CASE("family builders enforce minimum sizes", "[catalog]") {
    CHECK_THROWS_AS(build_rainbow(4, 7.0), std::invalid_argument);
    CHECK_THROWS_AS(build_cyclic(CyclicStyle::Zigzag, 4, 7.0), std::invalid_argument);
    CHECK(build_rainbow(64, 7.0).size() == 64);
    CHECK(build_cyclic(CyclicStyle::Grey, 64, 7.0).size() == 64);
}

TEST_CASE("auto_metric picks lightness for wide spans, cie76 otherwise", "[catalog]") {
    CHECK(auto_metric(MapPath{{{0, 0, 0}, {100, 0, 0}}, 1, false}) ==
          ContrastMetric::LightnessOnly);
    CHECK(auto_metric(detail::iso_circle_path(70.0, 38.0, 36)) == ContrastMetric::Cie76);
}

TEST_CASE("cyclic_shift rotates entries and requires the cyclic attribute",
          "[catalog]") {
    ColorMap map = build_preset("cyclic_mrybm");
    ColorMap shifted = cyclic_shift(map, 0.25);
    int n = map.size();
    for (int i = 0; i < n; ++i) {
        const RgbColor& a = shifted.entries[static_cast<std::size_t>(i)];
        const RgbColor& b = map.entries[static_cast<std::size_t>((i + 64) % n)];
        CHECK(a.r == b.r);
        CHECK(a.g == b.g);
        CHECK(a.b == b.b);
    }
    // full revolution and zero shift are identities
    ColorMap full = cyclic_shift(map, 1.0);
    ColorMap none = cyclic_shift(map, 0.0);
    for (int i = 0; i < n; ++i) {
        CHECK(full.entries[static_cast<std::size_t>(i)].r ==
              map.entries[static_cast<std::size_t>(i)].r);
        CHECK(none.entries[static_cast<std::size_t>(i)].g ==
              map.entries[static_cast<std::size_t>(i)].g);
    }
    // negative fractions rotate the other way
    ColorMap neg = cyclic_shift(map, -0.25);
    CHECK(neg.entries[64].r == map.entries[0].r);

    ColorMap grey = build_preset("linear_grey_0_100");
    CHECK_THROWS_AS(cyclic_shift(grey, 0.25), std::invalid_argument);
}

TEST_CASE("reverse flips entry order and is an involution", "[catalog]") {
    ColorMap map = build_preset("divlinear_bgy");
    ColorMap rev = reverse(map);
    int n = map.size();
    for (int i = 0; i < n; ++i)
        CHECK(rev.entries[static_cast<std::size_t>(i)].r ==
              map.entries[static_cast<std::size_t>(n - 1 - i)].r);
    ColorMap twice = reverse(rev);
    for (int i = 0; i < n; ++i)
        CHECK(twice.entries[static_cast<std::size_t>(i)].b ==
              map.entries[static_cast<std::size_t>(i)].b);
    CHECK(rev.attributes == map.attributes);
}

TEST_CASE("sigma override propagates to the built map", "[catalog]") {
    ColorMap sharp = build_preset("diverging_bwr", 256, 0.0);
    CHECK(sharp.provenance.sigma == 0.0);
    // without smoothing the apex kink survives and the analyzer objects
    UniformityReport rep = analyze_uniformity(sharp);
    CHECK_FALSE(rep.clean);
}
