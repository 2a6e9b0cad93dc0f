// SPDX-License-Identifier: Apache-2.0
// Rendering policies (linear, diverging, cyclic) and colour modulation.
#include <catch2/catch_amalgamated.hpp>

#include "cmapforge/catalog.hpp"
#include "cmapforge/render.hpp"

using namespace cmapforge;
using Catch::Approx;

namespace {

bool same_color(const RgbColor& a, const RgbColor& b) {
    return a.r == b.r && a.g == b.g && a.b == b.b;
}

bool same_image(const RgbImage& a, const RgbImage& b) {
    if (a.width != b.width || a.height != b.height) return false;
    for (std::size_t i = 0; i < a.pixels.size(); ++i)
        if (!same_color(a.pixels[i], b.pixels[i])) return false;
    return true;
}

}  // namespace

TEST_CASE("linear explicit range clamps and maps monotonically", "[render]") {
    ColorMap map = build_preset("linear_grey_0_100", 256);
    ScalarGrid grid(6, 1);
    double vals[] = {-3.0, 0.0, 0.25, 0.75, 1.0, 4.0};
    for (int x = 0; x < 6; ++x) grid.at(x, 0) = vals[x];
    RgbImage img = render(grid, map, RenderPolicy::linear_range(0.0, 1.0));
    CHECK(same_color(img.at(0, 0), map.entries.front()));  // clamped below
    CHECK(same_color(img.at(1, 0), map.entries.front()));
    CHECK(same_color(img.at(5, 0), map.entries.back()));   // clamped above
    CHECK(same_color(img.at(4, 0), map.entries.back()));
    // monotone data through a lightness-increasing grey map: nondecreasing r
    for (int x = 1; x < 6; ++x) CHECK(img.at(x, 0).r >= img.at(x - 1, 0).r);
    CHECK(same_color(img.at(2, 0), map.entries[64]));   // round(0.25*255)
    CHECK(same_color(img.at(3, 0), map.entries[191]));  // round(0.75*255)
}

TEST_CASE("diverging mode symmetrizes the range about the reference", "[render]") {
    ColorMap map = build_preset("diverging_bwr", 256);
    ScalarGrid grid(4, 1);
    double vals[] = {-1.0, -0.5, 0.5, 1.0};
    for (int x = 0; x < 4; ++x) grid.at(x, 0) = vals[x];
    RgbImage img = render(grid, map, RenderPolicy::diverging(0.0));
    CHECK(same_color(img.at(0, 0), map.entries[0]));
    CHECK(same_color(img.at(1, 0), map.entries[64]));
    CHECK(same_color(img.at(2, 0), map.entries[191]));  // 255 - 64: mirrored
    CHECK(same_color(img.at(3, 0), map.entries[255]));
}

TEST_CASE("diverging mode ties the reference to the centre entry", "[render]") {
    ColorMap map = build_preset("diverging_bwr", 256);
    ScalarGrid grid(3, 1);
    grid.at(0, 0) = -1.0;
    grid.at(1, 0) = 0.0;
    grid.at(2, 0) = 3.0;  // asymmetric data: range must still centre on 0
    RgbImage img = render(grid, map, RenderPolicy::diverging(0.0));
    CHECK(same_color(img.at(1, 0), map.entries[128]));
    CHECK(same_color(img.at(2, 0), map.entries[255]));
    // -1 sits one third of the way down the lower half: (-1+3)/6*255 = 85
    CHECK(same_color(img.at(0, 0), map.entries[85]));
}

TEST_CASE("diverging reference outside the data leaves one half unused", "[render]") {
    ColorMap map = build_preset("diverging_bwr", 256);
    ScalarGrid grid(2, 1);
    grid.at(0, 0) = 1.0;
    grid.at(1, 0) = 2.0;
    RgbImage img = render(grid, map, RenderPolicy::diverging(0.0));  // warns
    CHECK(same_color(img.at(0, 0), map.entries[191]));  // (1+2)/4*255
    CHECK(same_color(img.at(1, 0), map.entries[255]));
}

TEST_CASE("cyclic rendering is exactly periodic for representable offsets",
          "[render]") {
    ColorMap map = build_preset("cyclic_mrybm", 256);
    ScalarGrid base(4, 1);
    double vals[] = {0.125, 0.375, 0.625, 0.875};
    for (int x = 0; x < 4; ++x) base.at(x, 0) = vals[x];
    RgbImage ref = render(base, map, RenderPolicy::cyclic(1.0));
    for (double k : {1.0, -2.0, 7.0}) {
        ScalarGrid shifted = base;
        for (auto& v : shifted.values) v += k;
        RgbImage img = render(shifted, map, RenderPolicy::cyclic(1.0));
        CHECK(same_image(img, ref));
    }
}

TEST_CASE("cyclic origin shifts the wheel", "[render]") {
    ColorMap map = build_preset("cyclic_grey", 64);
    ScalarGrid grid(2, 1);
    grid.at(0, 0) = 0.25;
    grid.at(1, 0) = 1.25;
    RgbImage img = render(grid, map, RenderPolicy::cyclic(1.0, 0.25));
    CHECK(same_color(img.at(0, 0), map.entries[0]));  // v == origin -> entry 0
    CHECK(same_color(img.at(0, 0), img.at(1, 0)));
}

TEST_CASE("cyclic mode refuses maps without the cyclic attribute", "[render]") {
    ColorMap map = build_preset("linear_grey_0_100", 64);
    ScalarGrid grid(2, 1);
    grid.at(1, 0) = 1.0;
    CHECK_THROWS_AS(render(grid, map, RenderPolicy::cyclic(1.0)),
                    std::invalid_argument);
}

TEST_CASE("render rejects degenerate input", "[render]") {
    ColorMap map = build_preset("diverging_bwr", 64);
    ScalarGrid flat(2, 1, 5.0);
    CHECK_THROWS_AS(render(flat, map, RenderPolicy::diverging(5.0)),
                    std::domain_error);  // all data equals the reference
    ScalarGrid ok(2, 1);
    ok.at(1, 0) = 1.0;
    CHECK_THROWS_AS(render(ok, map, RenderPolicy::linear_range(2.0, 2.0)),
                    std::invalid_argument);
}

TEST_CASE("modulate identities and formulas", "[modulate]") {
    ColorMap map = build_preset("rainbow_bgyr", 16);
    RgbImage img(4, 1);
    for (int x = 0; x < 4; ++x) img.at(x, 0) = map.entries[static_cast<size_t>(x) * 5];

    ScalarGrid ones(4, 1, 1.0);
    CHECK(same_image(modulate(img, ones, ModulateDirection::TowardBlack), img));
    CHECK(same_image(modulate(img, ones, ModulateDirection::TowardWhite), img));

    ScalarGrid zeros(4, 1, 0.0);
    RgbImage black = modulate(img, zeros, ModulateDirection::TowardBlack);
    RgbImage white = modulate(img, zeros, ModulateDirection::TowardWhite);
    for (int x = 0; x < 4; ++x) {
        CHECK(black.at(x, 0).r == 0.0);
        CHECK(black.at(x, 0).g == 0.0);
        CHECK(black.at(x, 0).b == 0.0);
        CHECK(white.at(x, 0).r == 1.0);
        CHECK(white.at(x, 0).g == 1.0);
        CHECK(white.at(x, 0).b == 1.0);
    }

    ScalarGrid w(4, 1, 0.25);
    RgbImage dimmed = modulate(img, w, ModulateDirection::TowardBlack);
    RgbImage tinted = modulate(img, w, ModulateDirection::TowardWhite);
    for (int x = 0; x < 4; ++x) {
        CHECK(dimmed.at(x, 0).g == Approx(0.25 * img.at(x, 0).g));
        CHECK(tinted.at(x, 0).g == Approx(0.25 * img.at(x, 0).g + 0.75));
    }
}

TEST_CASE("modulate skips masked weights and validates input", "[modulate]") {
    RgbImage img(2, 1, {0.2, 0.4, 0.6});
    ScalarGrid w(2, 1, 0.5);
    w.set_masked(1, 0);
    RgbImage out = modulate(img, w, ModulateDirection::TowardBlack);
    CHECK(out.at(0, 0).r == Approx(0.1));
    CHECK(same_color(out.at(1, 0), img.at(1, 0)));  // masked: untouched

    ScalarGrid wrong_dims(3, 1, 0.5);
    CHECK_THROWS_AS(modulate(img, wrong_dims, ModulateDirection::TowardBlack),
                    std::invalid_argument);
    ScalarGrid over(2, 1, 1.5);
    CHECK_THROWS_AS(modulate(img, over, ModulateDirection::TowardBlack),
                    std::invalid_argument);
    ScalarGrid under(2, 1, -0.1);
    CHECK_THROWS_AS(modulate(img, under, ModulateDirection::TowardWhite),
                    std::invalid_argument);
}

TEST_CASE("masked cells render as the background colour", "[render]") {
    ColorMap map = build_preset("linear_grey_10_95", 32);
    ScalarGrid grid(3, 1);
    grid.at(1, 0) = 0.5;
    grid.at(2, 0) = 1.0;
    grid.set_masked(1, 0);
    RenderPolicy policy = RenderPolicy::linear_auto();
    policy.background = {0.1, 0.2, 0.3};
    RgbImage img = render(grid, map, policy);
    CHECK(img.at(1, 0).r == Approx(0.1));
    CHECK(img.at(1, 0).g == Approx(0.2));
    CHECK(img.at(1, 0).b == Approx(0.3));
}
