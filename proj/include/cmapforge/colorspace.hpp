// SPDX-License-Identifier: Apache-2.0
// sRGB <-> CIELAB conversions (D65, 2 deg observer), CIE76 and CIEDE2000
// colour differences, and gamut tests.
#pragma once

#include <cmath>
#include <stdexcept>

namespace cmapforge {

inline constexpr double kPi = 3.14159265358979323846;

struct RgbColor {
    double r{}, g{}, b{};
};

struct LabColor {
    double L{}, a{}, b{};
    double chroma() const { return std::hypot(a, b); }
    // hue angle in degrees, [0, 360)
    double hue_deg() const {
        if (a == 0.0 && b == 0.0) return 0.0;
        double h = std::atan2(b, a) * 180.0 / kPi;
        return h < 0.0 ? h + 360.0 : h;
    }
};

struct WhitePoint {
    double Xn{0.95047}, Yn{1.0}, Zn{1.08883};  // D65, Yn normalized to 1
};

namespace detail {

inline constexpr double kSrgbToXyz[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};
// numeric inverse of kSrgbToXyz
inline constexpr double kXyzToSrgb[3][3] = {
    {3.2404548360214087, -1.5371388501025751, -0.498531546868481},
    {-0.96926638987565383, 1.8760109288424911, 0.041556082346673545},
    {0.055643419604213672, -0.20402585426769818, 1.057225162457929},
};
inline constexpr double kLabDelta = 6.0 / 29.0;

// sRGB transfer function, extended to all reals by sign symmetry so the
// conversion stays smooth and invertible outside [0,1].
inline double srgb_linearize(double u) {
    double au = std::fabs(u);
    double v = au <= 0.04045 ? au / 12.92 : std::pow((au + 0.055) / 1.055, 2.4);
    return std::copysign(v, u);
}

inline double srgb_delinearize(double v) {
    double av = std::fabs(v);
    double u = av <= 0.0031308 ? av * 12.92 : 1.055 * std::pow(av, 1.0 / 2.4) - 0.055;
    return std::copysign(u, v);
}

inline double lab_f(double t) {
    constexpr double d3 = kLabDelta * kLabDelta * kLabDelta;
    return t > d3 ? std::cbrt(t) : t / (3.0 * kLabDelta * kLabDelta) + 4.0 / 29.0;
}

inline double lab_f_inv(double ft) {
    return ft > kLabDelta ? ft * ft * ft
                          : 3.0 * kLabDelta * kLabDelta * (ft - 4.0 / 29.0);
}

inline void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string("non-finite ") + what);
}

}  // namespace detail

inline LabColor srgb_to_lab(const RgbColor& c, const WhitePoint& wp = {}) {
    detail::require_finite(c.r, "RGB input");
    detail::require_finite(c.g, "RGB input");
    detail::require_finite(c.b, "RGB input");
    double lin[3] = {detail::srgb_linearize(c.r), detail::srgb_linearize(c.g),
                     detail::srgb_linearize(c.b)};
    double xyz[3];
    for (int i = 0; i < 3; ++i)
        xyz[i] = detail::kSrgbToXyz[i][0] * lin[0] + detail::kSrgbToXyz[i][1] * lin[1] +
                 detail::kSrgbToXyz[i][2] * lin[2];
    double fx = detail::lab_f(xyz[0] / wp.Xn);
    double fy = detail::lab_f(xyz[1] / wp.Yn);
    double fz = detail::lab_f(xyz[2] / wp.Zn);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

inline RgbColor lab_to_srgb(const LabColor& c, const WhitePoint& wp = {}) {
    detail::require_finite(c.L, "Lab input");
    detail::require_finite(c.a, "Lab input");
    detail::require_finite(c.b, "Lab input");
    double fy = (c.L + 16.0) / 116.0;
    double fx = fy + c.a / 500.0;
    double fz = fy - c.b / 200.0;
    double xyz[3] = {detail::lab_f_inv(fx) * wp.Xn, detail::lab_f_inv(fy) * wp.Yn,
                     detail::lab_f_inv(fz) * wp.Zn};
    double lin[3];
    for (int i = 0; i < 3; ++i)
        lin[i] = detail::kXyzToSrgb[i][0] * xyz[0] + detail::kXyzToSrgb[i][1] * xyz[1] +
                 detail::kXyzToSrgb[i][2] * xyz[2];
    // not clamped: gamut checking is the caller's policy
    return {detail::srgb_delinearize(lin[0]), detail::srgb_delinearize(lin[1]),
            detail::srgb_delinearize(lin[2])};
}

inline double delta_e76(const LabColor& c1, const LabColor& c2) {
    detail::require_finite(c1.L + c1.a + c1.b + c2.L + c2.a + c2.b, "Lab input");
    double dL = c1.L - c2.L, da = c1.a - c2.a, db = c1.b - c2.b;
    return std::sqrt(dL * dL + da * da + db * db);
}

// CIEDE2000 with all correction terms, kL = kC = kH = 1.
inline double delta_e2000(const LabColor& c1, const LabColor& c2) {
    detail::require_finite(c1.L + c1.a + c1.b + c2.L + c2.a + c2.b, "Lab input");
    const double deg2rad = kPi / 180.0, rad2deg = 180.0 / kPi;
    double C1 = c1.chroma(), C2 = c2.chroma();
    double Cbar = 0.5 * (C1 + C2);
    double Cbar7 = std::pow(Cbar, 7.0);
    constexpr double p257 = 6103515625.0;  // 25^7
    double G = 0.5 * (1.0 - std::sqrt(Cbar7 / (Cbar7 + p257)));
    double a1p = (1.0 + G) * c1.a, a2p = (1.0 + G) * c2.a;
    double C1p = std::hypot(a1p, c1.b), C2p = std::hypot(a2p, c2.b);
    auto hue_of = [&](double a, double b) {
        if (a == 0.0 && b == 0.0) return 0.0;
        double h = std::atan2(b, a) * rad2deg;
        return h < 0.0 ? h + 360.0 : h;
    };
    double h1p = hue_of(a1p, c1.b), h2p = hue_of(a2p, c2.b);

    double dLp = c2.L - c1.L;
    double dCp = C2p - C1p;
    double dhp = 0.0;
    if (C1p * C2p != 0.0) {
        dhp = h2p - h1p;
        if (dhp > 180.0) dhp -= 360.0;
        else if (dhp < -180.0) dhp += 360.0;
    }
    double dHp = 2.0 * std::sqrt(C1p * C2p) * std::sin(0.5 * dhp * deg2rad);

    double Lbar = 0.5 * (c1.L + c2.L);
    double Cbarp = 0.5 * (C1p + C2p);
    double hbarp;
    if (C1p * C2p == 0.0) {
        hbarp = h1p + h2p;
    } else if (std::fabs(h1p - h2p) <= 180.0) {
        hbarp = 0.5 * (h1p + h2p);
    } else if (h1p + h2p < 360.0) {
        hbarp = 0.5 * (h1p + h2p + 360.0);
    } else {
        hbarp = 0.5 * (h1p + h2p - 360.0);
    }

    double T = 1.0 - 0.17 * std::cos((hbarp - 30.0) * deg2rad) +
               0.24 * std::cos(2.0 * hbarp * deg2rad) +
               0.32 * std::cos((3.0 * hbarp + 6.0) * deg2rad) -
               0.20 * std::cos((4.0 * hbarp - 63.0) * deg2rad);
    double dtheta = 30.0 * std::exp(-((hbarp - 275.0) / 25.0) * ((hbarp - 275.0) / 25.0));
    double Cbarp7 = std::pow(Cbarp, 7.0);
    double RC = 2.0 * std::sqrt(Cbarp7 / (Cbarp7 + p257));
    double Lm50sq = (Lbar - 50.0) * (Lbar - 50.0);
    double SL = 1.0 + 0.015 * Lm50sq / std::sqrt(20.0 + Lm50sq);
    double SC = 1.0 + 0.045 * Cbarp;
    double SH = 1.0 + 0.015 * Cbarp * T;
    double RT = -std::sin(2.0 * dtheta * deg2rad) * RC;

    double tL = dLp / SL, tC = dCp / SC, tH = dHp / SH;
    return std::sqrt(tL * tL + tC * tC + tH * tH + RT * tC * tH);
}

// Largest violation of the [0,1] sRGB cube after conversion (0 when inside).
inline double gamut_residual(const LabColor& c) {
    RgbColor rgb = lab_to_srgb(c);
    double over = 0.0;
    for (double v : {rgb.r, rgb.g, rgb.b}) {
        over = std::max(over, v - 1.0);
        over = std::max(over, -v);
    }
    return over;
}

inline bool in_gamut(const LabColor& c, double tol = 1e-6) {
    return gamut_residual(c) <= tol;
}

// Gamut-boundary chroma at a given lightness and hue, by bisection.
inline double max_feasible_chroma(double L, double hue_deg, double tol = 1e-4) {
    double h = hue_deg * kPi / 180.0;
    double lo = 0.0, hi = 200.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        LabColor lab{L, mid * std::cos(h), mid * std::sin(h)};
        (in_gamut(lab, 1e-9) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace cmapforge
