// SPDX-License-Identifier: Apache-2.0
// File formats: colour-map CSV/JSON, spline-path JSON, ASCII scalar grids,
// and binary PPM / PNG image encoders with deterministic output bytes.
#pragma once

#include <zlib.h>

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "colormap.hpp"
#include "grid.hpp"

namespace cmapforge {

namespace detail {

inline std::string lower_ext(const std::string& path) {
    std::size_t dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext;
}

inline std::string file_stem(const std::string& path) {
    std::size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    return f;
}

inline std::ifstream open_in(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    return f;
}

inline std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline double parse_double(const std::string& tok, const std::string& where) {
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(where + ": invalid number '" + tok + "'");
    }
}

}  // namespace detail

// ---- colour-map CSV -------------------------------------------------------
// header `# cmapforge v1, n=<N>, attributes=<a|b|...>`, then N rows `r,g,b`
// at fixed 6 decimals.

inline void write_map_csv(const ColorMap& map, std::ostream& os) {
    os << "# cmapforge v1, n=" << map.size() << ", attributes=";
    for (std::size_t i = 0; i < map.attributes.size(); ++i) {
        if (i) os << '|';
        os << map.attributes[i];
    }
    os << '\n';
    for (const auto& e : map.entries)
        os << detail::fmt6(e.r) << ',' << detail::fmt6(e.g) << ',' << detail::fmt6(e.b)
           << '\n';
}

inline void write_map_csv(const ColorMap& map, const std::string& path) {
    auto f = detail::open_out(path);
    write_map_csv(map, f);
}

inline ColorMap read_map_csv(std::istream& is, const std::string& origin) {
    std::string line;
    int lineno = 1;
    if (!std::getline(is, line))
        throw std::runtime_error(origin + ":1: empty colour-map file");
    const std::string magic = "# cmapforge v1";
    if (line.rfind(magic, 0) != 0)
        throw std::runtime_error(origin + ":1: missing '" + magic + "' header");
    ColorMap map;
    map.name = detail::file_stem(origin);
    int n = -1;
    std::size_t npos_ = line.find("n=");
    if (npos_ != std::string::npos) n = std::atoi(line.c_str() + npos_ + 2);
    std::size_t apos = line.find("attributes=");
    if (apos != std::string::npos) {
        std::string attrs = line.substr(apos + std::strlen("attributes="));
        std::string cur;
        std::stringstream ss(attrs);
        while (std::getline(ss, cur, '|'))
            if (!cur.empty()) map.attributes.push_back(cur);
    }
    validate_attributes(map.attributes);
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::string where = origin + ":" + std::to_string(lineno);
        std::stringstream ss(line);
        std::string f1, f2, f3, extra;
        if (!std::getline(ss, f1, ',') || !std::getline(ss, f2, ',') ||
            !std::getline(ss, f3, ','))
            throw std::runtime_error(where + ": expected 'r,g,b'");
        if (std::getline(ss, extra, ','))
            throw std::runtime_error(where + ": trailing fields after 'r,g,b'");
        map.entries.push_back({detail::parse_double(f1, where),
                               detail::parse_double(f2, where),
                               detail::parse_double(f3, where)});
    }
    if (map.entries.size() < 2)
        throw std::runtime_error(origin + ": colour map needs at least 2 entries");
    if (n >= 0 && n != map.size())
        throw std::runtime_error(origin + ": header says n=" + std::to_string(n) +
                                 " but found " + std::to_string(map.size()) + " rows");
    return map;
}

inline ColorMap read_map_csv(const std::string& path) {
    auto f = detail::open_in(path);
    return read_map_csv(f, path);
}

// ---- colour-map JSON ------------------------------------------------------

inline nlohmann::json path_to_json(const MapPath& p) {
    nlohmann::json j;
    j["order"] = p.order;
    j["cyclic"] = p.cyclic;
    auto& cps = j["control_points"] = nlohmann::json::array();
    for (const auto& c : p.control_points) cps.push_back({c.L, c.a, c.b});
    return j;
}

inline MapPath path_from_json(const nlohmann::json& j) {
    MapPath p;
    p.order = j.at("order").get<int>();
    p.cyclic = j.at("cyclic").get<bool>();
    for (const auto& c : j.at("control_points"))
        p.control_points.push_back(
            {c.at(0).get<double>(), c.at(1).get<double>(), c.at(2).get<double>()});
    return p;
}

inline void write_map_json(const ColorMap& map, const std::string& path) {
    nlohmann::json j;
    j["format"] = "cmapforge";
    j["version"] = 1;
    j["name"] = map.name;
    j["n"] = map.size();
    j["attributes"] = map.attributes;
    auto& entries = j["entries"] = nlohmann::json::array();
    for (const auto& e : map.entries) entries.push_back({e.r, e.g, e.b});
    nlohmann::json prov;
    prov["metric"] = to_string(map.provenance.metric);
    prov["iterations"] = map.provenance.iterations;
    prov["sigma"] = map.provenance.sigma;
    prov["clip_residual"] = map.provenance.clip_residual;
    if (!map.provenance.path.control_points.empty())
        prov["path"] = path_to_json(map.provenance.path);
    j["provenance"] = prov;
    auto f = detail::open_out(path);
    f << j.dump(2) << '\n';
}

inline ColorMap read_map_json(const std::string& path) {
    auto f = detail::open_in(path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": JSON parse error: " + e.what());
    }
    ColorMap map;
    map.name = j.value("name", detail::file_stem(path));
    if (j.contains("attributes"))
        map.attributes = j.at("attributes").get<std::vector<std::string>>();
    validate_attributes(map.attributes);
    for (const auto& e : j.at("entries"))
        map.entries.push_back(
            {e.at(0).get<double>(), e.at(1).get<double>(), e.at(2).get<double>()});
    if (map.entries.size() < 2)
        throw std::runtime_error(path + ": colour map needs at least 2 entries");
    if (j.contains("provenance")) {
        const auto& prov = j.at("provenance");
        map.provenance.metric = prov.value("metric", std::string("lightness-only")) ==
                                        "cie76"
                                    ? ContrastMetric::Cie76
                                    : ContrastMetric::LightnessOnly;
        map.provenance.iterations = prov.value("iterations", 15);
        map.provenance.sigma = prov.value("sigma", 0.0);
        map.provenance.clip_residual = prov.value("clip_residual", 0.0);
        if (prov.contains("path")) map.provenance.path = path_from_json(prov.at("path"));
    }
    return map;
}

// dispatch on extension: .csv or .json
inline ColorMap read_map(const std::string& path) {
    std::string ext = detail::lower_ext(path);
    if (ext == "csv") return read_map_csv(path);
    if (ext == "json") return read_map_json(path);
    throw std::runtime_error("unsupported colour-map format: " + path);
}

inline void write_map(const ColorMap& map, const std::string& path) {
    std::string ext = detail::lower_ext(path);
    if (ext == "csv") return write_map_csv(map, path);
    if (ext == "json") return write_map_json(map, path);
    throw std::runtime_error("unsupported colour-map format: " + path);
}

// ---- spline-path JSON: {order, cyclic, control_points: [[L,a,b],...]} -----

inline MapPath read_path_json(const std::string& path) {
    auto f = detail::open_in(path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": JSON parse error: " + e.what());
    }
    try {
        return path_from_json(j);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": invalid path definition: " + e.what());
    }
}

inline void write_path_json(const MapPath& p, const std::string& path) {
    auto f = detail::open_out(path);
    f << path_to_json(p).dump(2) << '\n';
}

// ---- ASCII scalar grid: `width height`, then row-major values, nan=masked --

inline void write_grid_ascii(const ScalarGrid& grid, std::ostream& os) {
    os << grid.width << ' ' << grid.height << '\n';
    char buf[40];
    for (int y = 0; y < grid.height; ++y) {
        for (int x = 0; x < grid.width; ++x) {
            if (x) os << ' ';
            if (grid.masked(x, y)) {
                os << "nan";
            } else {
                std::snprintf(buf, sizeof buf, "%.12g", grid.at(x, y));
                os << buf;
            }
        }
        os << '\n';
    }
}

inline void write_grid_ascii(const ScalarGrid& grid, const std::string& path) {
    auto f = detail::open_out(path);
    write_grid_ascii(grid, f);
}

inline ScalarGrid read_grid_ascii(std::istream& is, const std::string& origin) {
    int w = 0, h = 0;
    if (!(is >> w >> h) || w <= 0 || h <= 0)
        throw std::runtime_error(origin + ": grid header must be 'width height'");
    ScalarGrid grid(w, h);
    std::string tok;
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        if (!(is >> tok))
            throw std::runtime_error(origin + ": expected " +
                                     std::to_string(grid.values.size()) +
                                     " values, found " + std::to_string(i));
        if (tok == "nan" || tok == "NaN" || tok == "NAN") {
            grid.values[i] = 0.0;
            if (grid.mask.empty()) grid.mask.assign(grid.values.size(), 0);
            grid.mask[i] = 1;
        } else {
            grid.values[i] = detail::parse_double(tok, origin);
        }
    }
    if (is >> tok)
        throw std::runtime_error(origin + ": trailing data after " +
                                 std::to_string(grid.values.size()) + " values");
    return grid;
}

inline ScalarGrid read_grid_ascii(const std::string& path) {
    auto f = detail::open_in(path);
    return read_grid_ascii(f, path);
}

// ---- images ----------------------------------------------------------------

// round-half-up of 255*channel
inline std::uint8_t quantize8(double v) {
    int q = static_cast<int>(std::floor(255.0 * v + 0.5));
    return static_cast<std::uint8_t>(std::clamp(q, 0, 255));
}

inline void write_ppm(const RgbImage& img, const std::string& path) {
    auto f = detail::open_out(path);
    f << "P6\n" << img.width << ' ' << img.height << "\n255\n";
    std::vector<std::uint8_t> row(static_cast<std::size_t>(img.width) * 3);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const RgbColor& c = img.at(x, y);
            row[static_cast<std::size_t>(x) * 3 + 0] = quantize8(c.r);
            row[static_cast<std::size_t>(x) * 3 + 1] = quantize8(c.g);
            row[static_cast<std::size_t>(x) * 3 + 2] = quantize8(c.b);
        }
        f.write(reinterpret_cast<const char*>(row.data()),
                static_cast<std::streamsize>(row.size()));
    }
}

namespace detail {

inline void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

inline void put_chunk(std::vector<std::uint8_t>& out, const char type[4],
                      const std::vector<std::uint8_t>& data) {
    put_be32(out, static_cast<std::uint32_t>(data.size()));
    std::size_t crc_start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    std::uint32_t crc = static_cast<std::uint32_t>(
        ::crc32(0L, out.data() + crc_start, static_cast<uInt>(4 + data.size())));
    put_be32(out, crc);
}

}  // namespace detail

// 8-bit truecolour PNG, filter 0 scanlines, single IDAT (zlib level 6)
inline void write_png(const RgbImage& img, const std::string& path) {
    std::vector<std::uint8_t> raw;
    raw.reserve(static_cast<std::size_t>(img.height) *
                (static_cast<std::size_t>(img.width) * 3 + 1));
    for (int y = 0; y < img.height; ++y) {
        raw.push_back(0);  // filter: none
        for (int x = 0; x < img.width; ++x) {
            const RgbColor& c = img.at(x, y);
            raw.push_back(quantize8(c.r));
            raw.push_back(quantize8(c.g));
            raw.push_back(quantize8(c.b));
        }
    }
    uLongf comp_len = ::compressBound(static_cast<uLong>(raw.size()));
    std::vector<std::uint8_t> compressed(comp_len);
    if (::compress2(compressed.data(), &comp_len, raw.data(),
                    static_cast<uLong>(raw.size()), 6) != Z_OK)
        throw std::runtime_error("PNG deflate failed");
    compressed.resize(comp_len);

    std::vector<std::uint8_t> out = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    std::vector<std::uint8_t> ihdr;
    detail::put_be32(ihdr, static_cast<std::uint32_t>(img.width));
    detail::put_be32(ihdr, static_cast<std::uint32_t>(img.height));
    ihdr.push_back(8);   // bit depth
    ihdr.push_back(2);   // truecolour
    ihdr.push_back(0);   // compression
    ihdr.push_back(0);   // filter
    ihdr.push_back(0);   // interlace
    detail::put_chunk(out, "IHDR", ihdr);
    detail::put_chunk(out, "IDAT", compressed);
    detail::put_chunk(out, "IEND", {});
    auto f = detail::open_out(path);
    f.write(reinterpret_cast<const char*>(out.data()),
            static_cast<std::streamsize>(out.size()));
}

inline void write_image(const RgbImage& img, const std::string& path) {
    std::string ext = detail::lower_ext(path);
    if (ext == "ppm") return write_ppm(img, path);
    if (ext == "png") return write_png(img, path);
    throw std::runtime_error("unsupported image format (use .ppm or .png): " + path);
}

}  // namespace cmapforge
