#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "eitlab/io/csv.hpp"
#include "eitlab/numerics/grid.hpp"

namespace eitlab::io {

/// Grayscale image, row 0 at the top.
struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    unsigned maxval = 255;
    std::vector<std::uint16_t> pixels;

    bool operator==(const GrayImage&) const = default;
};

/// Binary PGM (P5). Samples are big-endian when maxval > 255.
inline std::string encode_pgm(const GrayImage& img) {
    if (img.maxval == 0 || img.maxval > 65535) throw IoError("pgm: maxval must be in [1, 65535]");
    if (img.pixels.size() != img.width * img.height) throw IoError("pgm: pixel count mismatch");
    std::ostringstream os;
    os << "P5\n" << img.width << ' ' << img.height << '\n' << img.maxval << '\n';
    std::string out = os.str();
    const bool wide = img.maxval > 255;
    out.reserve(out.size() + img.pixels.size() * (wide ? 2 : 1));
    for (std::uint16_t v : img.pixels) {
        if (v > img.maxval) throw IoError("pgm: pixel exceeds maxval");
        if (wide) out.push_back(static_cast<char>(v >> 8));
        out.push_back(static_cast<char>(v & 0xff));
    }
    return out;
}

inline GrayImage decode_pgm(const std::string& data) {
    std::size_t pos = 0;
    auto skip_space = [&] {
        while (pos < data.size()) {
            if (data[pos] == '#') {
                while (pos < data.size() && data[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(data[pos]))) {
                ++pos;
            } else {
                break;
            }
        }
    };
    auto read_uint = [&] {
        skip_space();
        const std::size_t begin = pos;
        unsigned long v = 0;
        while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos])))
            v = v * 10 + static_cast<unsigned long>(data[pos++] - '0');
        if (pos == begin) throw IoError("pgm: malformed header");
        return v;
    };
    if (data.compare(0, 2, "P5") != 0) throw IoError("pgm: not a binary PGM");
    pos = 2;
    GrayImage img;
    img.width = read_uint();
    img.height = read_uint();
    const unsigned long maxval = read_uint();
    if (maxval == 0 || maxval > 65535) throw IoError("pgm: maxval out of range");
    img.maxval = static_cast<unsigned>(maxval);
    if (pos >= data.size() || !std::isspace(static_cast<unsigned char>(data[pos])))
        throw IoError("pgm: malformed header");
    ++pos;
    const bool wide = img.maxval > 255;
    const std::size_t n = img.width * img.height;
    if (data.size() - pos != n * (wide ? 2 : 1)) throw IoError("pgm: pixel data size mismatch");
    img.pixels.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto hi = static_cast<unsigned char>(data[pos]);
        img.pixels[k] = wide ? static_cast<std::uint16_t>((hi << 8) | static_cast<unsigned char>(data[pos + 1])) : hi;
        pos += wide ? 2 : 1;
    }
    return img;
}

/// Maps values on a grid to gray levels, scaling [0, max] to [0, 2^bits - 1].
/// The top image row holds the largest y.
inline GrayImage grid_image(const numerics::Grid2D& grid, const std::vector<double>& values, int bits) {
    require(bits == 8 || bits == 16, "grid_image: bits must be 8 or 16");
    require(values.size() == grid.size(), "grid_image: value count mismatch");
    GrayImage img;
    img.width = grid.nx();
    img.height = grid.ny();
    img.maxval = bits == 8 ? 255u : 65535u;
    img.pixels.resize(grid.size());
    double top = 0.0;
    for (double v : values) top = std::max(top, v);
    for (std::size_t row = 0; row < grid.ny(); ++row) {
        const std::size_t j = grid.ny() - 1 - row;
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            const double v = std::max(values[grid.index(i, j)], 0.0);
            const double level = top > 0.0 ? std::round(v / top * img.maxval) : 0.0;
            img.pixels[row * grid.nx() + i] = static_cast<std::uint16_t>(std::min<double>(level, img.maxval));
        }
    }
    return img;
}

inline GrayImage intensity_image(const numerics::ComplexField& field, int bits) {
    return grid_image(field.grid(), numerics::intensity(field), bits);
}

inline void write_pgm(const std::filesystem::path& path, const GrayImage& img) { write_text(path, encode_pgm(img)); }

inline GrayImage read_pgm(const std::filesystem::path& path) { return decode_pgm(read_text(path)); }

}  // namespace eitlab::io
