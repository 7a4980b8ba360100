// Copyright 2026 The qoverlap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// Image file readers and writers: whitespace matrix text, PGM (P2/P5) and
/// MNIST-style IDX image files (magic 0x00000803).
#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "qoverlap/error.hpp"
#include "qoverlap/image.hpp"

namespace qoverlap {

enum class ImageFormat { MatrixText, Pgm, Idx };

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline std::uint32_t read_be32(const std::string& bytes, std::size_t offset) {
    std::uint32_t v = 0;
    for (std::size_t k = 0; k < 4; ++k) v = (v << 8) | static_cast<unsigned char>(bytes[offset + k]);
    return v;
}

inline void write_be32(std::string& out, std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<char>((v >> shift) & 0xff));
}

/// Next whitespace-delimited header token of a PGM file, skipping comments.
inline std::string pgm_token(const std::string& s, std::size_t& pos) {
    for (;;) {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos < s.size() && s[pos] == '#') {
            while (pos < s.size() && s[pos] != '\n') ++pos;
            continue;
        }
        break;
    }
    const std::size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '#') ++pos;
    if (start == pos) throw ParseError("PGM: unexpected end of header");
    return s.substr(start, pos - start);
}

inline std::uint64_t parse_uint(const std::string& tok, const char* what) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 18) {
        throw ParseError(std::string(what) + ": expected an unsigned integer, got '" + tok + "'");
    }
    return std::stoull(tok);
}

}  // namespace detail

/// Whitespace-separated reals, one image row per non-blank line.
inline Image parse_matrix_text(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        std::vector<double> row;
        std::string tok;
        while (fields >> tok) {
            std::size_t used = 0;
            double v;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception&) {
                throw ParseError("matrix text: bad number '" + tok + "'");
            }
            if (used != tok.size()) throw ParseError("matrix text: bad number '" + tok + "'");
            row.push_back(v);
        }
        if (row.empty()) continue;
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError("matrix text: ragged rows (" + std::to_string(rows.front().size()) + " vs " +
                             std::to_string(row.size()) + " values)");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("matrix text: no pixel rows");
    try {
        return Image::from_rows(rows);
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("matrix text: ") + e.what());
    }
}

/// Parses P2 (ASCII) or P5 (binary) graymaps with maxval up to 65535.
/// Pixel values are returned as stored.
inline Image parse_pgm(const std::string& bytes) {
    std::size_t pos = 0;
    const std::string magic = detail::pgm_token(bytes, pos);
    if (magic != "P2" && magic != "P5") throw ParseError("PGM: bad magic '" + magic + "'");
    const auto width = detail::parse_uint(detail::pgm_token(bytes, pos), "PGM width");
    const auto height = detail::parse_uint(detail::pgm_token(bytes, pos), "PGM height");
    const auto maxval = detail::parse_uint(detail::pgm_token(bytes, pos), "PGM maxval");
    if (width == 0 || height == 0) throw ParseError("PGM: zero dimension");
    if (maxval == 0 || maxval > 65535) throw ParseError("PGM: maxval must be in [1, 65535]");
    const std::uint64_t count = width * height;
    std::vector<double> px;
    px.reserve(count);
    if (magic == "P2") {
        std::istringstream body(bytes.substr(pos));
        std::string tok;
        while (px.size() < count && body >> tok) {
            const auto v = detail::parse_uint(tok, "PGM pixel");
            if (v > maxval) throw ParseError("PGM: pixel value exceeds maxval");
            px.push_back(static_cast<double>(v));
        }
        if (px.size() != count) throw ParseError("PGM: truncated pixel data");
    } else {
        if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
            throw ParseError("PGM: missing whitespace after header");
        }
        ++pos;
        const std::size_t sample = maxval < 256 ? 1 : 2;
        if (bytes.size() - pos < count * sample) throw ParseError("PGM: truncated pixel data");
        for (std::uint64_t k = 0; k < count; ++k) {
            std::uint32_t v = static_cast<unsigned char>(bytes[pos + k * sample]);
            if (sample == 2) v = (v << 8) | static_cast<unsigned char>(bytes[pos + k * sample + 1]);
            if (v > maxval) throw ParseError("PGM: pixel value exceeds maxval");
            px.push_back(static_cast<double>(v));
        }
    }
    return Image(static_cast<std::size_t>(height), static_cast<std::size_t>(width), std::move(px));
}

/// Number of images in an IDX image file.
inline std::size_t idx_image_count(const std::string& bytes) {
    if (bytes.size() < 16) throw ParseError("IDX: truncated header");
    if (detail::read_be32(bytes, 0) != 0x00000803) throw ParseError("IDX: magic is not 0x00000803");
    return detail::read_be32(bytes, 4);
}

/// Image `index` of an IDX file of unsigned bytes.
inline Image parse_idx(const std::string& bytes, std::size_t index) {
    const std::size_t count = idx_image_count(bytes);
    const std::size_t rows = detail::read_be32(bytes, 8);
    const std::size_t cols = detail::read_be32(bytes, 12);
    if (rows == 0 || cols == 0) throw ParseError("IDX: zero image dimension");
    if (bytes.size() - 16 < count * rows * cols) throw ParseError("IDX: truncated payload");
    if (index >= count) {
        throw InvalidArgument("IDX: index " + std::to_string(index) + " out of range (" + std::to_string(count) +
                              " images)");
    }
    std::vector<double> px(rows * cols);
    const std::size_t base = 16 + index * rows * cols;
    for (std::size_t k = 0; k < px.size(); ++k) px[k] = static_cast<unsigned char>(bytes[base + k]);
    return Image(rows, cols, std::move(px));
}

/// Guesses the format from the file extension (.pgm, .idx / -idx3-ubyte,
/// anything else is matrix text).
inline ImageFormat guess_format(const std::filesystem::path& path) {
    const std::string name = path.filename().string();
    const std::string ext = path.extension().string();
    if (ext == ".pgm") return ImageFormat::Pgm;
    if (ext == ".idx" || name.find("idx3") != std::string::npos) return ImageFormat::Idx;
    return ImageFormat::MatrixText;
}

inline Image load_image(const std::filesystem::path& path, ImageFormat format, std::size_t index = 0) {
    const std::string bytes = detail::read_file(path);
    switch (format) {
        case ImageFormat::MatrixText: return parse_matrix_text(bytes);
        case ImageFormat::Pgm: return parse_pgm(bytes);
        case ImageFormat::Idx: return parse_idx(bytes, index);
    }
    throw InvalidArgument("unknown image format");
}

inline Image load_image(const std::filesystem::path& path) { return load_image(path, guess_format(path)); }

/// P2 serialization; values are rounded to integers.
inline std::string format_pgm(const Image& img) {
    const auto maxval = std::max<long>(1, std::lround(img.max_value()));
    if (maxval > 65535) throw InvalidArgument("PGM: pixel values above 65535");
    std::ostringstream out;
    out << "P2\n" << img.cols() << ' ' << img.rows() << '\n' << maxval << '\n';
    for (std::size_t i = 0; i < img.rows(); ++i) {
        for (std::size_t j = 0; j < img.cols(); ++j) out << (j ? " " : "") << std::lround(img(i, j));
        out << '\n';
    }
    return out.str();
}

/// IDX serialization of equally sized images; values are rounded and clamped to bytes.
inline std::string format_idx(std::span<const Image> images) {
    if (images.empty()) throw InvalidArgument("IDX: no images");
    const std::size_t rows = images.front().rows(), cols = images.front().cols();
    std::string out;
    detail::write_be32(out, 0x00000803);
    detail::write_be32(out, static_cast<std::uint32_t>(images.size()));
    detail::write_be32(out, static_cast<std::uint32_t>(rows));
    detail::write_be32(out, static_cast<std::uint32_t>(cols));
    for (const auto& img : images) {
        if (img.rows() != rows || img.cols() != cols) throw DimensionMismatch("IDX: images differ in size");
        for (double v : img.pixels()) out.push_back(static_cast<char>(std::clamp<long>(std::lround(v), 0, 255)));
    }
    return out;
}

}  // namespace qoverlap
