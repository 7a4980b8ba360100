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

/// Small binary test patterns: geometric shapes on a square canvas and a set
/// of 2x2 patterns. Foreground pixels are 1, background 0.
#pragma once

#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "qoverlap/image.hpp"

namespace qoverlap::shapes {

/// Filled axis-aligned square covering the central half of the canvas.
inline Image square(std::size_t size) {
    Image img(size, size);
    const std::size_t lo = size / 4, hi = size - size / 4;
    for (std::size_t i = lo; i < hi; ++i) {
        for (std::size_t j = lo; j < hi; ++j) img.set(i, j, 1.0);
    }
    return img;
}

/// Filled disc centred on the canvas with radius 3/8 of its side.
inline Image circle(std::size_t size) {
    Image img(size, size);
    const double c = (static_cast<double>(size) - 1.0) / 2.0;
    const double r = 0.375 * static_cast<double>(size);
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) {
            const double di = static_cast<double>(i) - c, dj = static_cast<double>(j) - c;
            if (di * di + dj * dj <= r * r) img.set(i, j, 1.0);
        }
    }
    return img;
}

/// Filled isosceles triangle, apex at the top centre, base along the lower
/// quarter line.
inline Image triangle(std::size_t size) {
    Image img(size, size);
    const std::size_t top = size / 8, bottom = size - size / 8;
    const double c = (static_cast<double>(size) - 1.0) / 2.0;
    for (std::size_t i = top; i < bottom; ++i) {
        const double t = static_cast<double>(i - top + 1) / static_cast<double>(bottom - top);
        const double half = t * 0.4 * static_cast<double>(size);
        for (std::size_t j = 0; j < size; ++j) {
            if (std::abs(static_cast<double>(j) - c) <= half) img.set(i, j, 1.0);
        }
    }
    return img;
}

/// Plus sign with arms a quarter of the canvas wide.
inline Image cross(std::size_t size) {
    Image img(size, size);
    const std::size_t lo = 3 * size / 8, hi = size - 3 * size / 8;
    const std::size_t margin = size / 8;
    for (std::size_t i = margin; i < size - margin; ++i) {
        for (std::size_t j = lo; j < hi; ++j) {
            img.set(i, j, 1.0);
            img.set(j, i, 1.0);
        }
    }
    return img;
}

/// Square outline of width size/16 (at least one pixel).
inline Image frame(std::size_t size) {
    Image img(size, size);
    const std::size_t lo = size / 8, hi = size - size / 8;
    const std::size_t w = std::max<std::size_t>(1, size / 16);
    for (std::size_t i = lo; i < hi; ++i) {
        for (std::size_t j = lo; j < hi; ++j) {
            if (i < lo + w || i >= hi - w || j < lo + w || j >= hi - w) img.set(i, j, 1.0);
        }
    }
    return img;
}

inline std::vector<std::pair<std::string, Image>> gallery(std::size_t size = 32) {
    return {{"square", square(size)},
            {"circle", circle(size)},
            {"triangle", triangle(size)},
            {"cross", cross(size)},
            {"frame", frame(size)}};
}

/// Four distinct 2x2 binary patterns S1..S4 (rows listed top to bottom).
inline std::vector<Image> two_by_two_patterns() {
    return {Image::from_rows({{1, 0}, {0, 1}}), Image::from_rows({{1, 1}, {0, 0}}),
            Image::from_rows({{1, 0}, {1, 0}}), Image::from_rows({{1, 1}, {1, 1}})};
}

}  // namespace qoverlap::shapes
