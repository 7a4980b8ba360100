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

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qoverlap/image.hpp"

namespace qoverlap::testing {

/// Glyph placement; variants of one digit differ in offset and stroke width.
struct DigitStyle {
    int dx = 0;
    int dy = 0;
    int stroke = 3;
};

/// 28x28 greyscale seven-segment digit with a soft one-pixel fringe, a
/// stand-in for handwritten digit images.
inline Image synthetic_digit(int digit, DigitStyle style = {}) {
    // segments: top, upper right, lower right, bottom, lower left, upper left, middle
    static constexpr std::array<std::uint8_t, 10> masks{0b0111111, 0b0000110, 0b1011011, 0b1001111, 0b1100110,
                                                        0b1101101, 0b1111101, 0b0000111, 0b1111111, 0b1101111};
    const int top = 4 + style.dy, bottom = 23 + style.dy, left = 8 + style.dx, right = 19 + style.dx;
    const int mid = (top + bottom) / 2, t = style.stroke;
    struct Rect {
        int r0, r1, c0, c1;
    };
    const std::array<Rect, 7> rects{Rect{top, top + t, left, right + 1},
                                    Rect{top, mid + 1, right + 1 - t, right + 1},
                                    Rect{mid, bottom + 1, right + 1 - t, right + 1},
                                    Rect{bottom + 1 - t, bottom + 1, left, right + 1},
                                    Rect{mid, bottom + 1, left, left + t},
                                    Rect{top, mid + 1, left, left + t},
                                    Rect{mid - t / 2, mid - t / 2 + t, left, right + 1}};
    std::vector<double> core(28 * 28, 0.0);
    for (int s = 0; s < 7; ++s) {
        if (!((masks.at(static_cast<std::size_t>(digit)) >> s) & 1)) continue;
        const auto& r = rects[static_cast<std::size_t>(s)];
        for (int i = std::max(0, r.r0); i < std::min(28, r.r1); ++i)
            for (int j = std::max(0, r.c0); j < std::min(28, r.c1); ++j) core[static_cast<std::size_t>(i * 28 + j)] = 255.0;
    }
    std::vector<double> px = core;
    for (int i = 0; i < 28; ++i) {
        for (int j = 0; j < 28; ++j) {
            if (core[static_cast<std::size_t>(i * 28 + j)] > 0.0) continue;
            bool near = false;
            for (int di = -1; di <= 1; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    const int a = i + di, b = j + dj;
                    near |= a >= 0 && a < 28 && b >= 0 && b < 28 && core[static_cast<std::size_t>(a * 28 + b)] > 0.0;
                }
            if (near) px[static_cast<std::size_t>(i * 28 + j)] = 96.0;
        }
    }
    return Image(28, 28, std::move(px));
}

/// References 0..9 in the default style followed by a shifted, thicker "0"
/// at index 10 to serve as the target.
inline std::vector<Image> synthetic_digit_set() {
    std::vector<Image> out;
    for (int d = 0; d < 10; ++d) out.push_back(synthetic_digit(d));
    out.push_back(synthetic_digit(0, {.dx = 1, .dy = 1, .stroke = 4}));
    return out;
}

}  // namespace qoverlap::testing
