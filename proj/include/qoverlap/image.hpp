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

/// Images and their amplitude (QPIE) encoding.
///
/// Pixel (i, j) of a P x Q image maps to basis index j * P + i: columns are
/// stacked, first column first. The amplitude of each basis state is the
/// pixel value divided by the Euclidean norm of the image.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qoverlap/error.hpp"
#include "qoverlap/statevector.hpp"

namespace qoverlap {

/// Row-major matrix of non-negative pixel intensities.
class Image {
  public:
    Image(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), px_(rows * cols, fill) {
        if (rows == 0 || cols == 0) throw InvalidArgument("image dimensions must be positive");
        if (fill < 0.0) throw InvalidArgument("pixel values must be non-negative");
    }

    Image(std::size_t rows, std::size_t cols, std::vector<double> row_major) : rows_(rows), cols_(cols), px_(std::move(row_major)) {
        if (rows == 0 || cols == 0) throw InvalidArgument("image dimensions must be positive");
        if (px_.size() != rows * cols) throw DimensionMismatch("pixel count does not match image dimensions");
        for (double v : px_) {
            if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("pixel values must be finite and non-negative");
        }
    }

    /// Builds an image from nested rows; all rows must have equal length.
    static Image from_rows(const std::vector<std::vector<double>>& rows) {
        if (rows.empty() || rows.front().empty()) throw InvalidArgument("image dimensions must be positive");
        std::vector<double> px;
        for (const auto& r : rows) {
            if (r.size() != rows.front().size()) throw ParseError("ragged rows");
            px.insert(px.end(), r.begin(), r.end());
        }
        return Image(rows.size(), rows.front().size(), std::move(px));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return px_.size(); }
    std::span<const double> pixels() const noexcept { return px_; }

    double operator()(std::size_t i, std::size_t j) const { return px_[index(i, j)]; }

    void set(std::size_t i, std::size_t j, double v) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("pixel values must be finite and non-negative");
        px_[index(i, j)] = v;
    }

    bool all_zero() const noexcept {
        return std::all_of(px_.begin(), px_.end(), [](double v) { return v == 0.0; });
    }
    double max_value() const noexcept { return *std::max_element(px_.begin(), px_.end()); }

    friend bool operator==(const Image&, const Image&) = default;

  private:
    std::size_t index(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw InvalidArgument("pixel coordinate out of range");
        return i * cols_ + j;
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> px_;
};

/// An image with its normalized amplitude encoding.
struct QuantumImage {
    Image source;
    std::size_t n_qubits;
    Statevector state;
};

/// Pixels >= threshold become 1, the rest 0.
inline Image binarize(const Image& img, double threshold) {
    std::vector<double> px(img.pixels().begin(), img.pixels().end());
    for (double& v : px) v = v >= threshold ? 1.0 : 0.0;
    return Image(img.rows(), img.cols(), std::move(px));
}

/// Appends zero rows at the bottom and zero columns at the right until both
/// dimensions are powers of two.
inline Image pad_to_pow2(const Image& img) {
    const std::size_t rows = std::bit_ceil(img.rows());
    const std::size_t cols = std::bit_ceil(img.cols());
    if (rows == img.rows() && cols == img.cols()) return img;
    Image out(rows, cols);
    for (std::size_t i = 0; i < img.rows(); ++i) {
        for (std::size_t j = 0; j < img.cols(); ++j) out.set(i, j, img(i, j));
    }
    return out;
}

/// Basis index of pixel (i, j) in the column-major layout.
constexpr std::size_t pixel_rank(std::size_t i, std::size_t j, std::size_t rows) noexcept { return j * rows + i; }

inline QuantumImage encode_qpie(const Image& img) {
    if (!std::has_single_bit(img.size())) {
        throw DimensionMismatch("pixel count " + std::to_string(img.size()) + " is not a power of two");
    }
    if (img.all_zero()) throw AllZeroImage();
    Amplitudes amps(img.size());
    for (std::size_t j = 0; j < img.cols(); ++j) {
        for (std::size_t i = 0; i < img.rows(); ++i) amps[pixel_rank(i, j, img.rows())] = img(i, j);
    }
    auto state = Statevector::normalized(std::move(amps));
    const std::size_t n = state.n_qubits();
    return QuantumImage{img, n, std::move(state)};
}

/// One tile of a segmented image; (block_row, block_col) are grid coordinates.
struct Block {
    std::size_t block_row;
    std::size_t block_col;
    Image image;
};

/// Non-overlapping tiling, blocks listed row by row.
struct SegmentGrid {
    std::size_t grid_rows;
    std::size_t grid_cols;
    std::size_t block_rows;
    std::size_t block_cols;
    std::vector<Block> blocks;

    const Block& at(std::size_t r, std::size_t c) const { return blocks.at(r * grid_cols + c); }
};

struct BlockDims {
    std::size_t rows;
    std::size_t cols;
    friend bool operator==(const BlockDims&, const BlockDims&) = default;
};

inline void check_block_dims(const Image& img, BlockDims dims) {
    if (dims.rows == 0 || dims.cols == 0) throw InvalidArgument("block dimensions must be positive");
    if (img.rows() % dims.rows != 0 || img.cols() % dims.cols != 0) {
        throw DimensionMismatch(std::to_string(dims.rows) + "x" + std::to_string(dims.cols) +
                                " blocks do not tile a " + std::to_string(img.rows()) + "x" +
                                std::to_string(img.cols()) + " image");
    }
    if (!std::has_single_bit(dims.rows * dims.cols)) {
        throw DimensionMismatch("block pixel count must be a power of two");
    }
}

inline SegmentGrid segment(const Image& img, BlockDims dims) {
    check_block_dims(img, dims);
    SegmentGrid grid{img.rows() / dims.rows, img.cols() / dims.cols, dims.rows, dims.cols, {}};
    grid.blocks.reserve(grid.grid_rows * grid.grid_cols);
    for (std::size_t br = 0; br < grid.grid_rows; ++br) {
        for (std::size_t bc = 0; bc < grid.grid_cols; ++bc) {
            std::vector<double> px;
            px.reserve(dims.rows * dims.cols);
            for (std::size_t i = 0; i < dims.rows; ++i) {
                for (std::size_t j = 0; j < dims.cols; ++j) px.push_back(img(br * dims.rows + i, bc * dims.cols + j));
            }
            grid.blocks.push_back(Block{br, bc, Image(dims.rows, dims.cols, std::move(px))});
        }
    }
    return grid;
}

/// Inverse of segment().
inline Image reassemble(const SegmentGrid& grid) {
    Image out(grid.grid_rows * grid.block_rows, grid.grid_cols * grid.block_cols);
    for (const auto& b : grid.blocks) {
        for (std::size_t i = 0; i < grid.block_rows; ++i) {
            for (std::size_t j = 0; j < grid.block_cols; ++j) {
                out.set(b.block_row * grid.block_rows + i, b.block_col * grid.block_cols + j, b.image(i, j));
            }
        }
    }
    return out;
}

}  // namespace qoverlap
