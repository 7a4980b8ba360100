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

// Writes the 32x32 shape gallery as PGM files and prints the exact
// full-image and 4x4 segment-wise overlap tables.
//
// Usage: shape_gallery [output-dir]

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qoverlap/image_io.hpp"
#include "qoverlap/qoverlap.hpp"

int main(int argc, char** argv) {
    using namespace qoverlap;
    const std::filesystem::path dir = argc > 1 ? argv[1] : "shapes";
    std::filesystem::create_directories(dir);
    const auto gallery = shapes::gallery(32);
    for (const auto& [name, img] : gallery) {
        std::ofstream(dir / (name + ".pgm")) << format_pgm(img);
    }

    ComparisonSettings exact;
    exact.shots = 0;
    exact.runs = 1;
    for (std::optional<BlockDims> blocks : {std::optional<BlockDims>{}, std::optional<BlockDims>{BlockDims{4, 4}}}) {
        std::printf("%s\n%-10s", blocks ? "average overlap, 4x4 blocks" : "full-image overlap", "");
        for (const auto& [name, img] : gallery) std::printf("%10s", name.c_str());
        std::printf("\n");
        for (const auto& [tname, target] : gallery) {
            std::printf("%-10s", tname.c_str());
            for (const auto& [rname, ref] : gallery) {
                std::printf("%10.4f", compare_images(target, ref, blocks, exact).score());
            }
            std::printf("\n");
        }
        std::printf("\n");
    }
    std::printf("PGM files written to %s\n", dir.string().c_str());
}
