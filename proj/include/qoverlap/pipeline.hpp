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

/// Image comparison experiments: whole-image overlap, segment-wise average
/// overlap, repeated-run statistics and reference ranking.
///
/// The segment-wise score of a target/reference pair tiled into blocks is
///
///     I_avg = (sum of overlaps over block pairs where both blocks are nonzero)
///             / max(N1, N2)
///
/// with N1, N2 the nonzero-block counts of the two images. Pairs where only
/// one side is blank contribute zero but still count in the denominator.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qoverlap/error.hpp"
#include "qoverlap/image.hpp"
#include "qoverlap/noise.hpp"
#include "qoverlap/overlap.hpp"
#include "qoverlap/random.hpp"

namespace qoverlap {

struct ComparisonSettings {
    Protocol protocol = Protocol::Destructive;
    /// 0 selects exact evaluation.
    std::uint64_t shots = 8192;
    std::optional<NoiseModel> noise;
    std::size_t runs = 100;
    std::uint64_t seed = 0;

    bool exact() const noexcept { return shots == 0; }

    void validate() const {
        if (runs == 0) throw InvalidArgument("runs must be at least 1");
        if (exact() && noise) throw InvalidArgument("exact mode cannot be combined with noise");
        if (noise) noise->validate();
    }
};

enum class ComparisonMode { Full, Segmented };

struct SegmentOutcome {
    std::size_t block_row = 0;
    std::size_t block_col = 0;
    bool target_nonzero = false;
    bool reference_nonzero = false;
    /// Result of the first run; default-constructed for skipped pairs.
    OverlapResult first_run;
    /// Overlap averaged over all runs; 0 for skipped pairs.
    double mean_overlap = 0.0;

    bool skipped() const noexcept { return !(target_nonzero && reference_nonzero); }
};

struct ComparisonReport {
    ComparisonMode mode = ComparisonMode::Full;
    Protocol protocol = Protocol::Destructive;
    std::optional<BlockDims> block_dims;
    /// One entry per block pair (segmented) or a single whole-image entry.
    std::vector<SegmentOutcome> per_segment;
    std::size_t target_blocks = 0;     // N1
    std::size_t reference_blocks = 0;  // N2
    /// Per-run score: overlap (full) or average overlap (segmented).
    std::vector<double> run_scores;
    /// Mean of run_scores in segmented mode; unused (0) in full mode.
    double i_avg = 0.0;
    double i_mean = 0.0;
    double i_std = 0.0;
    std::size_t runs = 0;
    std::uint64_t shots = 0;

    double score() const noexcept { return mode == ComparisonMode::Segmented ? i_avg : i_mean; }

    std::size_t compared_pairs() const noexcept {
        return static_cast<std::size_t>(std::count_if(per_segment.begin(), per_segment.end(),
                                                      [](const auto& s) { return !s.skipped(); }));
    }
    /// Pairs where exactly one block is blank: the excluded comparisons.
    std::size_t one_sided_skips() const noexcept {
        return static_cast<std::size_t>(std::count_if(per_segment.begin(), per_segment.end(), [](const auto& s) {
            return s.target_nonzero != s.reference_nonzero;
        }));
    }
};

/// Mean and Bessel-corrected standard deviation (0 for a single value).
inline std::pair<double, double> mean_and_std(std::span<const double> xs) {
    if (xs.empty()) return {0.0, 0.0};
    const double n = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    if (xs.size() == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

namespace detail {

inline void finish_statistics(ComparisonReport& report) {
    const auto [mean, sd] = mean_and_std(report.run_scores);
    report.i_mean = mean;
    report.i_std = sd;
    if (report.mode == ComparisonMode::Segmented) report.i_avg = mean;
}

}  // namespace detail

/// Overlap of two whole encoded images, repeated `settings.runs` times.
inline ComparisonReport compare_full(const QuantumImage& target, const QuantumImage& reference,
                                     const ComparisonSettings& settings) {
    settings.validate();
    if (target.source.rows() != reference.source.rows() || target.source.cols() != reference.source.cols()) {
        throw DimensionMismatch("target and reference images differ in size");
    }
    ComparisonReport report;
    report.mode = ComparisonMode::Full;
    report.protocol = settings.protocol;
    report.runs = settings.runs;
    report.shots = settings.shots;
    report.target_blocks = report.reference_blocks = 1;
    report.run_scores.resize(settings.runs);

    std::vector<OverlapResult> results(settings.exact() ? 1 : settings.runs);
    parallel_for(results.size(), [&](std::size_t run) {
        results[run] = estimate_overlap(settings.protocol, target.state, reference.state, settings.shots,
                                        settings.noise, derive_seed(settings.seed, run));
    });
    for (std::size_t run = 0; run < settings.runs; ++run) {
        report.run_scores[run] = results[settings.exact() ? 0 : run].overlap;
    }
    SegmentOutcome whole;
    whole.target_nonzero = whole.reference_nonzero = true;
    whole.first_run = results.front();
    whole.mean_overlap = std::accumulate(report.run_scores.begin(), report.run_scores.end(), 0.0) /
                         static_cast<double>(settings.runs);
    report.per_segment.push_back(whole);
    detail::finish_statistics(report);
    return report;
}

/// Number of blocks containing at least one nonzero pixel.
inline std::size_t count_nonzero_blocks(const Image& img, BlockDims dims) {
    const auto grid = segment(img, dims);
    return static_cast<std::size_t>(
        std::count_if(grid.blocks.begin(), grid.blocks.end(), [](const Block& b) { return !b.image.all_zero(); }));
}

/// Segment-wise average overlap, repeated `settings.runs` times.
inline ComparisonReport compare_segmented(const Image& target, const Image& reference, BlockDims dims,
                                          const ComparisonSettings& settings) {
    settings.validate();
    if (target.rows() != reference.rows() || target.cols() != reference.cols()) {
        throw DimensionMismatch("target and reference images differ in size");
    }
    const auto tgrid = segment(target, dims);
    const auto rgrid = segment(reference, dims);

    ComparisonReport report;
    report.mode = ComparisonMode::Segmented;
    report.protocol = settings.protocol;
    report.block_dims = dims;
    report.runs = settings.runs;
    report.shots = settings.shots;

    struct Pair {
        std::size_t segment;
        Statevector target;
        Statevector reference;
    };
    std::vector<Pair> pairs;
    for (std::size_t k = 0; k < tgrid.blocks.size(); ++k) {
        const auto& tb = tgrid.blocks[k];
        const auto& rb = rgrid.blocks[k];
        SegmentOutcome seg;
        seg.block_row = tb.block_row;
        seg.block_col = tb.block_col;
        seg.target_nonzero = !tb.image.all_zero();
        seg.reference_nonzero = !rb.image.all_zero();
        report.target_blocks += seg.target_nonzero;
        report.reference_blocks += seg.reference_nonzero;
        if (!seg.skipped()) pairs.push_back(Pair{k, encode_qpie(tb.image).state, encode_qpie(rb.image).state});
        report.per_segment.push_back(seg);
    }
    const std::size_t denominator = std::max(report.target_blocks, report.reference_blocks);
    if (denominator == 0) throw UndefinedScore();

    const std::size_t evaluated_runs = settings.exact() ? 1 : settings.runs;
    // results[run][pair]
    std::vector<std::vector<OverlapResult>> results(evaluated_runs, std::vector<OverlapResult>(pairs.size()));
    parallel_for(evaluated_runs * pairs.size(), [&](std::size_t work) {
        const std::size_t run = work / pairs.size();
        const std::size_t p = work % pairs.size();
        results[run][p] = estimate_overlap(settings.protocol, pairs[p].target, pairs[p].reference, settings.shots,
                                           settings.noise, derive_seed(settings.seed, run, pairs[p].segment));
    });

    report.run_scores.resize(settings.runs);
    for (std::size_t run = 0; run < settings.runs; ++run) {
        const auto& row = results[settings.exact() ? 0 : run];
        double sum = 0.0;
        for (const auto& r : row) sum += r.overlap;
        report.run_scores[run] = sum / static_cast<double>(denominator);
    }
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        auto& seg = report.per_segment[pairs[p].segment];
        seg.first_run = results[0][p];
        double sum = 0.0;
        for (const auto& row : results) sum += row[p].overlap;
        seg.mean_overlap = sum / static_cast<double>(evaluated_runs);
    }
    detail::finish_statistics(report);
    return report;
}

/// Full-image comparison when `blocks` is empty, segmented otherwise.
inline ComparisonReport compare_images(const Image& target, const Image& reference,
                                       const std::optional<BlockDims>& blocks, const ComparisonSettings& settings) {
    if (blocks) return compare_segmented(target, reference, *blocks, settings);
    if (target.rows() != reference.rows() || target.cols() != reference.cols()) {
        throw DimensionMismatch("target and reference images differ in size");
    }
    return compare_full(encode_qpie(target), encode_qpie(reference), settings);
}

struct RankEntry {
    std::size_t reference_id;
    double score;
    double score_std;
};

/// Scores every reference against the target and orders them by descending
/// score; equal scores keep ascending reference id. Reference k uses seed
/// stream k of settings.seed.
inline std::vector<RankEntry> rank_references(const Image& target, std::span<const Image> references,
                                              const std::optional<BlockDims>& blocks,
                                              const ComparisonSettings& settings) {
    if (references.empty()) throw InvalidArgument("reference set is empty");
    for (const auto& ref : references) {
        if (ref.rows() != target.rows() || ref.cols() != target.cols()) {
            throw DimensionMismatch("reference image differs in size from the target");
        }
    }
    std::vector<RankEntry> ranking;
    ranking.reserve(references.size());
    for (std::size_t k = 0; k < references.size(); ++k) {
        ComparisonSettings s = settings;
        s.seed = derive_seed(settings.seed, k);
        const auto report = compare_images(target, references[k], blocks, s);
        ranking.push_back(RankEntry{k, report.score(), report.i_std});
    }
    std::stable_sort(ranking.begin(), ranking.end(),
                     [](const RankEntry& a, const RankEntry& b) { return a.score > b.score; });
    return ranking;
}

}  // namespace qoverlap
