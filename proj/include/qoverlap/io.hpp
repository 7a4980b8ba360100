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

/// JSON and CSV serialization of noise models and experiment results.
#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <system_error>

#include <json.hpp>

#include "qoverlap/associative_memory.hpp"
#include "qoverlap/error.hpp"
#include "qoverlap/noise.hpp"
#include "qoverlap/nv_model.hpp"
#include "qoverlap/pipeline.hpp"

namespace qoverlap {

using json = nlohmann::ordered_json;

/// Shortest round-trip-safe rendering used in CSV cells.
inline std::string fmt_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string_view protocol_name(Protocol p) noexcept { return p == Protocol::Swap ? "swap" : "destructive"; }

inline Protocol parse_protocol(std::string_view s) {
    if (s == "swap") return Protocol::Swap;
    if (s == "destructive") return Protocol::Destructive;
    throw InvalidArgument("protocol must be 'swap' or 'destructive'");
}

// ---------------------------------------------------------------------------
// NoiseModel: flat object {"p_1q", "p_2q", "p_3q", "readout_r", "seed"}; every
// key optional, unknown keys rejected.

inline json to_json(const NoiseModel& m) {
    return json{{"p_1q", m.p_1q}, {"p_2q", m.p_2q}, {"p_3q", m.p_3q}, {"readout_r", m.readout_r}, {"seed", m.seed}};
}

inline NoiseModel noise_model_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("noise config must be a JSON object");
    static const std::set<std::string> known{"p_1q", "p_2q", "p_3q", "readout_r", "seed"};
    NoiseModel m;
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) throw ParseError("noise config: unknown key '" + key + "'");
        if (key == "seed") {
            if (!value.is_number_unsigned()) throw ParseError("noise config: seed must be a non-negative integer");
            m.seed = value.get<std::uint64_t>();
            continue;
        }
        if (!value.is_number()) throw ParseError("noise config: '" + key + "' must be a number");
        const double v = value.get<double>();
        if (key == "p_1q") m.p_1q = v;
        if (key == "p_2q") m.p_2q = v;
        if (key == "p_3q") m.p_3q = v;
        if (key == "readout_r") m.readout_r = v;
    }
    m.validate();
    return m;
}

inline NoiseModel parse_noise_model(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("noise config: ") + e.what());
    }
    return noise_model_from_json(j);
}

inline NoiseModel load_noise_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_noise_model(ss.str());
}

// ---------------------------------------------------------------------------
// Overlap results and comparison reports

inline json to_json(const OverlapResult& r) {
    return json{{"p_success", r.p_success}, {"fidelity", r.fidelity},  {"overlap", r.overlap},
                {"raw_fidelity", r.raw_fidelity}, {"shots", r.shots}};
}

inline json to_json(const ComparisonReport& r) {
    json j;
    j["mode"] = r.mode == ComparisonMode::Full ? "full" : "segmented";
    j["protocol"] = protocol_name(r.protocol);
    j["block_dims"] = r.block_dims ? json{r.block_dims->rows, r.block_dims->cols} : json(nullptr);
    j["runs"] = r.runs;
    j["shots"] = r.shots;
    j["n_target_blocks"] = r.target_blocks;
    j["n_reference_blocks"] = r.reference_blocks;
    j["compared_pairs"] = r.compared_pairs();
    j["one_sided_skips"] = r.one_sided_skips();
    if (r.mode == ComparisonMode::Segmented) j["i_avg"] = r.i_avg;
    j["i_mean"] = r.i_mean;
    j["i_std"] = r.i_std;
    j["run_scores"] = r.run_scores;
    json segs = json::array();
    for (const auto& s : r.per_segment) {
        segs.push_back(json{{"block_row", s.block_row},
                            {"block_col", s.block_col},
                            {"target_nonzero", s.target_nonzero},
                            {"reference_nonzero", s.reference_nonzero},
                            {"skipped", s.skipped()},
                            {"first_run", s.skipped() ? json(nullptr) : to_json(s.first_run)},
                            {"mean_overlap", s.mean_overlap}});
    }
    j["per_segment"] = std::move(segs);
    return j;
}

/// One "segment" row per block pair followed by one "summary" row.
inline std::string to_csv(const ComparisonReport& r) {
    std::ostringstream out;
    out << "kind,block_row,block_col,target_nonzero,reference_nonzero,skipped,p_success,fidelity,overlap,"
           "raw_fidelity,mean_overlap,n_target_blocks,n_reference_blocks,one_sided_skips,i_avg,i_mean,i_std,runs,"
           "shots\n";
    for (const auto& s : r.per_segment) {
        out << "segment," << s.block_row << ',' << s.block_col << ',' << s.target_nonzero << ','
            << s.reference_nonzero << ',' << s.skipped() << ',';
        if (s.skipped()) {
            out << ",,,,";
        } else {
            out << fmt_real(s.first_run.p_success) << ',' << fmt_real(s.first_run.fidelity) << ','
                << fmt_real(s.first_run.overlap) << ',' << fmt_real(s.first_run.raw_fidelity) << ',';
        }
        out << fmt_real(s.mean_overlap) << ",,,,,,,,\n";
    }
    out << "summary,,,,,,,,,,," << r.target_blocks << ',' << r.reference_blocks << ',' << r.one_sided_skips() << ','
        << (r.mode == ComparisonMode::Segmented ? fmt_real(r.i_avg) : std::string()) << ',' << fmt_real(r.i_mean)
        << ',' << fmt_real(r.i_std) << ',' << r.runs << ',' << r.shots << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Ranking

inline json to_json(std::span<const RankEntry> ranking, std::span<const std::string> names) {
    json rows = json::array();
    for (std::size_t k = 0; k < ranking.size(); ++k) {
        const auto& e = ranking[k];
        rows.push_back(json{{"rank", k + 1},
                            {"reference_id", e.reference_id},
                            {"name", e.reference_id < names.size() ? names[e.reference_id] : std::string()},
                            {"score", e.score},
                            {"score_std", e.score_std}});
    }
    return json{{"ranking", rows}};
}

inline std::string to_csv(std::span<const RankEntry> ranking, std::span<const std::string> names) {
    std::ostringstream out;
    out << "rank,reference_id,name,score,score_std\n";
    for (std::size_t k = 0; k < ranking.size(); ++k) {
        const auto& e = ranking[k];
        out << k + 1 << ',' << e.reference_id << ','
            << (e.reference_id < names.size() ? names[e.reference_id] : std::string()) << ',' << fmt_real(e.score)
            << ',' << fmt_real(e.score_std) << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Classification

inline json to_json(const ClassificationResult& r) {
    json hist = json::object();
    for (const auto& [bits, p] : r.histogram) hist[bits] = p;
    json labels = json::array();
    for (const auto& s : r.per_label) {
        labels.push_back(json{{"label", s.label},
                              {"joint_success", s.joint_success},
                              {"label_probability", s.label_probability},
                              {"conditional_success", s.conditional_success}});
    }
    return json{{"label_qubits", r.label_qubits},
                {"shots", r.shots},
                {"histogram", hist},
                {"per_label", labels},
                {"winner", r.winner}};
}

/// Joint (label, aux) histogram over every outcome, zero rows included.
inline std::string to_csv(const ClassificationResult& r) {
    std::ostringstream out;
    out << "outcome,label,aux,probability,count\n";
    const std::size_t width = r.label_qubits + 1;
    for (std::uint64_t key = 0; key < (std::uint64_t{1} << width); ++key) {
        const std::string bits = to_bitstring(key, width);
        const auto it = r.histogram.find(bits);
        const auto ct = r.counts.find(bits);
        out << bits << ',' << bits.substr(0, r.label_qubits) << ',' << bits.back() << ','
            << fmt_real(it == r.histogram.end() ? 0.0 : it->second) << ','
            << (r.shots == 0 ? std::string() : std::to_string(ct == r.counts.end() ? 0 : ct->second)) << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// NV curves

inline std::string to_csv(const NvCurve& curve) {
    std::ostringstream out;
    out << "theta,F_sim,F_th\n";
    for (const auto& s : curve.samples) {
        out << fmt_real(s.theta) << ',' << fmt_real(s.fidelity) << ','
            << fmt_real(nv_theoretical_fidelity(s.theta, curve.beta)) << '\n';
    }
    return out.str();
}

inline json to_json(const FitResult& fit, NvBeta beta) {
    return json{{"beta", beta_radians(beta)}, {"a", fit.a}, {"b", fit.b}, {"residual_rms", fit.residual_rms}};
}

// ---------------------------------------------------------------------------

/// Writes `contents` to a sibling temporary file and renames it over `path`.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << contents;
        if (!out.flush()) throw Error("cannot write " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error("cannot move output into place at " + path.string());
    }
}

}  // namespace qoverlap
