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

// Command-line front end: image comparison, reference ranking, noise sweeps,
// associative-memory classification and the NV fidelity curve.
//
// Exit status: 0 success, 1 malformed input or arguments, 2 dimension or
// undefined-score errors.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qoverlap/io.hpp"
#include "qoverlap/qoverlap.hpp"

namespace {

using namespace qoverlap;

struct CommonOptions {
    std::string protocol = "destructive";
    std::string blocks;
    std::uint64_t shots = 8192;
    std::size_t runs = 100;
    std::uint64_t seed = 0;
    bool exact = false;
    std::string noise_file;
    std::optional<double> binarize;
    bool pad = false;
    std::string out;
    std::string format;
};

void add_sampling_options(CLI::App& cmd, CommonOptions& o) {
    cmd.add_option("--shots", o.shots, "Shots per circuit evaluation")->capture_default_str();
    cmd.add_option("--seed", o.seed, "Seed for sampling and noise")->capture_default_str();
    cmd.add_flag("--exact", o.exact, "Exact probabilities; no sampling and no noise");
    cmd.add_option("--noise", o.noise_file, "Noise model JSON file");
    cmd.add_option("--out", o.out, "Output path (standard output when omitted)");
    cmd.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

void add_image_options(CLI::App& cmd, CommonOptions& o) {
    cmd.add_option("--protocol", o.protocol, "Overlap circuit")
        ->check(CLI::IsMember({"swap", "destructive"}))
        ->capture_default_str();
    cmd.add_option("--blocks", o.blocks, "Segment into RxC blocks and report the average overlap");
    cmd.add_option("--runs", o.runs, "Repetitions for mean and standard deviation")->capture_default_str();
    cmd.add_option("--binarize", o.binarize, "Binarize with this threshold before encoding");
    cmd.add_flag("--pad", o.pad, "Zero-pad to power-of-two dimensions");
}

std::optional<BlockDims> parse_blocks(const std::string& s) {
    if (s.empty()) return std::nullopt;
    const auto x = s.find_first_of("xX");
    try {
        if (x == std::string::npos) throw InvalidArgument("");
        std::size_t used_r = 0, used_c = 0;
        const auto r = std::stoul(s.substr(0, x), &used_r);
        const auto c = std::stoul(s.substr(x + 1), &used_c);
        if (used_r != x || used_c != s.size() - x - 1 || r == 0 || c == 0) throw InvalidArgument("");
        return BlockDims{r, c};
    } catch (const std::exception&) {
        throw InvalidArgument("--blocks expects RxC with positive integers, got '" + s + "'");
    }
}

ComparisonSettings settings_from(const CommonOptions& o) {
    ComparisonSettings s;
    s.protocol = parse_protocol(o.protocol);
    s.shots = o.exact ? 0 : o.shots;
    s.runs = o.runs;
    s.seed = o.seed;
    if (!o.exact && o.shots == 0) throw InvalidArgument("--shots must be positive (use --exact for exact mode)");
    if (o.exact && !o.noise_file.empty()) throw InvalidArgument("--exact cannot be combined with --noise");
    if (!o.noise_file.empty()) s.noise = load_noise_model(o.noise_file);
    s.validate();
    return s;
}

Image prepare(Image img, const CommonOptions& o) {
    if (o.binarize) img = binarize(img, *o.binarize);
    if (o.pad) img = pad_to_pow2(img);
    return img;
}

Image load_prepared(const std::string& path, const CommonOptions& o) { return prepare(load_image(path), o); }

bool wants_json(const CommonOptions& o) {
    if (!o.format.empty()) return o.format == "json";
    return o.out.size() >= 5 && o.out.compare(o.out.size() - 5, 5, ".json") == 0;
}

void emit(const CommonOptions& o, const std::string& contents) {
    if (o.out.empty()) {
        std::cout << contents;
    } else {
        write_file_atomic(o.out, contents);
    }
}

std::string summary_line(const ComparisonReport& r) {
    std::string s = r.mode == ComparisonMode::Segmented ? "i_avg=" + fmt_real(r.i_avg) + " " : "overlap=" + fmt_real(r.i_mean) + " ";
    s += "i_mean=" + fmt_real(r.i_mean) + " i_std=" + fmt_real(r.i_std) + " runs=" + std::to_string(r.runs);
    if (r.mode == ComparisonMode::Segmented) {
        s += " N1=" + std::to_string(r.target_blocks) + " N2=" + std::to_string(r.reference_blocks) +
             " one_sided_skips=" + std::to_string(r.one_sided_skips());
    }
    return s;
}

// --- compare ---------------------------------------------------------------

struct CompareArgs {
    CommonOptions o;
    std::string target;
    std::string reference;
};

void run_compare(const CompareArgs& a) {
    const auto settings = settings_from(a.o);
    const auto blocks = parse_blocks(a.o.blocks);
    const Image target = load_prepared(a.target, a.o);
    const Image reference = load_prepared(a.reference, a.o);
    if (target.rows() != reference.rows() || target.cols() != reference.cols()) {
        throw DimensionMismatch("target is " + std::to_string(target.rows()) + "x" + std::to_string(target.cols()) +
                                ", reference is " + std::to_string(reference.rows()) + "x" +
                                std::to_string(reference.cols()));
    }
    if (target.all_zero() && reference.all_zero()) throw UndefinedScore();
    const auto report = compare_images(target, reference, blocks, settings);
    emit(a.o, wants_json(a.o) ? to_json(report).dump(2) + "\n" : to_csv(report));
    if (!a.o.out.empty()) std::cout << summary_line(report) << '\n';
}

// --- rank ------------------------------------------------------------------

struct RankArgs {
    CommonOptions o;
    std::vector<std::string> paths;
    std::string mnist_idx;
    std::string indices;
    std::optional<std::size_t> target_index;
    std::string target_path;
};

std::vector<std::size_t> parse_indices(const std::string& text) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    auto number = [&](const std::string& t) -> std::size_t {
        std::size_t used = 0;
        unsigned long v;
        try {
            v = std::stoul(t, &used);
        } catch (const std::exception&) {
            throw InvalidArgument("bad index '" + t + "'");
        }
        if (used != t.size()) throw InvalidArgument("bad index '" + t + "'");
        return v;
    };
    while (pos <= text.size()) {
        const auto comma = std::min(text.find(',', pos), text.size());
        const std::string item = text.substr(pos, comma - pos);
        if (item.empty()) throw InvalidArgument("empty entry in --indices");
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(number(item));
        } else {
            const auto lo = number(item.substr(0, dots)), hi = number(item.substr(dots + 2));
            if (hi < lo) throw InvalidArgument("descending range '" + item + "'");
            for (std::size_t k = lo; k <= hi; ++k) out.push_back(k);
        }
        pos = comma + 1;
    }
    return out;
}

void run_rank(const RankArgs& a) {
    const auto settings = settings_from(a.o);
    const auto blocks = parse_blocks(a.o.blocks);
    Image target(1, 1);
    std::vector<Image> refs;
    std::vector<std::string> names;
    if (!a.mnist_idx.empty()) {
        if (a.indices.empty()) throw InvalidArgument("--mnist-idx requires --indices");
        const std::string bytes = detail::read_file(a.mnist_idx);
        const auto idx = parse_indices(a.indices);
        for (auto k : idx) {
            refs.push_back(prepare(parse_idx(bytes, k), a.o));
            names.push_back("idx:" + std::to_string(k));
        }
        if (!a.target_path.empty()) {
            target = load_prepared(a.target_path, a.o);
        } else {
            target = prepare(parse_idx(bytes, a.target_index.value_or(idx.front())), a.o);
        }
        if (!a.paths.empty()) throw InvalidArgument("positional images cannot be mixed with --mnist-idx");
    } else {
        if (a.paths.empty()) throw InvalidArgument("rank needs a target image");
        target = load_prepared(a.paths.front(), a.o);
        for (std::size_t k = 1; k < a.paths.size(); ++k) {
            refs.push_back(load_prepared(a.paths[k], a.o));
            names.push_back(a.paths[k]);
        }
    }
    if (refs.empty()) throw InvalidArgument("reference set is empty");
    const auto ranking = rank_references(target, refs, blocks, settings);
    emit(a.o, wants_json(a.o) ? to_json(ranking, names).dump(2) + "\n" : to_csv(ranking, names));
}

// --- noise-sweep -----------------------------------------------------------

struct SweepArgs {
    CommonOptions o;
    std::string param = "p_gates";
    double start = 0.05;
    double stop = 1.05;
    double step = 0.1;
    std::vector<std::string> paths;
};

void run_sweep(const SweepArgs& a) {
    if (a.o.exact) throw InvalidArgument("noise-sweep needs shot sampling; --exact is not allowed");
    if (!(a.step > 0.0) || !(a.stop >= a.start) || !std::isfinite(a.start) || !std::isfinite(a.stop)) {
        throw InvalidArgument("sweep needs step > 0 and stop >= start");
    }
    CommonOptions base_opts = a.o;
    base_opts.noise_file.clear();
    auto settings = settings_from(base_opts);
    const NoiseModel base = a.o.noise_file.empty() ? NoiseModel{} : load_noise_model(a.o.noise_file);
    const auto blocks = parse_blocks(a.o.blocks);

    Image target = shapes::two_by_two_patterns().front();
    Image reference = target;
    if (a.paths.size() == 1 || a.paths.size() > 2) throw InvalidArgument("noise-sweep takes zero or two images");
    if (a.paths.size() == 2) {
        target = load_prepared(a.paths[0], a.o);
        reference = load_prepared(a.paths[1], a.o);
    }
    const auto count = static_cast<std::size_t>(std::floor((a.stop - a.start) / a.step + 1e-9)) + 1;

    std::string out = wants_json(a.o) ? "" : "param,value,i_mean,i_std,runs,shots\n";
    json rows = json::array();
    for (std::size_t k = 0; k < count; ++k) {
        const double v = a.start + a.step * static_cast<double>(k);
        NoiseModel m = base;
        if (a.param == "p_1q") m.p_1q = v;
        else if (a.param == "p_2q") m.p_2q = v;
        else if (a.param == "p_3q") m.p_3q = v;
        else if (a.param == "p_gates") {
            m.p_1q = m.p_2q = v;
            m.p_3q = std::min(v, max_depolarizing_strength(3));
        } else m.readout_r = v;
        m.validate();
        settings.noise = m;
        settings.seed = derive_seed(a.o.seed, k);
        const auto report = compare_images(target, reference, blocks, settings);
        if (wants_json(a.o)) {
            rows.push_back(json{{"param", a.param}, {"value", v}, {"i_mean", report.score()}, {"i_std", report.i_std},
                                {"runs", report.runs}, {"shots", report.shots}});
        } else {
            out += a.param + "," + fmt_real(v) + "," + fmt_real(report.score()) + "," + fmt_real(report.i_std) + "," +
                   std::to_string(report.runs) + "," + std::to_string(report.shots) + "\n";
        }
    }
    if (wants_json(a.o)) out = json{{"base_noise", to_json(base)}, {"sweep", rows}}.dump(2) + "\n";
    emit(a.o, out);
}

// --- classify --------------------------------------------------------------

struct ClassifyArgs {
    CommonOptions o;
    std::vector<std::string> paths;
    std::string labels;
};

void run_classify(const ClassifyArgs& a) {
    const auto settings = settings_from(a.o);
    if (a.paths.size() < 2) throw InvalidArgument("classify needs a target and at least one reference");
    const Image target = load_prepared(a.paths.front(), a.o);
    std::vector<Statevector> refs;
    for (std::size_t k = 1; k < a.paths.size(); ++k) {
        const Image ref = load_prepared(a.paths[k], a.o);
        if (ref.rows() != target.rows() || ref.cols() != target.cols()) {
            throw DimensionMismatch("reference " + a.paths[k] + " differs in size from the target");
        }
        refs.push_back(encode_qpie(ref).state);
    }
    std::vector<std::string> labels;
    if (!a.labels.empty()) {
        std::size_t pos = 0;
        while (pos <= a.labels.size()) {
            const auto comma = std::min(a.labels.find(',', pos), a.labels.size());
            labels.push_back(a.labels.substr(pos, comma - pos));
            pos = comma + 1;
        }
    }
    const ReferenceBank bank(std::move(refs), std::move(labels));
    const auto result = classify(encode_qpie(target).state, bank, settings.shots, settings.noise, settings.seed);
    emit(a.o, wants_json(a.o) ? to_json(result).dump(2) + "\n" : to_csv(result));
    std::size_t winner = 0;
    while (result.per_label[winner].label != result.winner) ++winner;
    std::cout << "winner label=" << result.winner << " reference=" << a.paths[winner + 1]
              << " joint_success=" << fmt_real(result.per_label[winner].joint_success) << '\n';
}

// --- nv --------------------------------------------------------------------

struct NvArgs {
    CommonOptions o;
    std::string beta = "pi/2";
    std::size_t points = 100;
    double theta_start = 0.0;
    double theta_stop = 2.0 * std::numbers::pi;
    std::string fit_out;
};

NvBeta parse_beta(const std::string& s) {
    if (s == "pi/2") return NvBeta::HalfPi;
    if (s == "3pi/2") return NvBeta::ThreeHalvesPi;
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw InvalidArgument("--beta must be pi/2, 3pi/2 or a number");
    }
    if (used != s.size()) throw InvalidArgument("--beta must be pi/2, 3pi/2 or a number");
    return beta_from_radians(v);
}

void run_nv(const NvArgs& a) {
    const NvBeta beta = parse_beta(a.beta);
    const auto settings = settings_from(a.o);
    if (a.points < 2) throw InvalidArgument("--points must be at least 2");
    const auto curve =
        simulate_nv_curve(beta, a.points, a.theta_start, a.theta_stop, settings.shots, settings.noise, settings.seed);
    const auto fit = fit_linear(curve);
    CommonOptions curve_opts = a.o;
    if (wants_json(a.o)) {
        json rows = json::array();
        for (const auto& s : curve.samples) {
            rows.push_back(json{{"theta", s.theta}, {"F_sim", s.fidelity},
                                {"F_th", nv_theoretical_fidelity(s.theta, beta)}});
        }
        emit(curve_opts, json{{"beta", beta_radians(beta)}, {"curve", rows}, {"fit", to_json(fit, beta)}}.dump(2) + "\n");
    } else {
        emit(curve_opts, to_csv(curve));
    }
    const std::string fit_text = to_json(fit, beta).dump(2) + "\n";
    if (!a.fit_out.empty()) {
        write_file_atomic(a.fit_out, fit_text);
    } else if (!a.o.out.empty()) {
        std::cout << fit_text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum image overlap simulator: swap tests, average overlap, associative memory, NV model"};
    app.require_subcommand(1);

    CompareArgs compare_args;
    auto* compare = app.add_subcommand("compare", "Compare a target image with a reference image");
    add_image_options(*compare, compare_args.o);
    add_sampling_options(*compare, compare_args.o);
    compare->add_option("target", compare_args.target, "Target image (.pgm, .txt)")->required();
    compare->add_option("reference", compare_args.reference, "Reference image")->required();

    RankArgs rank_args;
    auto* rank = app.add_subcommand("rank", "Rank reference images by similarity to a target");
    add_image_options(*rank, rank_args.o);
    add_sampling_options(*rank, rank_args.o);
    rank->add_option("images", rank_args.paths, "Target image followed by reference images");
    rank->add_option("--mnist-idx", rank_args.mnist_idx, "IDX image file supplying the references");
    rank->add_option("--indices", rank_args.indices, "Reference indices, e.g. 0..9 or 1,3,5");
    rank->add_option("--target-index", rank_args.target_index, "IDX index of the target (default: first index)");
    rank->add_option("--target", rank_args.target_path, "Target image file when using --mnist-idx");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("noise-sweep", "Mean overlap versus one noise parameter");
    add_image_options(*sweep, sweep_args.o);
    add_sampling_options(*sweep, sweep_args.o);
    sweep->add_option("--param", sweep_args.param,
                      "Swept parameter; p_gates sets every gate class (p_3q capped at its maximum)")
        ->check(CLI::IsMember({"p_1q", "p_2q", "p_3q", "p_gates", "readout"}))
        ->capture_default_str();
    sweep->add_option("--start", sweep_args.start)->capture_default_str();
    sweep->add_option("--stop", sweep_args.stop)->capture_default_str();
    sweep->add_option("--step", sweep_args.step)->capture_default_str();
    sweep->add_option("images", sweep_args.paths, "Optional target and reference images");

    ClassifyArgs classify_args;
    auto* classify_cmd = app.add_subcommand("classify", "Associative-memory classification of a target");
    add_sampling_options(*classify_cmd, classify_args.o);
    classify_cmd->add_option("--binarize", classify_args.o.binarize, "Binarize with this threshold");
    classify_cmd->add_flag("--pad", classify_args.o.pad, "Zero-pad to power-of-two dimensions");
    classify_cmd->add_option("--labels", classify_args.labels, "Comma-separated label bitstrings, one per reference");
    classify_cmd->add_option("images", classify_args.paths, "Target image followed by reference images")->required();

    NvArgs nv_args;
    auto* nv = app.add_subcommand("nv", "NV fidelity curve F(theta) and linear fit against F_th");
    add_sampling_options(*nv, nv_args.o);
    nv->add_option("--beta", nv_args.beta, "pi/2 or 3pi/2 (radians also accepted)")->capture_default_str();
    nv->add_option("--points", nv_args.points, "Number of angles")->capture_default_str();
    nv->add_option("--theta-start", nv_args.theta_start)->capture_default_str();
    nv->add_option("--theta-stop", nv_args.theta_stop, "Exclusive upper end of the angle grid")->capture_default_str();
    nv->add_option("--fit-out", nv_args.fit_out, "Fit summary JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*compare) run_compare(compare_args);
        if (*rank) run_rank(rank_args);
        if (*sweep) run_sweep(sweep_args);
        if (*classify_cmd) run_classify(classify_args);
        if (*nv) run_nv(nv_args);
    } catch (const DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const UndefinedScore& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
