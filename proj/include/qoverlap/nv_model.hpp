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

/// Single-qubit destructive swap test as run on a two-spin NV register.
///
/// |phi> = H|0> and |psi> = RY(+theta)|0> for beta = pi/2 or RY(-theta)|0>
/// for beta = 3 pi/2, giving F_th = (1 +/- sin theta) / 2. Measured curves are
/// summarized by a least-squares line F = a + b F_th.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qoverlap/error.hpp"
#include "qoverlap/noise.hpp"
#include "qoverlap/overlap.hpp"
#include "qoverlap/statevector.hpp"

namespace qoverlap {

enum class NvBeta { HalfPi, ThreeHalvesPi };

constexpr double beta_radians(NvBeta beta) noexcept {
    return beta == NvBeta::HalfPi ? std::numbers::pi / 2.0 : 3.0 * std::numbers::pi / 2.0;
}

/// Accepts only pi/2 and 3 pi/2 (within 1e-9).
inline NvBeta beta_from_radians(double beta) {
    if (std::abs(beta - std::numbers::pi / 2.0) <= 1e-9) return NvBeta::HalfPi;
    if (std::abs(beta - 3.0 * std::numbers::pi / 2.0) <= 1e-9) return NvBeta::ThreeHalvesPi;
    throw InvalidArgument("beta must be pi/2 or 3pi/2, got " + std::to_string(beta));
}

/// Rotation angle applied by RY to prepare |psi>.
constexpr double nv_rotation(double theta, NvBeta beta) noexcept { return beta == NvBeta::HalfPi ? theta : -theta; }

inline double nv_theoretical_fidelity(double theta, NvBeta beta) {
    const double s = std::sin(theta);
    return 0.5 * (beta == NvBeta::HalfPi ? 1.0 + s : 1.0 - s);
}

inline double nv_theoretical_fidelity(double theta, double beta) {
    return nv_theoretical_fidelity(theta, beta_from_radians(beta));
}

/// State preparation followed by the destructive swap test on two qubits
/// (psi on qubit 0, phi on qubit 1).
inline Circuit build_nv_circuit(double theta, NvBeta beta) {
    Circuit c(2);
    c.add(Gate::ry(0, nv_rotation(theta, beta)));
    c.add(Gate::h(1));
    c.add(Gate::cnot(0, 1));
    c.add(Gate::h(0));
    c.measure(destructive_measurement_order(1));
    return c;
}

/// Fidelity read from one NV point. Preparation gates are part of the
/// circuit, so noise acts on them as well. shots = 0 is exact.
inline double simulate_nv_point(double theta, NvBeta beta, std::uint64_t shots = 0,
                                const std::optional<NoiseModel>& noise = std::nullopt, std::uint64_t seed = 0) {
    detail::check_mode(shots, noise);
    const Circuit circuit = build_nv_circuit(theta, beta);
    const Statevector initial(2);
    auto success = [](std::size_t key) { return !is_failure_joint_key(key, 1); };
    double p_success;
    if (shots == 0) {
        const auto p = outcome_distribution(run_circuit(initial, circuit).amplitudes(), circuit.measured());
        double fail = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (!success(k)) fail += p[k];
        }
        p_success = 1.0 - fail;
    } else {
        const auto hist = detail::run_noisy_dense(circuit, initial, detail::shot_model(noise, seed), shots);
        p_success = detail::success_fraction(hist, success);
    }
    return OverlapResult::from_success_probability(p_success, shots).fidelity;
}

struct NvSample {
    double theta;
    double fidelity;
};

struct NvCurve {
    NvBeta beta = NvBeta::HalfPi;
    std::vector<NvSample> samples;
};

struct FitResult {
    double a = 0.0;
    double b = 0.0;
    double residual_rms = 0.0;
};

/// Ordinary least squares y = a + b x.
inline FitResult fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DimensionMismatch("fit: x and y differ in length");
    if (x.size() < 2) throw InvalidArgument("fit: need at least two samples");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) mx += x[k], my += y[k];
    mx /= n, my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
    }
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    if (!(sxx > 1e-24 * std::max(1.0, scale * scale) * n)) {
        throw InvalidArgument("fit: degenerate design (all abscissae equal)");
    }
    FitResult fit;
    fit.b = sxy / sxx;
    fit.a = my - fit.b * mx;
    double ss = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double r = y[k] - (fit.a + fit.b * x[k]);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

/// Fits measured F against F_th(theta, beta) of each sample.
inline FitResult fit_linear(const NvCurve& curve) {
    std::vector<double> x, y;
    for (const auto& s : curve.samples) {
        if (!std::isfinite(s.theta)) throw InvalidArgument("fit: non-finite theta");
        if (!(s.fidelity >= 0.0 && s.fidelity <= 1.0)) throw InvalidArgument("fit: fidelity outside [0, 1]");
        x.push_back(nv_theoretical_fidelity(s.theta, curve.beta));
        y.push_back(s.fidelity);
    }
    return fit_line(x, y);
}

/// Samples simulate_nv_point on `points` evenly spaced angles in
/// [theta_start, theta_stop). Point k uses seed stream k.
inline NvCurve simulate_nv_curve(NvBeta beta, std::size_t points, double theta_start, double theta_stop,
                                 std::uint64_t shots = 0, const std::optional<NoiseModel>& noise = std::nullopt,
                                 std::uint64_t seed = 0) {
    if (points == 0) throw InvalidArgument("need at least one angle");
    NvCurve curve{beta, std::vector<NvSample>(points)};
    const double step = (theta_stop - theta_start) / static_cast<double>(points);
    parallel_for(points, [&](std::size_t k) {
        const double theta = theta_start + step * static_cast<double>(k);
        curve.samples[k] = NvSample{theta, simulate_nv_point(theta, beta, shots, noise, derive_seed(seed, k))};
    });
    return curve;
}

}  // namespace qoverlap
