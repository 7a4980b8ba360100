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

/// Fidelity estimation between two pure states.
///
/// Two circuits estimate |<psi|phi>|^2 from a success probability P(0):
///  - the ancilla swap test (ancilla qubit 0, psi on 1..n, phi on n+1..2n),
///    where P(0) is the ancilla's probability of reading 0;
///  - the destructive swap test (psi on 0..n-1, phi on n..2n-1), where every
///    qubit is read and an outcome fails when the bitwise AND of the psi and
///    phi readouts has odd weight.
/// Both give F = 2 P(0) - 1 and overlap I = sqrt(F).
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string_view>
#include <vector>

#include "qoverlap/error.hpp"
#include "qoverlap/noise.hpp"
#include "qoverlap/statevector.hpp"

namespace qoverlap {

enum class Protocol { Swap, Destructive };

struct OverlapResult {
    double p_success = 0.0;
    double fidelity = 0.0;
    double overlap = 0.0;
    /// 2 P(0) - 1 before clamping; negative values only arise from noise or
    /// sampling error.
    double raw_fidelity = 0.0;
    /// 0 for exact evaluation.
    std::uint64_t shots = 0;

    static OverlapResult from_success_probability(double p_success, std::uint64_t shots) {
        OverlapResult r;
        r.p_success = p_success;
        r.raw_fidelity = 2.0 * p_success - 1.0;
        r.fidelity = std::clamp(r.raw_fidelity, 0.0, 1.0);
        r.overlap = std::sqrt(r.fidelity);
        r.shots = shots;
        return r;
    }
};

/// Ancilla swap test on 2n+1 qubits; measures the ancilla (qubit 0).
inline Circuit build_swap_test(std::size_t n) {
    if (n == 0) throw InvalidArgument("swap test needs at least one qubit per state");
    Circuit c(2 * n + 1);
    c.add(Gate::h(0));
    for (std::size_t i = 0; i < n; ++i) c.add(Gate::cswap(0, 1 + i, 1 + n + i));
    c.add(Gate::h(0));
    c.measure({0});
    return c;
}

/// Qubits read by the destructive test, ordered so that the joint bitstring
/// prints as O^psi followed by O^phi.
inline std::vector<std::size_t> destructive_measurement_order(std::size_t n) {
    std::vector<std::size_t> order(2 * n);
    std::iota(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), n);  // phi: low key bits
    std::iota(order.begin() + static_cast<std::ptrdiff_t>(n), order.end(), 0);    // psi: high key bits
    return order;
}

/// Destructive swap test on 2n qubits: CNOT(psi_i -> phi_i), H(psi_i) per
/// pair; all qubits measured.
inline Circuit build_destructive_swap_test(std::size_t n) {
    if (n == 0) throw InvalidArgument("destructive swap test needs at least one qubit per state");
    Circuit c(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        c.add(Gate::cnot(i, n + i));
        c.add(Gate::h(i));
    }
    c.measure(destructive_measurement_order(n));
    return c;
}

/// Failure test on outcome keys: odd weight of the pairwise AND.
constexpr bool is_failure_key(std::uint64_t o_psi, std::uint64_t o_phi) noexcept {
    return (std::popcount(o_psi & o_phi) & 1) != 0;
}

/// Failure test on the two readout strings of a destructive swap test.
inline bool is_failure_outcome(std::string_view o_psi, std::string_view o_phi) {
    if (o_psi.size() != o_phi.size()) throw InvalidArgument("readout strings differ in length");
    return is_failure_key(from_bitstring(o_psi), from_bitstring(o_phi));
}

/// Failure test on a joint key produced by build_destructive_swap_test.
constexpr bool is_failure_joint_key(std::uint64_t key, std::size_t n) noexcept {
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    return is_failure_key(key >> n, key & mask);
}

namespace detail {

inline void check_pair(const Statevector& psi, const Statevector& phi) {
    if (psi.n_qubits() != phi.n_qubits()) {
        throw DimensionMismatch("states have " + std::to_string(psi.n_qubits()) + " and " +
                                std::to_string(phi.n_qubits()) + " qubits");
    }
    if (psi.n_qubits() == 0) throw InvalidArgument("states need at least one qubit");
}

/// The model a shot-mode run should use: the supplied noise with its seed
/// mixed with the call seed, or a noiseless model seeded by the call seed.
inline NoiseModel shot_model(const std::optional<NoiseModel>& noise, std::uint64_t seed) {
    if (!noise) return NoiseModel{.seed = seed};
    NoiseModel m = *noise;
    m.seed = derive_seed(noise->seed, seed);
    return m;
}

inline void check_mode(std::uint64_t shots, const std::optional<NoiseModel>& noise) {
    if (shots == 0 && noise) throw InvalidArgument("exact mode (shots = 0) cannot be combined with noise");
}

inline double success_fraction(std::span<const std::uint64_t> hist, auto&& is_success) {
    std::uint64_t ok = 0, total = 0;
    for (std::size_t k = 0; k < hist.size(); ++k) {
        total += hist[k];
        if (is_success(k)) ok += hist[k];
    }
    return static_cast<double>(ok) / static_cast<double>(total);
}

}  // namespace detail

/// Ancilla swap test. shots = 0 evaluates P(0) exactly (noise must be absent).
inline OverlapResult swap_test_overlap(const Statevector& psi, const Statevector& phi, std::uint64_t shots = 0,
                                       const std::optional<NoiseModel>& noise = std::nullopt,
                                       std::uint64_t seed = 0) {
    detail::check_pair(psi, phi);
    detail::check_mode(shots, noise);
    const Circuit circuit = build_swap_test(psi.n_qubits());
    const Statevector initial = Statevector::stack({Statevector(1), psi, phi});
    if (shots == 0) {
        const auto p = outcome_distribution(run_circuit(initial, circuit).amplitudes(), circuit.measured());
        return OverlapResult::from_success_probability(std::min(1.0, p[0]), 0);
    }
    const auto hist = detail::run_noisy_dense(circuit, initial, detail::shot_model(noise, seed), shots);
    return OverlapResult::from_success_probability(detail::success_fraction(hist, [](std::size_t k) { return k == 0; }),
                                                   shots);
}

/// Destructive swap test. shots = 0 evaluates the failure mass exactly.
inline OverlapResult destructive_swap_test_overlap(const Statevector& psi, const Statevector& phi,
                                                   std::uint64_t shots = 0,
                                                   const std::optional<NoiseModel>& noise = std::nullopt,
                                                   std::uint64_t seed = 0) {
    detail::check_pair(psi, phi);
    detail::check_mode(shots, noise);
    const std::size_t n = psi.n_qubits();
    const Circuit circuit = build_destructive_swap_test(n);
    const Statevector initial = Statevector::stack({psi, phi});
    auto success = [n](std::size_t key) { return !is_failure_joint_key(key, n); };
    if (shots == 0) {
        const auto p = outcome_distribution(run_circuit(initial, circuit).amplitudes(), circuit.measured());
        double failure = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (!success(k)) failure += p[k];
        }
        return OverlapResult::from_success_probability(std::clamp(1.0 - failure, 0.0, 1.0), 0);
    }
    const auto hist = detail::run_noisy_dense(circuit, initial, detail::shot_model(noise, seed), shots);
    return OverlapResult::from_success_probability(detail::success_fraction(hist, success), shots);
}

inline OverlapResult estimate_overlap(Protocol protocol, const Statevector& psi, const Statevector& phi,
                                      std::uint64_t shots = 0,
                                      const std::optional<NoiseModel>& noise = std::nullopt,
                                      std::uint64_t seed = 0) {
    return protocol == Protocol::Swap ? swap_test_overlap(psi, phi, shots, noise, seed)
                                      : destructive_swap_test_overlap(psi, phi, shots, noise, seed);
}

}  // namespace qoverlap
