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

/// Stochastic gate and readout noise.
///
/// A k-qubit depolarizing channel rho -> (1-p) rho + p I/2^k is realized as a
/// Pauli trajectory: with probability p (4^k - 1)/4^k a uniformly random
/// non-identity Pauli string hits the gate's qubits. Averaging trajectories
/// reproduces the channel.
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qoverlap/error.hpp"
#include "qoverlap/random.hpp"
#include "qoverlap/statevector.hpp"

namespace qoverlap {

/// Upper bound 1 + 1/(d^2 - 1) on the depolarizing strength for a k-qubit
/// support (d = 2^k).
constexpr double max_depolarizing_strength(std::size_t k) noexcept {
    const double d2 = static_cast<double>(std::uint64_t{1} << (2 * k));
    return 1.0 + 1.0 / (d2 - 1.0);
}

struct NoiseModel {
    double p_1q = 0.0;
    double p_2q = 0.0;
    double p_3q = 0.0;
    double readout_r = 0.0;
    std::uint64_t seed = 0;

    double strength_for(std::size_t gate_arity) const {
        switch (gate_arity) {
            case 1: return p_1q;
            case 2: return p_2q;
            case 3: return p_3q;
            default: throw InvalidArgument("no depolarizing strength for gate arity " + std::to_string(gate_arity));
        }
    }

    void validate() const {
        auto check = [](double p, std::size_t k, const char* field) {
            if (!(p >= 0.0 && p <= max_depolarizing_strength(k))) {
                throw InvalidArgument(std::string(field) + " = " + std::to_string(p) + " outside [0, " +
                                      std::to_string(max_depolarizing_strength(k)) + "]");
            }
        };
        check(p_1q, 1, "p_1q");
        check(p_2q, 2, "p_2q");
        check(p_3q, 3, "p_3q");
        if (!(readout_r >= 0.0 && readout_r <= 1.0)) throw InvalidArgument("readout_r outside [0, 1]");
    }

    bool gates_noiseless() const noexcept { return p_1q == 0.0 && p_2q == 0.0 && p_3q == 0.0; }
    bool noiseless() const noexcept { return gates_noiseless() && readout_r == 0.0; }

    friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

namespace detail {

inline void apply_pauli(std::span<Complex> a, std::size_t q, Pauli p) {
    switch (p) {
        case Pauli::I: break;
        case Pauli::X: apply_x(a, q); break;
        case Pauli::Y: apply_y(a, q); break;
        case Pauli::Z: apply_z(a, q); break;
    }
}

/// Applies Pauli string `code` (2 bits per qubit, qubit j of the gate in bits
/// 2j..2j+1) to the gate's qubits.
inline void apply_pauli_string(std::span<Complex> a, std::span<const std::size_t> qubits, std::uint32_t code) {
    for (std::size_t j = 0; j < qubits.size(); ++j) {
        apply_pauli(a, qubits[j], static_cast<Pauli>((code >> (2 * j)) & 3));
    }
}

/// Draws the Pauli string that follows a gate on k qubits: 0 (identity) or
/// a uniform non-identity code in [1, 4^k).
inline std::uint32_t draw_pauli_code(Rng& rng, std::size_t k, double strength) {
    if (strength <= 0.0) return 0;
    const std::uint64_t strings = std::uint64_t{1} << (2 * k);
    const double hit = strength * static_cast<double>(strings - 1) / static_cast<double>(strings);
    if (uniform01(rng) >= hit) return 0;
    return static_cast<std::uint32_t>(1 + uniform_below(rng, strings - 1));
}

inline void check_strength(std::size_t k, double strength) {
    if (!(strength >= 0.0 && strength <= max_depolarizing_strength(k))) {
        throw InvalidArgument("depolarizing strength " + std::to_string(strength) + " outside [0, " +
                              std::to_string(max_depolarizing_strength(k)) + "] for a " + std::to_string(k) +
                              "-qubit gate");
    }
}

inline std::uint64_t flip_bits(std::uint64_t key, std::size_t width, double r, Rng& rng) {
    if (r <= 0.0) return key;
    for (std::size_t j = 0; j < width; ++j) {
        if (uniform01(rng) < r) key ^= std::uint64_t{1} << j;
    }
    return key;
}

}  // namespace detail

/// One depolarizing trajectory step on the gate's qubits.
inline Statevector depolarize_after_gate(Statevector state, const Gate& gate, double strength, Rng& rng) {
    gate.validate(state.n_qubits());
    detail::check_strength(gate.arity(), strength);
    const auto code = detail::draw_pauli_code(rng, gate.arity(), strength);
    if (code != 0) detail::apply_pauli_string(detail::StateAccess::amps(state), gate.qubits(), code);
    return state;
}

/// Flips every bit of every recorded shot independently with probability r.
/// All bitstrings in `counts` must have the same length.
inline Counts apply_readout_error(const Counts& counts, double r, Rng& rng) {
    if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument("readout error r outside [0, 1]");
    if (counts.empty()) return {};
    const std::size_t width = counts.begin()->first.size();
    if (r == 0.0) return counts;
    std::map<std::uint64_t, std::uint64_t> flipped;
    for (const auto& [bits, n] : counts) {
        if (bits.size() != width) throw InvalidArgument("bitstrings of unequal length");
        const auto key = from_bitstring(bits);
        for (std::uint64_t s = 0; s < n; ++s) ++flipped[detail::flip_bits(key, width, r, rng)];
    }
    Counts out;
    for (const auto& [key, n] : flipped) out.emplace(to_bitstring(key, width), n);
    return out;
}

namespace detail {

inline constexpr std::uint64_t kShotsPerChunk = 1024;

/// Dense outcome histogram of a noisy run (indexed by outcome key).
inline std::vector<std::uint64_t> run_noisy_dense(const Circuit& circuit, const Statevector& initial,
                                                  const NoiseModel& model, std::uint64_t shots) {
    model.validate();
    if (shots == 0) throw InvalidArgument("shots must be positive");
    if (initial.n_qubits() != circuit.n_qubits()) {
        throw DimensionMismatch("initial state and circuit have different qubit counts");
    }
    const auto measured = circuit.measured();
    const auto gates = circuit.gates();
    const std::size_t width = measured.size();
    const std::size_t outcomes = std::size_t{1} << width;

    std::vector<double> strengths(gates.size());
    for (std::size_t g = 0; g < gates.size(); ++g) strengths[g] = model.strength_for(gates[g].arity());

    const Statevector ideal = run_circuit(initial, circuit);
    const OutcomeSampler ideal_sampler(outcome_distribution(ideal.amplitudes(), measured));

    const std::uint64_t chunks = (shots + kShotsPerChunk - 1) / kShotsPerChunk;
    std::vector<std::vector<std::uint64_t>> partial(chunks);
    const std::size_t cache_limit = std::max<std::size_t>(16, (std::size_t{1} << 22) / initial.dimension());

    parallel_for(chunks, [&](std::size_t c) {
        Rng rng(derive_seed(model.seed, c));
        std::vector<std::uint64_t> hist(outcomes, 0);
        // Trajectories are identified by their (gate index, Pauli code) hits.
        std::map<std::vector<std::uint32_t>, OutcomeSampler> cache;
        std::vector<std::uint32_t> hits;
        Amplitudes work;
        const std::uint64_t begin = c * kShotsPerChunk;
        const std::uint64_t end = std::min(shots, begin + kShotsPerChunk);
        for (std::uint64_t s = begin; s < end; ++s) {
            hits.clear();
            for (std::size_t g = 0; g < gates.size(); ++g) {
                if (const auto code = draw_pauli_code(rng, gates[g].arity(), strengths[g])) {
                    hits.push_back(static_cast<std::uint32_t>(g));
                    hits.push_back(code);
                }
            }
            std::uint64_t key;
            if (hits.empty()) {
                key = ideal_sampler(rng);
            } else {
                auto it = cache.find(hits);
                if (it == cache.end()) {
                    work.assign(initial.amplitudes().begin(), initial.amplitudes().end());
                    std::size_t h = 0;
                    for (std::size_t g = 0; g < gates.size(); ++g) {
                        apply_unchecked(work, gates[g]);
                        if (h < hits.size() && hits[h] == g) {
                            apply_pauli_string(work, gates[g].qubits(), hits[h + 1]);
                            h += 2;
                        }
                    }
                    OutcomeSampler sampler(outcome_distribution(work, measured));
                    if (cache.size() < cache_limit) {
                        it = cache.emplace(hits, std::move(sampler)).first;
                        key = it->second(rng);
                    } else {
                        key = sampler(rng);
                    }
                } else {
                    key = it->second(rng);
                }
            }
            ++hist[flip_bits(key, width, model.readout_r, rng)];
        }
        partial[c] = std::move(hist);
    });

    std::vector<std::uint64_t> total(outcomes, 0);
    for (const auto& hist : partial) {
        for (std::size_t k = 0; k < outcomes; ++k) total[k] += hist[k];
    }
    return total;
}

}  // namespace detail

/// Shot-by-shot noisy execution: each shot follows its own Pauli trajectory,
/// is measured by the Born rule over circuit.measured(), then has its readout
/// bits flipped. Deterministic for a given model.seed, independent of the
/// number of worker threads.
inline Counts run_noisy(const Circuit& circuit, const Statevector& initial, const NoiseModel& model,
                        std::uint64_t shots) {
    const auto dense = detail::run_noisy_dense(circuit, initial, model, shots);
    return detail::to_counts(dense, circuit.measured().size());
}

}  // namespace qoverlap
