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

/// Associative-memory classifier built on the destructive swap test.
///
/// Register layout for n-qubit patterns and L label qubits:
///   target pattern   qubits 0 .. n-1
///   reference slot   qubits n .. 2n-1
///   label            qubits 2n .. 2n+L-1
///   parity (aux)     qubit  2n+L
/// The reference slot and label start in (1/sqrt d) sum_i |phi_i>|label_i>.
/// After CNOT+H on every target/reference pair, one CCNOT per pair copies the
/// AND of the pair into the aux qubit, so aux holds the failure parity of the
/// destructive swap test for whichever reference its branch carries.
/// Measuring (label, aux) gives, per label, the joint success probability
/// P(label, aux = 0).
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qoverlap/error.hpp"
#include "qoverlap/noise.hpp"
#include "qoverlap/overlap.hpp"
#include "qoverlap/statevector.hpp"

namespace qoverlap {

/// Label qubits needed for d references.
constexpr std::size_t label_width(std::size_t d) noexcept {
    return d <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(d - 1));
}

class ReferenceBank {
  public:
    /// Labels default to the binary index of each reference.
    explicit ReferenceBank(std::vector<Statevector> states, std::vector<std::string> labels = {})
        : states_(std::move(states)), labels_(std::move(labels)) {
        if (states_.empty()) throw InvalidArgument("reference bank is empty");
        width_ = label_width(states_.size());
        const std::size_t n = states_.front().n_qubits();
        for (const auto& s : states_) {
            if (s.n_qubits() != n) throw DimensionMismatch("references differ in qubit count");
        }
        if (labels_.empty()) {
            for (std::size_t i = 0; i < states_.size(); ++i) labels_.push_back(to_bitstring(i, width_));
        }
        if (labels_.size() != states_.size()) throw InvalidArgument("one label per reference required");
        std::set<std::string> seen;
        for (const auto& l : labels_) {
            if (l.size() != width_) {
                throw InvalidArgument("label '" + l + "' must have " + std::to_string(width_) + " bits");
            }
            from_bitstring(l);  // validates characters
            if (!seen.insert(l).second) throw InvalidArgument("duplicate label '" + l + "'");
        }
    }

    std::size_t size() const noexcept { return states_.size(); }
    std::size_t pattern_qubits() const noexcept { return states_.front().n_qubits(); }
    std::size_t label_qubits() const noexcept { return width_; }
    const std::vector<Statevector>& states() const noexcept { return states_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

  private:
    std::vector<Statevector> states_;
    std::vector<std::string> labels_;
    std::size_t width_ = 0;
};

/// (1/sqrt d) sum_i |phi_i>|label_i> on n + L qubits (pattern bits low).
inline Statevector build_reference_superposition(const ReferenceBank& bank) {
    const std::size_t n = bank.pattern_qubits();
    const std::size_t patterns = std::size_t{1} << n;
    Amplitudes amps(patterns << bank.label_qubits());
    const double scale = 1.0 / std::sqrt(static_cast<double>(bank.size()));
    for (std::size_t i = 0; i < bank.size(); ++i) {
        const std::size_t base = static_cast<std::size_t>(from_bitstring(bank.labels()[i])) << n;
        const auto phi = bank.states()[i].amplitudes();
        for (std::size_t k = 0; k < patterns; ++k) amps[base | k] = scale * phi[k];
    }
    return Statevector::from_amplitudes(std::move(amps), 1e-9);
}

inline Circuit build_associative_circuit(std::size_t n, std::size_t label_qubits) {
    if (n == 0) throw InvalidArgument("patterns need at least one qubit");
    const std::size_t aux = 2 * n + label_qubits;
    Circuit c(aux + 1);
    for (std::size_t i = 0; i < n; ++i) {
        c.add(Gate::cnot(i, n + i));
        c.add(Gate::h(i));
    }
    for (std::size_t i = 0; i < n; ++i) c.add(Gate::ccnot(i, n + i, aux));
    // aux is the least-significant outcome bit, so outcomes print as label || aux
    std::vector<std::size_t> measured{aux};
    for (std::size_t l = 0; l < label_qubits; ++l) measured.push_back(2 * n + l);
    c.measure(std::move(measured));
    return c;
}

struct LabelScore {
    std::string label;
    /// P(label, aux = 0).
    double joint_success = 0.0;
    /// P(label).
    double label_probability = 0.0;
    /// P(aux = 0 | label); 0 when the label was never observed.
    double conditional_success = 0.0;
};

struct ClassificationResult {
    std::size_t label_qubits = 0;
    /// Joint outcome (label bits then aux bit) -> probability or frequency.
    Distribution histogram;
    /// Raw counts in shot mode; empty in exact mode.
    Counts counts;
    std::uint64_t shots = 0;
    /// Bank order.
    std::vector<LabelScore> per_label;
    std::string winner;
};

inline ClassificationResult classify(const Statevector& target, const ReferenceBank& bank, std::uint64_t shots = 0,
                                     const std::optional<NoiseModel>& noise = std::nullopt, std::uint64_t seed = 0) {
    const std::size_t n = bank.pattern_qubits();
    if (target.n_qubits() != n) {
        throw DimensionMismatch("target has " + std::to_string(target.n_qubits()) + " qubits, references have " +
                                std::to_string(n));
    }
    detail::check_mode(shots, noise);
    const std::size_t width = bank.label_qubits();
    const Circuit circuit = build_associative_circuit(n, width);
    const Statevector initial = Statevector::stack({target, build_reference_superposition(bank), Statevector(1)});

    std::vector<double> p;
    ClassificationResult result;
    result.label_qubits = width;
    result.shots = shots;
    if (shots == 0) {
        p = outcome_distribution(run_circuit(initial, circuit).amplitudes(), circuit.measured());
    } else {
        const auto hist = detail::run_noisy_dense(circuit, initial, detail::shot_model(noise, seed), shots);
        result.counts = detail::to_counts(hist, width + 1);
        p.resize(hist.size());
        for (std::size_t k = 0; k < hist.size(); ++k) p[k] = static_cast<double>(hist[k]) / static_cast<double>(shots);
    }
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] > 0.0) result.histogram.emplace(to_bitstring(k, width + 1), p[k]);
    }

    const LabelScore* best = nullptr;
    for (const auto& label : bank.labels()) {
        const std::size_t key = static_cast<std::size_t>(from_bitstring(label)) << 1;
        LabelScore s{label, p[key], p[key] + p[key | 1], 0.0};
        if (s.label_probability > 0.0) s.conditional_success = s.joint_success / s.label_probability;
        result.per_label.push_back(s);
    }
    for (const auto& s : result.per_label) {
        if (!best || s.joint_success > best->joint_success ||
            (s.joint_success == best->joint_success && s.label < best->label)) {
            best = &s;
        }
    }
    result.winner = best->label;
    return result;
}

}  // namespace qoverlap
