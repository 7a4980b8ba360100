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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qoverlap/statevector.hpp"

namespace qoverlap::testing {

/// Haar-random pure state: normalized complex Gaussian vector.
inline Statevector random_state(std::size_t n_qubits, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Amplitudes a(std::size_t{1} << n_qubits);
    for (auto& x : a) x = Complex(g(rng), g(rng));
    return Statevector::normalized(std::move(a));
}

/// Direct |<a|b>|^2 from the amplitude vectors.
inline double inner_product_fidelity(const Statevector& a, const Statevector& b) {
    Complex s{};
    for (std::size_t i = 0; i < a.dimension(); ++i) s += std::conj(a[i]) * b[i];
    return std::norm(s);
}

/// Applies a k-qubit matrix (local bit j <-> qubits[j]) to a full state by
/// explicit index gathering. Independent of the specialized kernels.
inline Amplitudes apply_dense(const std::vector<Complex>& m, const std::vector<std::size_t>& qubits,
                              const Amplitudes& in) {
    const std::size_t k = qubits.size();
    const std::size_t dim = std::size_t{1} << k;
    Amplitudes out(in.size());
    for (std::size_t idx = 0; idx < in.size(); ++idx) {
        std::size_t local = 0;
        for (std::size_t j = 0; j < k; ++j) local |= ((idx >> qubits[j]) & 1) << j;
        for (std::size_t col = 0; col < dim; ++col) {
            std::size_t src = idx;
            for (std::size_t j = 0; j < k; ++j) {
                src &= ~(std::size_t{1} << qubits[j]);
                src |= ((col >> j) & 1) << qubits[j];
            }
            out[idx] += m[local * dim + col] * in[src];
        }
    }
    return out;
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

/// Odd parity of the bitwise AND of two equal-length bit strings, by hand.
inline bool odd_and_parity(const std::string& a, const std::string& b) {
    int ones = 0;
    for (std::size_t i = 0; i < a.size(); ++i) ones += (a[i] == '1' && b[i] == '1');
    return ones % 2 == 1;
}

/// Binomial standard deviation of an estimated proportion.
inline double binomial_sigma(double p, std::uint64_t n) { return std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

}  // namespace qoverlap::testing
