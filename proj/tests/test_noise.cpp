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

#include "qoverlap/noise.hpp"

#include <gtest/gtest.h>

#include <array>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <cstdlib>

#include "qoverlap/overlap.hpp"
#include "test_util.hpp"

using namespace qoverlap;
using qoverlap::testing::random_state;

namespace {

std::array<double, 3> bloch(const Statevector& s) {
    const Complex c = std::conj(s[0]) * s[1];
    return {2.0 * c.real(), 2.0 * c.imag(), std::norm(s[0]) - std::norm(s[1])};
}

using Matrix = std::vector<Complex>;  // row-major, dim x dim

Matrix density(const Statevector& s) {
    const std::size_t d = s.dimension();
    Matrix rho(d * d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) rho[r * d + c] = s[r] * std::conj(s[c]);
    }
    return rho;
}

// Pauli string on `k` qubits as a state map, via the library's kernel.
Statevector apply_code(const Statevector& s, std::size_t k, std::uint32_t code) {
    Amplitudes a(s.amplitudes().begin(), s.amplitudes().end());
    std::vector<std::size_t> qubits(k);
    std::iota(qubits.begin(), qubits.end(), 0);
    detail::apply_pauli_string(a, qubits, code);
    return Statevector::from_amplitudes(std::move(a));
}

}  // namespace

TEST(noise_model, bounds) {
    EXPECT_DOUBLE_EQ(max_depolarizing_strength(1), 4.0 / 3.0);
    EXPECT_DOUBLE_EQ(max_depolarizing_strength(2), 16.0 / 15.0);
    EXPECT_DOUBLE_EQ(max_depolarizing_strength(3), 64.0 / 63.0);
    NoiseModel ok{.p_1q = 4.0 / 3.0, .p_2q = 16.0 / 15.0, .p_3q = 64.0 / 63.0, .readout_r = 1.0};
    EXPECT_NO_THROW(ok.validate());
    EXPECT_THROW((NoiseModel{.p_1q = 1.34}).validate(), InvalidArgument);
    EXPECT_THROW((NoiseModel{.p_2q = 1.07}).validate(), InvalidArgument);
    EXPECT_THROW((NoiseModel{.p_3q = -0.1}).validate(), InvalidArgument);
    EXPECT_THROW((NoiseModel{.readout_r = 1.5}).validate(), InvalidArgument);
}

TEST(depolarize_after_gate, zero_strength_leaves_state) {
    std::mt19937_64 g(1);
    const auto s = random_state(2, g);
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto out = depolarize_after_gate(s, Gate::cnot(0, 1), 0.0, rng);
        EXPECT_EQ(qoverlap::testing::max_abs_diff(s.amplitudes(), out.amplitudes()), 0.0);
    }
}

TEST(depolarize_after_gate, rejects_out_of_bound_strength) {
    Rng rng(1);
    EXPECT_THROW(depolarize_after_gate(Statevector(1), Gate::h(0), 1.34, rng), InvalidArgument);
    EXPECT_THROW(depolarize_after_gate(Statevector(2), Gate::cnot(0, 1), 1.07, rng), InvalidArgument);
    EXPECT_THROW(depolarize_after_gate(Statevector(1), Gate::h(0), -0.01, rng), InvalidArgument);
}

TEST(depolarize_after_gate, output_is_in_pauli_orbit) {
    const Statevector zero(1);
    const std::array<Statevector, 4> orbit{apply_code(zero, 1, 0), apply_code(zero, 1, 1), apply_code(zero, 1, 2),
                                           apply_code(zero, 1, 3)};
    Rng rng(77);
    for (int i = 0; i < 500; ++i) {
        const auto out = depolarize_after_gate(zero, Gate::h(0), 0.9, rng);
        bool found = false;
        for (const auto& o : orbit) found = found || std::abs(out.fidelity(o) - 1.0) < 1e-12;
        EXPECT_TRUE(found);
    }
}

TEST(depolarize_after_gate, unit_strength_fully_mixes) {
    std::mt19937_64 g(2);
    const auto in = random_state(1, g);
    Rng rng(3);
    std::array<double, 3> mean{};
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const auto b = bloch(depolarize_after_gate(in, Gate::ry(0, 0.3), 1.0, rng));
        for (int c = 0; c < 3; ++c) mean[c] += b[c] / n;
    }
    EXPECT_LT(std::hypot(mean[0], mean[1], mean[2]), 0.05);
}

// At the upper bound 4/3 the map is rho -> -rho/3 + 2I/3: every draw is a
// non-identity Pauli and the Bloch vector inverts to -r/3.
TEST(depolarize_after_gate, maximal_strength_inverts_and_shrinks) {
    const Statevector zero(1);
    Rng rng(3);
    std::array<double, 3> mean{};
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const auto b = bloch(depolarize_after_gate(zero, Gate::h(0), 4.0 / 3.0, rng));
        EXPECT_NEAR(std::abs(b[2]), 1.0, 1e-12);
        for (int c = 0; c < 3; ++c) mean[c] += b[c] / n;
    }
    // z = +1 only under Z (prob 1/3): mean = 1/3 - 2/3, sigma ~ 0.0094
    EXPECT_NEAR(mean[2], -1.0 / 3.0, 0.03);
}

// Exact channel algebra: weighting each Pauli string by its draw probability
// reproduces (1 - p) rho + p I / 2^k.
TEST(depolarize_after_gate, trajectory_weights_reproduce_channel_exactly) {
    std::mt19937_64 g(4);
    for (std::size_t k : {1u, 2u}) {
        const std::size_t d = std::size_t{1} << k;
        const std::uint32_t strings = static_cast<std::uint32_t>(d * d);
        for (double p : {0.1, 0.5, 1.0, max_depolarizing_strength(k)}) {
            const auto s = random_state(k, g);
            const auto rho = density(s);
            Matrix avg(d * d);
            const double hit = p * (strings - 1) / strings;
            for (std::uint32_t code = 0; code < strings; ++code) {
                const double w = code == 0 ? 1.0 - hit : hit / (strings - 1);
                const auto r = density(apply_code(s, k, code));
                for (std::size_t e = 0; e < d * d; ++e) avg[e] += w * r[e];
            }
            for (std::size_t r = 0; r < d; ++r) {
                for (std::size_t c = 0; c < d; ++c) {
                    const Complex expected = (1.0 - p) * rho[r * d + c] + (r == c ? p / d : 0.0);
                    EXPECT_NEAR(std::abs(avg[r * d + c] - expected), 0.0, 1e-12) << "k=" << k << " p=" << p;
                }
            }
        }
    }
}

TEST(depolarize_after_gate, sampled_bloch_vector_shrinks_by_one_minus_p) {
    std::mt19937_64 g(8);
    const int n = 100000;
    int checks = 0, within = 0;
    for (int state = 0; state < 20; ++state) {
        const auto in = random_state(1, g);
        const auto r0 = bloch(in);
        for (double p : {0.1, 0.5, 1.0}) {
            Rng rng(derive_seed(99, state, static_cast<std::uint64_t>(p * 10)));
            std::array<double, 3> sum{}, sumsq{};
            for (int i = 0; i < n; ++i) {
                const auto b = bloch(depolarize_after_gate(in, Gate::h(0), p, rng));
                for (int c = 0; c < 3; ++c) sum[c] += b[c], sumsq[c] += b[c] * b[c];
            }
            for (int c = 0; c < 3; ++c) {
                const double mean = sum[c] / n;
                const double var = sumsq[c] / n - mean * mean;
                const double sigma = std::sqrt(var / n);
                ++checks;
                within += std::abs(mean - (1.0 - p) * r0[c]) <= 3.0 * sigma + 1e-12;
            }
        }
    }
    // 3-sigma coverage is 99.73% per check; allow the expected handful of misses.
    EXPECT_GE(within, checks - 3) << within << "/" << checks;
}

TEST(apply_readout_error, limits) {
    Rng rng(1);
    const Counts counts{{"00", 10}, {"01", 5}, {"11", 3}};
    EXPECT_EQ(apply_readout_error(counts, 0.0, rng), counts);
    const Counts flipped{{"11", 10}, {"10", 5}, {"00", 3}};
    EXPECT_EQ(apply_readout_error(counts, 1.0, rng), flipped);
    EXPECT_THROW(apply_readout_error(counts, 1.1, rng), InvalidArgument);
}

TEST(apply_readout_error, one_percent_flip_rate) {
    Rng rng(2);
    const auto out = apply_readout_error(Counts{{"0", 10000}}, 0.01, rng);
    const double f = static_cast<double>(out.count("1") ? out.at("1") : 0) / 10000.0;
    EXPECT_LE(std::abs(f - 0.01), 3.0 * qoverlap::testing::binomial_sigma(0.01, 10000));
    EXPECT_EQ(out.at("0") + out.at("1"), 10000u);
}

TEST(apply_readout_error, composition_matches_combined_rate) {
    const double r1 = 0.1, r2 = 0.25, r = r1 + r2 - 2 * r1 * r2;
    const std::uint64_t n = 200000;
    Rng a(3), b(4);
    const auto twice = apply_readout_error(apply_readout_error(Counts{{"00", n}}, r1, a), r2, a);
    const auto once = apply_readout_error(Counts{{"00", n}}, r, b);
    for (const std::string bits : {"00", "01", "10", "11"}) {
        const int ones = (bits[0] == '1') + (bits[1] == '1');
        const double expected = std::pow(r, ones) * std::pow(1 - r, 2 - ones);
        const double tol = 3.0 * qoverlap::testing::binomial_sigma(expected, n);
        EXPECT_NEAR(static_cast<double>(twice.at(bits)) / n, expected, tol) << bits;
        EXPECT_NEAR(static_cast<double>(once.at(bits)) / n, expected, tol) << bits;
    }
}

TEST(run_noisy, zero_noise_matches_ideal_distribution) {
    std::mt19937_64 g(12);
    const auto psi = random_state(2, g), phi = random_state(2, g);
    const auto circuit = build_destructive_swap_test(2);
    const auto initial = Statevector::stack({psi, phi});
    const auto ideal = outcome_distribution(run_circuit(initial, circuit).amplitudes(), circuit.measured());
    const std::uint64_t shots = 100000;
    const auto counts = run_noisy(circuit, initial, NoiseModel{.seed = 5}, shots);
    double chi2 = 0.0;
    int df = -1;
    for (std::size_t k = 0; k < ideal.size(); ++k) {
        if (ideal[k] < 1e-12) continue;
        const auto it = counts.find(to_bitstring(k, 4));
        const double observed = it == counts.end() ? 0.0 : static_cast<double>(it->second);
        const double expected = ideal[k] * shots;
        chi2 += (observed - expected) * (observed - expected) / expected;
        ++df;
    }
    const double critical = boost::math::quantile(boost::math::complement(boost::math::chi_squared(df), 0.001));
    EXPECT_LT(chi2, critical);
}

TEST(run_noisy, deterministic_and_thread_independent) {
    std::mt19937_64 g(13);
    const auto initial = Statevector::stack({random_state(2, g), random_state(2, g)});
    const auto circuit = build_destructive_swap_test(2);
    const NoiseModel m{.p_1q = 0.05, .p_2q = 0.2, .readout_r = 0.02, .seed = 17};
    setenv("QOVERLAP_THREADS", "1", 1);
    const auto serial = run_noisy(circuit, initial, m, 20000);
    setenv("QOVERLAP_THREADS", "4", 1);
    const auto parallel = run_noisy(circuit, initial, m, 20000);
    unsetenv("QOVERLAP_THREADS");
    EXPECT_EQ(serial, parallel);
    std::uint64_t total = 0;
    for (const auto& [_, n] : serial) total += n;
    EXPECT_EQ(total, 20000u);
    NoiseModel other = m;
    other.seed = 18;
    EXPECT_NE(serial, run_noisy(circuit, initial, other, 20000));
}

TEST(run_noisy, errors) {
    const auto circuit = build_destructive_swap_test(1);
    EXPECT_THROW(run_noisy(circuit, Statevector(2), NoiseModel{}, 0), InvalidArgument);
    EXPECT_THROW(run_noisy(circuit, Statevector(3), NoiseModel{}, 10), DimensionMismatch);
    EXPECT_THROW(run_noisy(circuit, Statevector(2), NoiseModel{.p_1q = 2.0}, 10), InvalidArgument);
}
