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

#include "qoverlap/associative_memory.hpp"

#include <gtest/gtest.h>

#include "qoverlap/image.hpp"
#include "qoverlap/shapes.hpp"
#include "test_util.hpp"

using namespace qoverlap;
using qoverlap::testing::random_state;

namespace {

const std::vector<std::string> kPaperLabels{"11", "01", "10", "00"};

ReferenceBank pattern_bank() {
    std::vector<Statevector> states;
    for (const auto& img : shapes::two_by_two_patterns()) states.push_back(encode_qpie(img).state);
    return ReferenceBank(states, kPaperLabels);
}

Statevector s1() { return encode_qpie(shapes::two_by_two_patterns()[0]).state; }

}  // namespace

TEST(label_width, values) {
    EXPECT_EQ(label_width(1), 0u);
    EXPECT_EQ(label_width(2), 1u);
    EXPECT_EQ(label_width(4), 2u);
    EXPECT_EQ(label_width(5), 3u);
}

TEST(ReferenceBank, validation) {
    const Statevector a(1);
    EXPECT_THROW(ReferenceBank({}), InvalidArgument);
    EXPECT_THROW(ReferenceBank({a, a}, {"0", "0"}), InvalidArgument);
    EXPECT_THROW(ReferenceBank({a, a}, {"0", "10"}), InvalidArgument);
    EXPECT_THROW(ReferenceBank({a, a}, {"0", "x"}), InvalidArgument);
    EXPECT_THROW(ReferenceBank({a, Statevector(2)}), DimensionMismatch);
    const ReferenceBank b({a, a, a});
    EXPECT_EQ(b.labels(), (std::vector<std::string>{"00", "01", "10"}));
}

TEST(build_reference_superposition, single_reference_is_the_state) {
    std::mt19937_64 g(1);
    const auto phi = random_state(2, g);
    const auto s = build_reference_superposition(ReferenceBank({phi}));
    ASSERT_EQ(s.n_qubits(), 2u);
    EXPECT_LT(qoverlap::testing::max_abs_diff(s.amplitudes(), phi.amplitudes()), 1e-15);
}

TEST(build_reference_superposition, four_pattern_state) {
    const auto bank = pattern_bank();
    const auto s = build_reference_superposition(bank);
    ASSERT_EQ(s.n_qubits(), 4u);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
    // Oracle: sum_i |S_i> (x) |label_i> / 2, label on the high qubits.
    Amplitudes expected(16);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto label = static_cast<std::size_t>(std::stoul(kPaperLabels[i], nullptr, 2));
        for (std::size_t k = 0; k < 4; ++k) expected[label * 4 + k] += 0.5 * bank.states()[i][k];
    }
    EXPECT_LT(qoverlap::testing::max_abs_diff(s.amplitudes(), expected), 1e-15);
}

TEST(build_reference_superposition, random_banks_are_normalized) {
    std::mt19937_64 g(2);
    for (std::size_t d = 1; d <= 7; ++d) {
        std::vector<Statevector> states;
        for (std::size_t i = 0; i < d; ++i) states.push_back(random_state(2, g));
        EXPECT_NEAR(build_reference_superposition(ReferenceBank(states)).norm_squared(), 1.0, 1e-12);
    }
}

TEST(build_associative_circuit, gate_layout) {
    const auto c1 = build_associative_circuit(1, 0);
    ASSERT_EQ(c1.gates().size(), 3u);
    EXPECT_EQ(c1.gates()[0], Gate::cnot(0, 1));
    EXPECT_EQ(c1.gates()[1], Gate::h(0));
    EXPECT_EQ(c1.gates()[2], Gate::ccnot(0, 1, 2));

    const auto c3 = build_associative_circuit(3, 2);
    EXPECT_EQ(c3.n_qubits(), 9u);
    std::map<GateKind, int> kinds;
    for (const auto& gate : c3.gates()) ++kinds[gate.kind()];
    EXPECT_EQ(kinds[GateKind::CNOT], 3);
    EXPECT_EQ(kinds[GateKind::H], 3);
    EXPECT_EQ(kinds[GateKind::CCNOT], 3);
    const std::vector<std::size_t> measured(c3.measured().begin(), c3.measured().end());
    EXPECT_EQ(measured, (std::vector<std::size_t>{8, 6, 7}));
    EXPECT_THROW(build_associative_circuit(0, 1), InvalidArgument);
}

TEST(build_associative_circuit, aux_holds_failure_parity) {
    // The CCNOT stage alone, on every basis input, sets aux to the AND parity.
    for (std::size_t n = 1; n <= 3; ++n) {
        Circuit parity(2 * n + 1);
        const auto full = build_associative_circuit(n, 0);
        for (const auto& gate : full.gates())
            if (gate.kind() == GateKind::CCNOT) parity.add(gate);
        for (std::uint64_t joint = 0; joint < (std::uint64_t{1} << (2 * n)); ++joint) {
            const auto out = run_circuit(Statevector::basis(2 * n + 1, joint), parity);
            const auto psi = to_bitstring(joint & ((1u << n) - 1), n);
            const auto phi = to_bitstring(joint >> n, n);
            const std::uint64_t expected = joint | (std::uint64_t{is_failure_outcome(psi, phi)} << (2 * n));
            EXPECT_NEAR(std::norm(out[expected]), 1.0, 1e-15) << n << " " << joint;
        }
    }
}

TEST(classify, four_pattern_experiment) {
    const auto r = classify(s1(), pattern_bank());
    EXPECT_EQ(r.winner, "11");
    EXPECT_EQ(r.label_qubits, 2u);
    const auto best = std::max_element(r.histogram.begin(), r.histogram.end(),
                                       [](const auto& a, const auto& b) { return a.second < b.second; });
    EXPECT_EQ(best->first, "110");
    EXPECT_NEAR(best->second, 0.25, 1e-12);
    double total = 0.0;
    for (const auto& [k, p] : r.histogram) total += p;
    EXPECT_NEAR(total, 1.0, 1e-10);
    EXPECT_EQ(r.histogram.count("111"), 0u);
}

TEST(classify, conditional_success_matches_standalone_test) {
    const auto bank = pattern_bank();
    const auto r = classify(s1(), bank);
    for (std::size_t i = 0; i < bank.size(); ++i) {
        const auto& s = r.per_label[i];
        EXPECT_EQ(s.label, kPaperLabels[i]);
        EXPECT_NEAR(s.label_probability, 0.25, 1e-12);
        EXPECT_NEAR(s.conditional_success, destructive_swap_test_overlap(s1(), bank.states()[i]).p_success, 1e-10);
    }

    std::mt19937_64 g(9);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + trial % 3, d = 1 + trial % 5;
        const auto target = random_state(n, g);
        std::vector<Statevector> refs;
        for (std::size_t i = 0; i < d; ++i) refs.push_back(random_state(n, g));
        const ReferenceBank rb(refs);
        const auto res = classify(target, rb);
        for (std::size_t i = 0; i < d; ++i) {
            EXPECT_NEAR(res.per_label[i].label_probability, 1.0 / static_cast<double>(d), 1e-12);
            EXPECT_NEAR(res.per_label[i].conditional_success,
                        destructive_swap_test_overlap(target, refs[i]).p_success, 1e-10);
        }
    }
}

TEST(classify, single_reference_never_fails) {
    std::mt19937_64 g(4);
    const auto t = random_state(2, g);
    const auto r = classify(t, ReferenceBank({t}));
    ASSERT_EQ(r.histogram.size(), 1u);
    EXPECT_NEAR(r.histogram.at("0"), 1.0, 1e-12);
    EXPECT_EQ(r.winner, "");
}

TEST(classify, orthogonal_bank_gives_one_half) {
    const auto target = Statevector::basis(2, 0);
    const ReferenceBank bank({Statevector::basis(2, 1), Statevector::basis(2, 2), Statevector::basis(2, 3)});
    const auto r = classify(target, bank);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR(r.per_label[i].conditional_success, 0.5, 1e-12);
        EXPECT_NEAR(r.per_label[i].conditional_success,
                    destructive_swap_test_overlap(target, bank.states()[i]).p_success, 1e-12);
    }
    // equal scores: ascending label wins
    EXPECT_EQ(r.winner, "00");
}

TEST(classify, sampled_and_noisy) {
    const auto bank = pattern_bank();
    const auto r = classify(s1(), bank, 8192, std::nullopt, 5);
    EXPECT_EQ(r.winner, "11");
    std::uint64_t total = 0;
    for (const auto& [k, c] : r.counts) total += c;
    EXPECT_EQ(total, 8192u);
    const NoiseModel m{.p_1q = 0.001, .p_2q = 0.01, .p_3q = 0.02, .readout_r = 0.01, .seed = 1};
    const auto a = classify(s1(), bank, 8192, m, 5), b = classify(s1(), bank, 8192, m, 5);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_EQ(a.winner, "11");
    EXPECT_THROW(classify(s1(), bank, 0, m), InvalidArgument);
    EXPECT_THROW(classify(Statevector(3), bank), DimensionMismatch);
}
