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

// Four 2x2 patterns held in superposition; the target is the first pattern.

#include <cstdio>

#include "qoverlap/qoverlap.hpp"

int main() {
    using namespace qoverlap;
    std::vector<Statevector> refs;
    for (const auto& img : shapes::two_by_two_patterns()) refs.push_back(encode_qpie(img).state);
    const ReferenceBank bank(refs, {"11", "01", "10", "00"});

    const auto exact = classify(refs[0], bank);
    std::printf("outcome  exact    8192 shots (noisy)\n");
    const NoiseModel noise{.p_1q = 0.005, .p_2q = 0.02, .p_3q = 0.03, .readout_r = 0.01, .seed = 1};
    const auto noisy = classify(refs[0], bank, 8192, noise, 2);
    for (std::uint64_t key = 0; key < 8; ++key) {
        const auto bits = to_bitstring(key, 3);
        const auto e = exact.histogram.find(bits);
        const auto n = noisy.histogram.find(bits);
        std::printf("%s      %.4f   %.4f\n", bits.c_str(), e == exact.histogram.end() ? 0.0 : e->second,
                    n == noisy.histogram.end() ? 0.0 : n->second);
    }
    std::printf("\nlabel  P(label,aux=0)  P(aux=0|label)\n");
    for (const auto& s : exact.per_label) {
        std::printf("%s     %.4f          %.4f\n", s.label.c_str(), s.joint_success, s.conditional_success);
    }
    std::printf("winner: %s (noisy run: %s)\n", exact.winner.c_str(), noisy.winner.c_str());
}
