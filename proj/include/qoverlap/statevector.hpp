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

/// Dense statevector simulation of the gate set used by the overlap circuits.
///
/// Conventions used throughout the library:
///  - qubit 0 is the least-significant bit of a basis-state index;
///  - a measurement over qubits {m_0, m_1, ..., m_{k-1}} yields an outcome key
///    whose bit j is the value of qubit m_j, and the outcome is printed as a
///    bitstring with m_{k-1} first (most-significant first);
///  - RY(theta) = exp(-i theta sigma_y / 2).
#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qoverlap/error.hpp"
#include "qoverlap/random.hpp"

namespace qoverlap {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

/// Outcome histogram keyed by bitstring.
using Counts = std::map<std::string, std::uint64_t>;
/// Outcome distribution keyed by bitstring.
using Distribution = std::map<std::string, double>;

inline constexpr std::size_t kMaxQubits = 30;

namespace detail {
struct StateAccess;
}

/// Pure state of n qubits as 2^n complex amplitudes. Immutable once built;
/// gate application returns a new state.
class Statevector {
  public:
    /// |0...0> on n qubits.
    explicit Statevector(std::size_t n_qubits) : n_(checked_width(n_qubits)), amps_(std::size_t{1} << n_) {
        amps_[0] = 1.0;
    }

    /// Computational basis state |index>.
    static Statevector basis(std::size_t n_qubits, std::uint64_t index) {
        Statevector s(n_qubits);
        if (index >= s.dimension()) throw InvalidArgument("basis index out of range");
        s.amps_[0] = 0.0;
        s.amps_[index] = 1.0;
        return s;
    }

    /// Takes amplitudes that must already have unit norm (within `tolerance`).
    static Statevector from_amplitudes(Amplitudes amps, double tolerance = 1e-10) {
        const std::size_t n = width_of(amps.size());
        Statevector s(n, std::move(amps));
        if (std::abs(s.norm_squared() - 1.0) > tolerance) {
            throw InvalidArgument("amplitudes are not normalized");
        }
        return s;
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    static Statevector normalized(Amplitudes amps) {
        const std::size_t n = width_of(amps.size());
        Statevector s(n, std::move(amps));
        const double norm = std::sqrt(s.norm_squared());
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw InvalidArgument("cannot normalize a zero or non-finite vector");
        }
        for (auto& a : s.amps_) a /= norm;
        return s;
    }

    /// Product state of several registers. parts[0] occupies the lowest qubit
    /// indices, parts[1] the next block, and so on.
    static Statevector stack(std::span<const Statevector> parts) {
        if (parts.empty()) throw InvalidArgument("stack of zero registers");
        Amplitudes acc{Complex{1.0}};
        std::size_t width = 0;
        for (const auto& part : parts) {
            Amplitudes next(acc.size() * part.dimension());
            for (std::size_t hi = 0; hi < part.dimension(); ++hi) {
                const Complex a = part.amps_[hi];
                if (a == Complex{}) continue;
                for (std::size_t lo = 0; lo < acc.size(); ++lo) next[hi * acc.size() + lo] = a * acc[lo];
            }
            acc = std::move(next);
            width += part.n_qubits();
        }
        return Statevector(checked_width(width), std::move(acc));
    }
    static Statevector stack(std::initializer_list<Statevector> parts) {
        return stack(std::span<const Statevector>(parts.begin(), parts.size()));
    }

    std::size_t n_qubits() const noexcept { return n_; }
    std::size_t dimension() const noexcept { return amps_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    Complex operator[](std::size_t i) const { return amps_.at(i); }

    double norm_squared() const noexcept {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return s;
    }

    /// <this|other>.
    Complex inner(const Statevector& other) const {
        if (other.n_ != n_) throw DimensionMismatch("inner product of states with different qubit counts");
        Complex s{};
        for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
        return s;
    }

    /// |<this|other>|^2.
    double fidelity(const Statevector& other) const { return std::norm(inner(other)); }

  private:
    friend struct detail::StateAccess;

    Statevector(std::size_t n, Amplitudes amps) : n_(n), amps_(std::move(amps)) {}

    static std::size_t checked_width(std::size_t n) {
        if (n > kMaxQubits) throw InvalidArgument("too many qubits for a dense statevector");
        return n;
    }
    static std::size_t width_of(std::size_t length) {
        if (length == 0 || !std::has_single_bit(length)) {
            throw DimensionMismatch("amplitude count must be a power of two");
        }
        return checked_width(static_cast<std::size_t>(std::countr_zero(length)));
    }

    std::size_t n_;
    Amplitudes amps_;
};

namespace detail {
struct StateAccess {
    static Amplitudes& amps(Statevector& s) noexcept { return s.amps_; }
};
}  // namespace detail

// ---------------------------------------------------------------------------
// Gates

enum class GateKind { H, X, RY, CNOT, CCNOT, CSWAP };

constexpr std::size_t arity(GateKind kind) noexcept {
    switch (kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::RY: return 1;
        case GateKind::CNOT: return 2;
        case GateKind::CCNOT:
        case GateKind::CSWAP: return 3;
    }
    return 0;
}

constexpr std::string_view name(GateKind kind) noexcept {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::RY: return "RY";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CCNOT: return "CCNOT";
        case GateKind::CSWAP: return "CSWAP";
    }
    return "?";
}

/// One gate application. Qubit order: controls first, then targets
/// (CNOT(control, target), CCNOT(c1, c2, target), CSWAP(control, a, b)).
class Gate {
  public:
    static Gate h(std::size_t q) { return Gate(GateKind::H, {q}); }
    static Gate x(std::size_t q) { return Gate(GateKind::X, {q}); }
    static Gate ry(std::size_t q, double theta) { return Gate(GateKind::RY, {q}, theta); }
    static Gate cnot(std::size_t control, std::size_t target) { return Gate(GateKind::CNOT, {control, target}); }
    static Gate ccnot(std::size_t c1, std::size_t c2, std::size_t target) {
        return Gate(GateKind::CCNOT, {c1, c2, target});
    }
    static Gate cswap(std::size_t control, std::size_t a, std::size_t b) {
        return Gate(GateKind::CSWAP, {control, a, b});
    }

    GateKind kind() const noexcept { return kind_; }
    double angle() const noexcept { return angle_; }
    std::size_t arity() const noexcept { return qoverlap::arity(kind_); }
    std::span<const std::size_t> qubits() const noexcept { return {qubits_.data(), arity()}; }

    /// Throws unless all qubits are distinct and below n_qubits.
    void validate(std::size_t n_qubits) const {
        const auto qs = qubits();
        for (std::size_t i = 0; i < qs.size(); ++i) {
            if (qs[i] >= n_qubits) {
                throw InvalidArgument(std::string(name(kind_)) + ": qubit index " + std::to_string(qs[i]) +
                                      " out of range for " + std::to_string(n_qubits) + " qubits");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (qs[i] == qs[j]) throw InvalidArgument(std::string(name(kind_)) + ": duplicate qubit index");
            }
        }
    }

    friend bool operator==(const Gate&, const Gate&) = default;

  private:
    Gate(GateKind kind, std::initializer_list<std::size_t> qs, double angle = 0.0) : kind_(kind), angle_(angle) {
        std::copy(qs.begin(), qs.end(), qubits_.begin());
    }

    GateKind kind_;
    std::array<std::size_t, 3> qubits_{};
    double angle_ = 0.0;
};

/// Dense 2^k x 2^k unitary of a gate kind, row-major. Local basis index bit j
/// corresponds to the gate's j-th qubit argument.
inline std::vector<Complex> gate_matrix(GateKind kind, double angle = 0.0) {
    const std::size_t dim = std::size_t{1} << arity(kind);
    std::vector<Complex> m(dim * dim);
    auto at = [&](std::size_t r, std::size_t c) -> Complex& { return m[r * dim + c]; };
    switch (kind) {
        case GateKind::H: {
            const double s = std::numbers::sqrt2 / 2.0;
            at(0, 0) = s, at(0, 1) = s, at(1, 0) = s, at(1, 1) = -s;
            break;
        }
        case GateKind::X: at(0, 1) = 1.0, at(1, 0) = 1.0; break;
        case GateKind::RY: {
            const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
            at(0, 0) = c, at(0, 1) = -s, at(1, 0) = s, at(1, 1) = c;
            break;
        }
        case GateKind::CNOT:
            // bit0 = control, bit1 = target
            for (std::size_t c = 0; c < dim; ++c) at((c & 1) ? (c ^ 2) : c, c) = 1.0;
            break;
        case GateKind::CCNOT:
            for (std::size_t c = 0; c < dim; ++c) at((c & 3) == 3 ? (c ^ 4) : c, c) = 1.0;
            break;
        case GateKind::CSWAP:
            for (std::size_t c = 0; c < dim; ++c) {
                std::size_t r = c;
                if ((c & 1) && (((c >> 1) & 1) != ((c >> 2) & 1))) r = c ^ 6;
                at(r, c) = 1.0;
            }
            break;
    }
    return m;
}

// ---------------------------------------------------------------------------
// Circuits

/// Ordered gate list over a fixed register plus the qubits read out at the end.
class Circuit {
  public:
    explicit Circuit(std::size_t n_qubits) : n_(n_qubits) {
        if (n_qubits == 0) throw InvalidArgument("circuit needs at least one qubit");
        if (n_qubits > kMaxQubits) throw InvalidArgument("too many qubits for a dense statevector");
    }

    Circuit& add(const Gate& gate) {
        gate.validate(n_);
        gates_.push_back(gate);
        return *this;
    }

    /// Sets the measured qubits; order defines outcome-key significance.
    Circuit& measure(std::vector<std::size_t> qubits) {
        for (std::size_t i = 0; i < qubits.size(); ++i) {
            if (qubits[i] >= n_) throw InvalidArgument("measured qubit out of range");
            for (std::size_t j = 0; j < i; ++j) {
                if (qubits[i] == qubits[j]) throw InvalidArgument("measured qubits must be distinct");
            }
        }
        measured_ = std::move(qubits);
        return *this;
    }

    std::size_t n_qubits() const noexcept { return n_; }
    std::span<const Gate> gates() const noexcept { return gates_; }
    std::span<const std::size_t> measured() const noexcept { return measured_; }

  private:
    std::size_t n_;
    std::vector<Gate> gates_;
    std::vector<std::size_t> measured_;
};

// ---------------------------------------------------------------------------
// Kernels

namespace detail {

inline void apply_h(std::span<Complex> a, std::size_t q) {
    const std::size_t m = std::size_t{1} << q;
    const double s = std::numbers::sqrt2 / 2.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i & m) continue;
        const Complex x = a[i], y = a[i | m];
        a[i] = s * (x + y);
        a[i | m] = s * (x - y);
    }
}

inline void apply_x(std::span<Complex> a, std::size_t q) {
    const std::size_t m = std::size_t{1} << q;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(i & m)) std::swap(a[i], a[i | m]);
    }
}

inline void apply_y(std::span<Complex> a, std::size_t q) {
    const std::size_t m = std::size_t{1} << q;
    const Complex i_unit{0.0, 1.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i & m) continue;
        const Complex x = a[i], y = a[i | m];
        a[i] = -i_unit * y;
        a[i | m] = i_unit * x;
    }
}

inline void apply_z(std::span<Complex> a, std::size_t q) {
    const std::size_t m = std::size_t{1} << q;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i & m) a[i] = -a[i];
    }
}

inline void apply_ry(std::span<Complex> a, std::size_t q, double theta) {
    const std::size_t m = std::size_t{1} << q;
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i & m) continue;
        const Complex x = a[i], y = a[i | m];
        a[i] = c * x - s * y;
        a[i | m] = s * x + c * y;
    }
}

// Swap amplitude pairs (i, i ^ flip) over indices that match `care`/`want`.
inline void masked_swap(std::span<Complex> a, std::size_t care, std::size_t want, std::size_t flip) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((i & care) == want) std::swap(a[i], a[i ^ flip]);
    }
}

inline void apply_unchecked(std::span<Complex> a, const Gate& g) {
    const auto q = g.qubits();
    auto bit = [&](std::size_t k) { return std::size_t{1} << q[k]; };
    switch (g.kind()) {
        case GateKind::H: apply_h(a, q[0]); break;
        case GateKind::X: apply_x(a, q[0]); break;
        case GateKind::RY: apply_ry(a, q[0], g.angle()); break;
        case GateKind::CNOT: masked_swap(a, bit(0) | bit(1), bit(0), bit(1)); break;
        case GateKind::CCNOT: masked_swap(a, bit(0) | bit(1) | bit(2), bit(0) | bit(1), bit(2)); break;
        case GateKind::CSWAP:
            masked_swap(a, bit(0) | bit(1) | bit(2), bit(0) | bit(1), bit(1) | bit(2));
            break;
    }
}

}  // namespace detail

/// U|psi> for a single gate.
inline Statevector apply_gate(Statevector state, const Gate& gate) {
    gate.validate(state.n_qubits());
    detail::apply_unchecked(detail::StateAccess::amps(state), gate);
    return state;
}

/// Applies the circuit's gates in order. Measurement is not performed.
inline Statevector run_circuit(Statevector state, const Circuit& circuit) {
    if (state.n_qubits() != circuit.n_qubits()) {
        throw DimensionMismatch("state has " + std::to_string(state.n_qubits()) + " qubits, circuit has " +
                                std::to_string(circuit.n_qubits()));
    }
    auto& amps = detail::StateAccess::amps(state);
    for (const auto& g : circuit.gates()) detail::apply_unchecked(amps, g);
    return state;
}

// ---------------------------------------------------------------------------
// Measurement

/// Renders outcome key `key` over `width` measured qubits, most-significant first.
inline std::string to_bitstring(std::uint64_t key, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t j = 0; j < width; ++j) {
        if ((key >> j) & 1) s[width - 1 - j] = '1';
    }
    return s;
}

inline std::uint64_t from_bitstring(std::string_view bits) {
    if (bits.size() > 64) throw InvalidArgument("bitstring longer than 64 bits");
    std::uint64_t key = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw InvalidArgument("bitstring may only contain 0 and 1");
        key = (key << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return key;
}

inline void validate_measured(std::size_t n_qubits, std::span<const std::size_t> measured) {
    if (measured.size() > 63) throw InvalidArgument("too many measured qubits");
    for (std::size_t i = 0; i < measured.size(); ++i) {
        if (measured[i] >= n_qubits) throw InvalidArgument("measured qubit index out of range");
        for (std::size_t j = 0; j < i; ++j) {
            if (measured[i] == measured[j]) throw InvalidArgument("measured qubits must be distinct");
        }
    }
}

/// Outcome key of basis index `index` for the measured qubit list.
inline std::uint64_t outcome_key(std::uint64_t index, std::span<const std::size_t> measured) noexcept {
    std::uint64_t key = 0;
    for (std::size_t j = 0; j < measured.size(); ++j) key |= ((index >> measured[j]) & 1) << j;
    return key;
}

/// Born-rule marginal over `measured`, as a dense vector indexed by outcome key.
inline std::vector<double> outcome_distribution(std::span<const Complex> amps, std::span<const std::size_t> measured) {
    std::vector<double> p(std::size_t{1} << measured.size(), 0.0);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double w = std::norm(amps[i]);
        if (w != 0.0) p[outcome_key(i, measured)] += w;
    }
    return p;
}

inline std::vector<double> outcome_distribution(const Statevector& state, std::span<const std::size_t> measured) {
    validate_measured(state.n_qubits(), measured);
    return outcome_distribution(state.amplitudes(), measured);
}

/// Born-rule marginal over `measured`; only outcomes with nonzero probability
/// are listed.
inline Distribution outcome_probabilities(const Statevector& state, std::span<const std::size_t> measured) {
    const auto p = outcome_distribution(state, measured);
    Distribution out;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] > 0.0) out.emplace(to_bitstring(k, measured.size()), p[k]);
    }
    return out;
}

inline Distribution outcome_probabilities(const Statevector& state, std::initializer_list<std::size_t> measured) {
    return outcome_probabilities(state, std::span<const std::size_t>(measured.begin(), measured.size()));
}

namespace detail {

/// Inverse-CDF sampler over a dense distribution.
class OutcomeSampler {
  public:
    explicit OutcomeSampler(std::span<const double> p) : cdf_(p.size()) {
        double acc = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k) cdf_[k] = (acc += p[k]);
    }
    std::uint64_t operator()(Rng& rng) const {
        const double u = uniform01(rng) * cdf_.back();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        std::size_t k = static_cast<std::size_t>(it - cdf_.begin());
        if (k >= cdf_.size()) k = cdf_.size() - 1;
        // skip zero-probability tail entries that share the final cdf value
        while (k > 0 && cdf_[k] == cdf_[k - 1]) --k;
        return k;
    }

  private:
    std::vector<double> cdf_;
};

inline Counts to_counts(std::span<const std::uint64_t> dense, std::size_t width) {
    Counts out;
    for (std::size_t k = 0; k < dense.size(); ++k) {
        if (dense[k] != 0) out.emplace(to_bitstring(k, width), dense[k]);
    }
    return out;
}

}  // namespace detail

/// Draws `shots` measurement outcomes. Deterministic for a given seed.
inline Counts sample_shots(const Statevector& state, std::span<const std::size_t> measured, std::uint64_t shots,
                           std::uint64_t seed) {
    if (shots == 0) throw InvalidArgument("shots must be positive");
    const auto p = outcome_distribution(state, measured);
    const detail::OutcomeSampler sampler(p);
    Rng rng(seed);
    std::vector<std::uint64_t> dense(p.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) ++dense[sampler(rng)];
    return detail::to_counts(dense, measured.size());
}

inline Counts sample_shots(const Statevector& state, std::initializer_list<std::size_t> measured,
                           std::uint64_t shots, std::uint64_t seed) {
    return sample_shots(state, std::span<const std::size_t>(measured.begin(), measured.size()), shots, seed);
}

}  // namespace qoverlap
