// Copyright 2026 The qcoord Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "qcoord/common.hpp"
#include "qcoord/gate.hpp"

namespace qcoord {

// Dense state over 2^n basis states. Qubit 0 is the least significant bit of
// the basis index (little-endian) in every API and file format of this
// project.
class StateVector {
public:
    explicit StateVector(std::size_t n_qubits) : n_qubits_(n_qubits), amp_(dim_of(n_qubits)) {
        amp_[0] = cplx{1.0, 0.0};
    }

    static StateVector basis(std::size_t n_qubits, std::uint64_t index) {
        detail::require_range(index < dim_of(n_qubits), "basis index out of range");
        StateVector s(n_qubits);
        s.amp_[0] = cplx{0.0, 0.0};
        s.amp_[index] = cplx{1.0, 0.0};
        return s;
    }

    // Amplitudes must already be normalized; construction does not rescale.
    static StateVector from_amplitudes(std::size_t n_qubits, std::vector<cplx> amps) {
        detail::require(amps.size() == dim_of(n_qubits),
                        "amplitude count must be 2^n_qubits");
        StateVector s(n_qubits);
        s.amp_ = std::move(amps);
        detail::require(std::abs(s.norm() - 1.0) < 1e-8, "amplitudes must have unit norm");
        return s;
    }

    std::size_t n_qubits() const { return n_qubits_; }
    std::uint64_t dim() const { return amp_.size(); }

    const cplx& operator[](std::uint64_t i) const { return amp_[i]; }
    cplx& operator[](std::uint64_t i) { return amp_[i]; }

    const std::vector<cplx>& amplitudes() const { return amp_; }
    std::vector<cplx>& amplitudes() { return amp_; }

    double norm() const {
        double s = 0.0;
        for (const cplx& a : amp_) s += std::norm(a);
        return std::sqrt(s);
    }

    double probability(std::uint64_t basis_index) const { return std::norm(amp_[basis_index]); }

private:
    static std::uint64_t dim_of(std::size_t n) {
        detail::require(n >= 1 && n <= 28, "qubit count must be in [1, 28]");
        return 1ULL << n;
    }

    std::size_t n_qubits_;
    std::vector<cplx> amp_;
};

namespace detail {

// Applies the 2x2 matrix u to `target` on every basis pair whose control bits
// match. Iterates only over matching indices: k's bits are deposited into the
// free positions, so a gate with c controls costs 2^(n-c-1) pair updates.
inline void apply_controlled_1q(std::vector<cplx>& amp, std::size_t n_qubits,
                                const std::array<cplx, 4>& u, std::uint32_t target,
                                const std::vector<Control>& controls) {
    const std::uint64_t tbit = 1ULL << target;
    if (controls.empty()) {
        const std::uint64_t dim = amp.size();
        const double u00r = u[0].real(), u00i = u[0].imag();
        const double u01r = u[1].real(), u01i = u[1].imag();
        const double u10r = u[2].real(), u10i = u[2].imag();
        const double u11r = u[3].real(), u11i = u[3].imag();
        for (std::uint64_t g = 0; g < dim; g += tbit << 1) {
            for (std::uint64_t i = g; i < g + tbit; ++i) {
                const cplx a0 = amp[i];
                const cplx a1 = amp[i | tbit];
                const double a0r = a0.real(), a0i = a0.imag();
                const double a1r = a1.real(), a1i = a1.imag();
                amp[i] = cplx{u00r * a0r - u00i * a0i + u01r * a1r - u01i * a1i,
                              u00r * a0i + u00i * a0r + u01r * a1i + u01i * a1r};
                amp[i | tbit] = cplx{u10r * a0r - u10i * a0i + u11r * a1r - u11i * a1i,
                                     u10r * a0i + u10i * a0r + u11r * a1i + u11i * a1r};
            }
        }
        return;
    }

    std::uint64_t cval = 0;
    std::uint64_t used = tbit;
    for (const Control& c : controls) {
        used |= 1ULL << c.qubit;
        if (c.value) cval |= 1ULL << c.qubit;
    }
    std::uint32_t free_pos[64];
    std::size_t n_free = 0;
    for (std::uint32_t b = 0; b < n_qubits; ++b)
        if (!(used & (1ULL << b))) free_pos[n_free++] = b;

    const std::uint64_t count = 1ULL << n_free;
    for (std::uint64_t k = 0; k < count; ++k) {
        std::uint64_t i = cval;
        for (std::size_t j = 0; j < n_free; ++j) i |= ((k >> j) & 1ULL) << free_pos[j];
        const cplx a0 = amp[i];
        const cplx a1 = amp[i | tbit];
        amp[i] = u[0] * a0 + u[1] * a1;
        amp[i | tbit] = u[2] * a0 + u[3] * a1;
    }
}

// Diagonal fast path: multiplies amp[i] by `phase` on matching indices with
// the target bit set.
inline void apply_controlled_phase(std::vector<cplx>& amp, std::size_t n_qubits, cplx phase,
                                   std::uint32_t target, const std::vector<Control>& controls) {
    const std::uint64_t tbit = 1ULL << target;
    if (controls.empty()) {
        const std::uint64_t dim = amp.size();
        for (std::uint64_t g = 0; g < dim; g += tbit << 1)
            for (std::uint64_t i = g; i < g + tbit; ++i) amp[i | tbit] *= phase;
        return;
    }
    std::uint64_t cval = 0;
    std::uint64_t used = tbit;
    for (const Control& c : controls) {
        used |= 1ULL << c.qubit;
        if (c.value) cval |= 1ULL << c.qubit;
    }
    std::uint32_t free_pos[64];
    std::size_t n_free = 0;
    for (std::uint32_t b = 0; b < n_qubits; ++b)
        if (!(used & (1ULL << b))) free_pos[n_free++] = b;
    const std::uint64_t count = 1ULL << n_free;
    for (std::uint64_t k = 0; k < count; ++k) {
        std::uint64_t i = cval | tbit;
        for (std::size_t j = 0; j < n_free; ++j) i |= ((k >> j) & 1ULL) << free_pos[j];
        amp[i] *= phase;
    }
}

inline void apply_controlled_swap_pairs(std::vector<cplx>& amp, std::size_t n_qubits,
                                        std::uint32_t target,
                                        const std::vector<Control>& controls) {
    const std::uint64_t tbit = 1ULL << target;
    if (controls.empty()) {
        const std::uint64_t dim = amp.size();
        for (std::uint64_t g = 0; g < dim; g += tbit << 1)
            for (std::uint64_t i = g; i < g + tbit; ++i) std::swap(amp[i], amp[i | tbit]);
        return;
    }
    std::uint64_t cval = 0;
    std::uint64_t used = tbit;
    for (const Control& c : controls) {
        used |= 1ULL << c.qubit;
        if (c.value) cval |= 1ULL << c.qubit;
    }
    std::uint32_t free_pos[64];
    std::size_t n_free = 0;
    for (std::uint32_t b = 0; b < n_qubits; ++b)
        if (!(used & (1ULL << b))) free_pos[n_free++] = b;
    const std::uint64_t count = 1ULL << n_free;
    for (std::uint64_t k = 0; k < count; ++k) {
        std::uint64_t i = cval;
        for (std::size_t j = 0; j < n_free; ++j) i |= ((k >> j) & 1ULL) << free_pos[j];
        std::swap(amp[i], amp[i | tbit]);
    }
}

// Pauli application without Gate plumbing, used by the depolarizing channel.
inline void apply_pauli(std::vector<cplx>& amp, std::uint32_t target, int pauli /*0=X,1=Y,2=Z*/) {
    const std::uint64_t tbit = 1ULL << target;
    const std::uint64_t dim = amp.size();
    for (std::uint64_t g = 0; g < dim; g += tbit << 1) {
        for (std::uint64_t i = g; i < g + tbit; ++i) {
            cplx& a0 = amp[i];
            cplx& a1 = amp[i | tbit];
            switch (pauli) {
                case 0: std::swap(a0, a1); break;
                case 1: {
                    const cplx t0 = a0;
                    a0 = cplx{a1.imag(), -a1.real()};   // -i * a1
                    a1 = cplx{-t0.imag(), t0.real()};   //  i * a0
                    break;
                }
                default: a1 = -a1; break;
            }
        }
    }
}

}  // namespace detail

inline void apply_in_place(StateVector& state, const Gate& g) {
    detail::validate_gate(g, state.n_qubits());
    switch (g.kind) {
        case GateKind::X:
            detail::apply_controlled_swap_pairs(state.amplitudes(), state.n_qubits(), g.target,
                                                g.controls);
            return;
        case GateKind::Z:
            detail::apply_controlled_phase(state.amplitudes(), state.n_qubits(), cplx{-1.0, 0.0},
                                           g.target, g.controls);
            return;
        case GateKind::P:
            detail::apply_controlled_phase(state.amplitudes(), state.n_qubits(),
                                           std::polar(1.0, g.angle), g.target, g.controls);
            return;
        default:
            detail::apply_controlled_1q(state.amplitudes(), state.n_qubits(), gate_matrix(g),
                                        g.target, g.controls);
            return;
    }
}

inline StateVector apply_gate(StateVector state, const Gate& g) {
    apply_in_place(state, g);
    return state;
}

// Marginal probability of reading `value` on one qubit.
inline double probability_of(const StateVector& state, std::size_t qubit, int value) {
    detail::require_range(qubit < state.n_qubits(), "qubit index out of range");
    detail::require(value == 0 || value == 1, "bit value must be 0 or 1");
    const std::uint64_t qbit = 1ULL << qubit;
    double p1 = 0.0;
    const std::uint64_t dim = state.dim();
    for (std::uint64_t i = 0; i < dim; ++i)
        if (i & qbit) p1 += std::norm(state[i]);
    return value == 1 ? p1 : 1.0 - p1;
}

struct ObservableTerm {
    std::size_t qubit = 0;
    double weight = 1.0;
};

// Weighted sum of single-qubit Pauli-Z terms.
struct Observable {
    std::vector<ObservableTerm> terms;
};

inline double expectation(const StateVector& state, const Observable& obs) {
    for (const ObservableTerm& t : obs.terms)
        detail::require_range(t.qubit < state.n_qubits(), "observable qubit out of range");
    // One pass computes every per-qubit |1> marginal; <Z_q> = 1 - 2 p1(q).
    std::vector<double> p1(state.n_qubits(), 0.0);
    const std::uint64_t dim = state.dim();
    for (std::uint64_t i = 0; i < dim; ++i) {
        const double p = std::norm(state[i]);
        if (p == 0.0) continue;
        std::uint64_t bits = i;
        while (bits) {
            const int b = std::countr_zero(bits);
            p1[static_cast<std::size_t>(b)] += p;
            bits &= bits - 1;
        }
    }
    double value = 0.0;
    for (const ObservableTerm& t : obs.terms) value += t.weight * (1.0 - 2.0 * p1[t.qubit]);
    return value;
}

inline double expectation_z(const StateVector& state, std::size_t qubit) {
    return 1.0 - 2.0 * probability_of(state, qubit, 1);
}

// Multinomial draw from |amplitudes|^2; reproducible for a given seed.
inline std::map<std::uint64_t, std::uint64_t> sample(const StateVector& state,
                                                     std::uint64_t shots, std::uint64_t seed) {
    detail::require(shots >= 1, "shots must be >= 1");
    const std::uint64_t dim = state.dim();
    std::vector<double> cdf(dim);
    double acc = 0.0;
    for (std::uint64_t i = 0; i < dim; ++i) {
        acc += std::norm(state[i]);
        cdf[i] = acc;
    }
    Rng rng(seed);
    std::map<std::uint64_t, std::uint64_t> hist;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform() * acc;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        const std::uint64_t idx =
            it == cdf.end() ? dim - 1 : static_cast<std::uint64_t>(it - cdf.begin());
        ++hist[idx];
    }
    return hist;
}

// Stochastic per-qubit depolarizing channel (trajectory method): each qubit
// independently receives a uniformly random Pauli with probability `level`.
inline void depolarize_in_place(StateVector& state, double level, Rng& rng) {
    detail::require(level >= 0.0 && level <= 1.0, "noise level must be in [0, 1]");
    if (level == 0.0) return;
    for (std::uint32_t q = 0; q < state.n_qubits(); ++q) {
        if (rng.uniform() < level) {
            const int pauli = static_cast<int>(rng.uniform_index(3));
            detail::apply_pauli(state.amplitudes(), q, pauli);
        }
    }
}

inline StateVector depolarize(StateVector state, double level, std::uint64_t seed) {
    Rng rng(seed);
    depolarize_in_place(state, level, rng);
    return state;
}

}  // namespace qcoord
