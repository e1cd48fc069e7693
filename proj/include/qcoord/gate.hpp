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

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qcoord/common.hpp"

namespace qcoord {

// Base single-qubit operations. Any of them may carry an arbitrary list of
// controls; CNOT is X with one control, CRY/MCRY are controlled RY, and the
// phase gates (Z, P) with controls provide the reflections used by Grover
// operators and the QFT.
enum class GateKind : std::uint8_t { H, X, Z, P, RY, RZ };

struct Control {
    std::uint32_t qubit = 0;
    bool value = true;  // true: control on |1>, false: control on |0>
};

struct Gate {
    GateKind kind = GateKind::H;
    std::uint32_t target = 0;
    double angle = 0.0;  // used by P, RY, RZ
    std::vector<Control> controls;

    bool has_angle() const {
        return kind == GateKind::P || kind == GateKind::RY || kind == GateKind::RZ;
    }
};

inline Gate make_h(std::uint32_t q) { return Gate{GateKind::H, q, 0.0, {}}; }
inline Gate make_x(std::uint32_t q) { return Gate{GateKind::X, q, 0.0, {}}; }
inline Gate make_z(std::uint32_t q) { return Gate{GateKind::Z, q, 0.0, {}}; }
inline Gate make_p(std::uint32_t q, double phi) { return Gate{GateKind::P, q, phi, {}}; }
inline Gate make_ry(std::uint32_t q, double theta) { return Gate{GateKind::RY, q, theta, {}}; }
inline Gate make_rz(std::uint32_t q, double theta) { return Gate{GateKind::RZ, q, theta, {}}; }

inline Gate make_cnot(std::uint32_t control, std::uint32_t target) {
    return Gate{GateKind::X, target, 0.0, {Control{control, true}}};
}

inline Gate make_cry(std::uint32_t control, std::uint32_t target, double theta) {
    return Gate{GateKind::RY, target, theta, {Control{control, true}}};
}

inline Gate make_mcry(std::vector<Control> controls, std::uint32_t target, double theta) {
    return Gate{GateKind::RY, target, theta, std::move(controls)};
}

inline Gate make_mcz(std::vector<Control> controls, std::uint32_t target) {
    return Gate{GateKind::Z, target, 0.0, std::move(controls)};
}

inline Gate make_mcp(std::vector<Control> controls, std::uint32_t target, double phi) {
    return Gate{GateKind::P, target, phi, std::move(controls)};
}

// 2x2 matrix of the base operation, row-major {u00, u01, u10, u11}.
inline std::array<cplx, 4> gate_matrix(GateKind kind, double angle = 0.0) {
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    switch (kind) {
        case GateKind::H:
            return {cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0},
                    cplx{-inv_sqrt2, 0}};
        case GateKind::X:
            return {cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};
        case GateKind::Z:
            return {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-1, 0}};
        case GateKind::P:
            return {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, std::polar(1.0, angle)};
        case GateKind::RY: {
            const double c = std::cos(angle / 2.0);
            const double s = std::sin(angle / 2.0);
            return {cplx{c, 0}, cplx{-s, 0}, cplx{s, 0}, cplx{c, 0}};
        }
        case GateKind::RZ:
            return {std::polar(1.0, -angle / 2.0), cplx{0, 0}, cplx{0, 0},
                    std::polar(1.0, angle / 2.0)};
    }
    throw std::logic_error("unknown gate kind");
}

inline std::array<cplx, 4> gate_matrix(const Gate& g) { return gate_matrix(g.kind, g.angle); }

inline Gate inverse(const Gate& g) {
    Gate inv = g;
    if (g.has_angle()) inv.angle = -g.angle;
    return inv;  // H, X, Z are self-inverse
}

inline std::string gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::Z: return "Z";
        case GateKind::P: return "P";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
    }
    return "?";
}

namespace detail {

inline void validate_gate(const Gate& g, std::size_t n_qubits) {
    require_range(g.target < n_qubits, "gate target out of range");
    if (g.has_angle())
        require(std::isfinite(g.angle), "gate angle must be finite");
    std::uint64_t seen = 1ULL << g.target;
    for (const Control& c : g.controls) {
        require_range(c.qubit < n_qubits, "gate control out of range");
        require((seen & (1ULL << c.qubit)) == 0, "gate control/target qubits must be distinct");
        seen |= 1ULL << c.qubit;
    }
}

}  // namespace detail

}  // namespace qcoord
