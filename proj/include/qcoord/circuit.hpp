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

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qcoord/gate.hpp"
#include "qcoord/statevector.hpp"

namespace qcoord {

// Tracks the greedy-layering depth of a gate stream: gates acting on disjoint
// qubits share a layer. Streaming form so repeated-circuit depths (Grover
// powers, phase estimation) are accounted without materializing the sequence.
class DepthTracker {
public:
    explicit DepthTracker(std::size_t n_qubits) : layer_(n_qubits, 0) {}

    void add(const Gate& g) {
        std::size_t l = layer_[g.target];
        for (const Control& c : g.controls) l = std::max(l, layer_[c.qubit]);
        ++l;
        layer_[g.target] = l;
        for (const Control& c : g.controls) layer_[c.qubit] = l;
        depth_ = std::max(depth_, l);
    }

    std::size_t depth() const { return depth_; }

private:
    std::vector<std::size_t> layer_;
    std::size_t depth_ = 0;
};

class Circuit {
public:
    Circuit() : n_qubits_(1) {}

    explicit Circuit(std::size_t n_qubits) : n_qubits_(n_qubits) {
        detail::require(n_qubits >= 1, "circuit needs at least one qubit");
    }

    std::size_t n_qubits() const { return n_qubits_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }

    void add(Gate g) {
        detail::validate_gate(g, n_qubits_);
        gates_.push_back(std::move(g));
    }

    void h(std::uint32_t q) { add(make_h(q)); }
    void x(std::uint32_t q) { add(make_x(q)); }
    void z(std::uint32_t q) { add(make_z(q)); }
    void p(std::uint32_t q, double phi) { add(make_p(q, phi)); }
    void ry(std::uint32_t q, double theta) { add(make_ry(q, theta)); }
    void rz(std::uint32_t q, double theta) { add(make_rz(q, theta)); }
    void cnot(std::uint32_t control, std::uint32_t target) { add(make_cnot(control, target)); }
    void cry(std::uint32_t control, std::uint32_t target, double theta) {
        add(make_cry(control, target, theta));
    }
    void mcry(std::vector<Control> controls, std::uint32_t target, double theta) {
        add(make_mcry(std::move(controls), target, theta));
    }
    void mcz(std::vector<Control> controls, std::uint32_t target) {
        add(make_mcz(std::move(controls), target));
    }
    void mcp(std::vector<Control> controls, std::uint32_t target, double phi) {
        add(make_mcp(std::move(controls), target, phi));
    }

    void append(const Circuit& other) {
        detail::require(other.n_qubits_ <= n_qubits_,
                        "appended circuit uses more qubits than the target");
        gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    }

    Circuit inverted() const {
        Circuit inv(n_qubits_);
        inv.gates_.reserve(gates_.size());
        for (auto it = gates_.rbegin(); it != gates_.rend(); ++it)
            inv.gates_.push_back(inverse(*it));
        return inv;
    }

    std::size_t depth() const {
        DepthTracker t(n_qubits_);
        for (const Gate& g : gates_) t.add(g);
        return t.depth();
    }

private:
    std::size_t n_qubits_;
    std::vector<Gate> gates_;
};

inline void run_in_place(const Circuit& circuit, StateVector& state) {
    detail::require(circuit.n_qubits() == state.n_qubits(),
                    "circuit and state qubit counts differ");
    for (const Gate& g : circuit.gates()) apply_in_place(state, g);
}

inline StateVector run_circuit(const Circuit& circuit, StateVector initial) {
    run_in_place(circuit, initial);
    return initial;
}

// Ideal-hardware execution-time model: one state preparation + measurement
// budget plus a per-layer gate cost.
struct RuntimeModel {
    double t_prep_plus_meas = 1e-6;  // seconds
    double t_gate = 1e-8;            // seconds

    void validate() const {
        detail::require(t_prep_plus_meas > 0.0 && t_gate > 0.0,
                        "runtime model durations must be positive");
    }
};

inline double estimate_runtime(std::size_t depth, const RuntimeModel& model = {}) {
    model.validate();
    return model.t_prep_plus_meas + model.t_gate * static_cast<double>(depth);
}

inline double estimate_runtime(const Circuit& circuit, const RuntimeModel& model = {}) {
    return estimate_runtime(circuit.depth(), model);
}

// ---------------------------------------------------------------------------
// Text serialization. One gate per line: KIND target [controls...] [angle],
// where a control is the qubit index, prefixed with '!' for control-on-|0>.
// Qubit 0 is the least significant basis-index bit.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string serialized_kind(const Gate& g) {
    const std::size_t nc = g.controls.size();
    switch (g.kind) {
        case GateKind::X:
            if (nc == 1) return "CNOT";
            if (nc > 1) return "MCX";
            return "X";
        case GateKind::RY:
            if (nc == 1) return "CRY";
            if (nc > 1) return "MCRY";
            return "RY";
        case GateKind::RZ:
            if (nc == 1) return "CRZ";
            if (nc > 1) return "MCRZ";
            return "RZ";
        case GateKind::Z:
            return nc > 0 ? "MCZ" : "Z";
        case GateKind::P:
            return nc > 0 ? "MCP" : "P";
        case GateKind::H:
            return nc > 0 ? "MCH" : "H";
    }
    return "?";
}

inline GateKind parse_kind(const std::string& token) {
    if (token == "H" || token == "MCH") return GateKind::H;
    if (token == "X" || token == "CNOT" || token == "MCX") return GateKind::X;
    if (token == "Z" || token == "MCZ") return GateKind::Z;
    if (token == "P" || token == "MCP") return GateKind::P;
    if (token == "RY" || token == "CRY" || token == "MCRY") return GateKind::RY;
    if (token == "RZ" || token == "CRZ" || token == "MCRZ") return GateKind::RZ;
    throw std::invalid_argument("unknown gate kind token: " + token);
}

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

inline void write_circuit(std::ostream& os, const Circuit& c) {
    os << "# qcoord circuit v1 (qubit 0 = least significant basis-index bit)\n";
    os << "qubits " << c.n_qubits() << "\n";
    for (const Gate& g : c.gates()) {
        os << detail::serialized_kind(g) << ' ' << g.target;
        for (const Control& ctl : g.controls) {
            os << ' ';
            if (!ctl.value) os << '!';
            os << ctl.qubit;
        }
        if (g.has_angle()) os << ' ' << detail::format_double(g.angle);
        os << '\n';
    }
}

inline std::string circuit_to_text(const Circuit& c) {
    std::ostringstream os;
    write_circuit(os, c);
    return os.str();
}

inline Circuit read_circuit(std::istream& is) {
    std::string line;
    std::size_t n_qubits = 0;
    std::vector<Gate> gates;
    while (std::getline(is, line)) {
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "qubits") {
            ls >> n_qubits;
            continue;
        }
        detail::require(n_qubits > 0, "circuit text must declare 'qubits N' first");
        Gate g;
        g.kind = detail::parse_kind(head);
        ls >> g.target;
        std::string tok;
        std::vector<std::string> rest;
        while (ls >> tok) rest.push_back(tok);
        const bool angled = g.has_angle();
        const std::size_t n_controls = rest.size() - (angled ? 1 : 0);
        for (std::size_t i = 0; i < n_controls; ++i) {
            Control c;
            std::string t = rest[i];
            if (!t.empty() && t[0] == '!') {
                c.value = false;
                t = t.substr(1);
            }
            c.qubit = static_cast<std::uint32_t>(std::stoul(t));
            g.controls.push_back(c);
        }
        if (angled) {
            detail::require(!rest.empty(), "rotation/phase gate line is missing its angle");
            g.angle = std::stod(rest.back());
        }
        gates.push_back(std::move(g));
    }
    detail::require(n_qubits > 0, "circuit text must declare 'qubits N'");
    Circuit c(n_qubits);
    for (Gate& g : gates) c.add(std::move(g));
    return c;
}

inline Circuit circuit_from_text(const std::string& text) {
    std::istringstream is(text);
    return read_circuit(is);
}

}  // namespace qcoord
