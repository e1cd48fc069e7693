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

#include <fstream>
#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "qcoord/common.hpp"

namespace qcoord {

enum class EcType { Residential, Commercial, Industrial };

inline std::string ec_type_code(EcType t) {
    switch (t) {
        case EcType::Residential: return "R";
        case EcType::Commercial: return "C";
        case EcType::Industrial: return "I";
    }
    return "?";
}

inline EcType ec_type_from_code(const std::string& code) {
    if (code == "R") return EcType::Residential;
    if (code == "C") return EcType::Commercial;
    if (code == "I") return EcType::Industrial;
    throw std::invalid_argument("unknown EC type code: " + code);
}

struct Bus {
    double v_min = 0.90;  // per-unit voltage magnitude bounds
    double v_max = 1.10;
    double p_load = 0.0;  // nominal peak load, per-unit
    double q_load = 0.0;
};

struct Line {
    std::size_t from = 0;
    std::size_t to = 0;
    double r = 0.0;  // per-unit
    double x = 0.0;
    double p_max = 10.0;  // active-flow bounds, per-unit
    double p_min = -10.0;
};

// Radial distribution network with generator/load/community attachments.
// Buses are 0-indexed internally; data files use the conventional 1-based ids.
struct NetworkCase {
    std::vector<Bus> buses;
    std::vector<Line> lines;
    std::size_t slack = 0;
    std::vector<std::pair<std::size_t, std::string>> res;  // (bus, "WT"/"PV")
    std::vector<std::size_t> uncertain_loads;
    std::vector<std::pair<std::size_t, EcType>> ecs;

    std::size_t n_buses() const { return buses.size(); }
    std::size_t n_lines() const { return lines.size(); }

    void validate() const {
        detail::require(!buses.empty(), "network needs at least one bus");
        detail::require(lines.size() + 1 == buses.size(),
                        "a radial network has exactly n_buses - 1 lines");
        detail::require(slack < buses.size(), "slack index out of range");
        for (const Bus& b : buses)
            detail::require(b.v_min < b.v_max, "bus voltage bounds must satisfy v_min < v_max");
        for (const Line& l : lines) {
            detail::require(l.from < buses.size() && l.to < buses.size(),
                            "line endpoint out of range");
            detail::require(l.r >= 0.0 && l.x >= 0.0, "line impedances must be nonnegative");
            detail::require(l.p_min < l.p_max, "line flow bounds must satisfy p_min < p_max");
        }
        for (const auto& [bus, kind] : res)
            detail::require(bus < buses.size() && (kind == "WT" || kind == "PV"),
                            "bad RES attachment");
        for (std::size_t bus : uncertain_loads)
            detail::require(bus < buses.size(), "bad uncertain-load attachment");
        for (const auto& [bus, type] : ecs) {
            (void)type;
            detail::require(bus < buses.size(), "bad EC attachment");
        }
    }
};

// Rooted-tree view of the case: parent pointers, breadth-first order and the
// line feeding each non-slack bus. Construction fails on cyclic or
// disconnected topologies.
struct Topology {
    std::vector<std::ptrdiff_t> parent;       // -1 at the slack
    std::vector<std::ptrdiff_t> parent_line;  // line feeding the bus
    std::vector<std::size_t> bfs_order;
    std::vector<std::vector<std::size_t>> children;

    static Topology build(const NetworkCase& net) {
        net.validate();
        const std::size_t n = net.n_buses();
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
        for (std::size_t l = 0; l < net.lines.size(); ++l) {
            adj[net.lines[l].from].emplace_back(net.lines[l].to, l);
            adj[net.lines[l].to].emplace_back(net.lines[l].from, l);
        }
        Topology topo;
        topo.parent.assign(n, -2);  // -2: unvisited
        topo.parent_line.assign(n, -1);
        topo.children.resize(n);
        topo.bfs_order.reserve(n);
        std::vector<std::size_t> queue = {net.slack};
        topo.parent[net.slack] = -1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::size_t u = queue[head];
            topo.bfs_order.push_back(u);
            for (const auto& [v, l] : adj[u]) {
                if (topo.parent[v] != -2) {
                    // A visited neighbor other than u's own parent closes a
                    // cycle.
                    detail::require(topo.parent_line[u] == static_cast<std::ptrdiff_t>(l),
                                    "network topology contains a cycle");
                    continue;
                }
                topo.parent[v] = static_cast<std::ptrdiff_t>(u);
                topo.parent_line[v] = static_cast<std::ptrdiff_t>(l);
                topo.children[u].push_back(v);
                queue.push_back(v);
            }
        }
        detail::require(queue.size() == n, "network topology is disconnected");
        return topo;
    }
};

// ---------------------------------------------------------------------------
// Network file: delimited text with three sections. Bus ids are 1-based in
// the file. Columns:
//   [buses]       id v_min v_max p_load_pu q_load_pu
//   [lines]       from to r_pu x_pu p_max_pu p_min_pu
//   [attachments] bus KIND        (KIND: WT, PV, UL, or EC followed by R|C|I)
// ---------------------------------------------------------------------------

inline NetworkCase read_network(std::istream& is) {
    NetworkCase net;
    std::string line;
    std::string section;
    std::size_t max_id = 0;
    struct RawBus {
        std::size_t id;
        Bus bus;
    };
    std::vector<RawBus> raw_buses;
    std::vector<std::array<double, 6>> raw_lines;
    std::vector<std::pair<std::size_t, std::string>> raw_attach;
    std::vector<std::string> raw_attach_arg;
    while (std::getline(is, line)) {
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        if (line[start] == '[') {
            const auto end = line.find(']', start);
            detail::require(end != std::string::npos, "unterminated section header");
            section = line.substr(start + 1, end - start - 1);
            continue;
        }
        std::istringstream ls(line);
        if (section == "buses") {
            RawBus rb;
            ls >> rb.id >> rb.bus.v_min >> rb.bus.v_max >> rb.bus.p_load >> rb.bus.q_load;
            detail::require(!ls.fail() && rb.id >= 1, "bad bus row");
            max_id = std::max(max_id, rb.id);
            raw_buses.push_back(rb);
        } else if (section == "lines") {
            std::array<double, 6> row{};
            ls >> row[0] >> row[1] >> row[2] >> row[3] >> row[4] >> row[5];
            detail::require(!ls.fail(), "bad line row");
            raw_lines.push_back(row);
        } else if (section == "attachments") {
            std::size_t bus;
            std::string kind, arg;
            ls >> bus >> kind;
            detail::require(!ls.fail(), "bad attachment row");
            if (kind == "EC") ls >> arg;
            raw_attach.emplace_back(bus, kind);
            raw_attach_arg.push_back(arg);
        } else {
            throw std::invalid_argument("row outside a known section: " + line);
        }
    }
    detail::require(!raw_buses.empty(), "network file has no buses");
    net.buses.resize(max_id);
    for (const RawBus& rb : raw_buses) net.buses[rb.id - 1] = rb.bus;
    for (const auto& row : raw_lines) {
        Line l;
        l.from = static_cast<std::size_t>(row[0]) - 1;
        l.to = static_cast<std::size_t>(row[1]) - 1;
        l.r = row[2];
        l.x = row[3];
        l.p_max = row[4];
        l.p_min = row[5];
        net.lines.push_back(l);
    }
    for (std::size_t i = 0; i < raw_attach.size(); ++i) {
        const auto& [bus1, kind] = raw_attach[i];
        const std::size_t bus = bus1 - 1;
        if (kind == "WT" || kind == "PV")
            net.res.emplace_back(bus, kind);
        else if (kind == "UL")
            net.uncertain_loads.push_back(bus);
        else if (kind == "EC")
            net.ecs.emplace_back(bus, ec_type_from_code(raw_attach_arg[i]));
        else
            throw std::invalid_argument("unknown attachment kind: " + kind);
    }
    net.slack = 0;
    net.validate();
    return net;
}

inline NetworkCase read_network(const std::string& path) {
    std::ifstream is(path);
    detail::require(is.good(), "cannot open network file: " + path);
    return read_network(is);
}

}  // namespace qcoord
