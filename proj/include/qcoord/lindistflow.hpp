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

#include <cmath>
#include <vector>

#include "qcoord/network.hpp"

namespace qcoord {

// Single-time-step solution of the linearized branch-flow model. Injections
// are consumption-positive; flows are oriented parent -> child; voltages are
// squared magnitudes with the slack pinned at 1.
struct OperatingPoint {
    std::vector<double> v_sq;    // per bus
    std::vector<double> p_flow;  // per line
    std::vector<double> q_flow;  // per line
    std::vector<double> p_inj;   // per bus (copy of the inputs)
    std::vector<double> q_inj;
    double exchange_dn = 0.0;  // import from the upstream network
};

// Exact solve of the linear model: flows by leaf-to-root accumulation of
// downstream injections, then squared voltages by root-to-leaf drops
// v_j = v_i - 2 (r P + x Q).
inline OperatingPoint solve_lindistflow(const NetworkCase& net, const Topology& topo,
                                        std::vector<double> p_inj, std::vector<double> q_inj) {
    const std::size_t n = net.n_buses();
    detail::require(p_inj.size() == n && q_inj.size() == n,
                    "injection vectors must have one entry per bus");
    OperatingPoint op;
    op.p_flow.assign(net.n_lines(), 0.0);
    op.q_flow.assign(net.n_lines(), 0.0);
    std::vector<double> p_down = p_inj;
    std::vector<double> q_down = q_inj;
    for (std::size_t i = topo.bfs_order.size(); i-- > 0;) {
        const std::size_t u = topo.bfs_order[i];
        if (topo.parent[u] < 0) continue;
        const auto l = static_cast<std::size_t>(topo.parent_line[u]);
        op.p_flow[l] = p_down[u];
        op.q_flow[l] = q_down[u];
        p_down[static_cast<std::size_t>(topo.parent[u])] += p_down[u];
        q_down[static_cast<std::size_t>(topo.parent[u])] += q_down[u];
    }
    op.v_sq.assign(n, 1.0);
    for (const std::size_t u : topo.bfs_order) {
        if (topo.parent[u] < 0) continue;
        const auto l = static_cast<std::size_t>(topo.parent_line[u]);
        op.v_sq[u] = op.v_sq[static_cast<std::size_t>(topo.parent[u])] -
                     2.0 * (net.lines[l].r * op.p_flow[l] + net.lines[l].x * op.q_flow[l]);
    }
    op.exchange_dn = p_down[net.slack];
    op.p_inj = std::move(p_inj);
    op.q_inj = std::move(q_inj);
    return op;
}

// Nodal-balance residual of a solved point, for verification: at every bus,
// inflow minus outflow minus injection.
inline double max_balance_residual(const NetworkCase& net, const Topology& topo,
                                   const OperatingPoint& op) {
    double worst = 0.0;
    for (std::size_t u = 0; u < net.n_buses(); ++u) {
        double in_p = 0.0, in_q = 0.0;
        if (topo.parent[u] >= 0) {
            const auto l = static_cast<std::size_t>(topo.parent_line[u]);
            in_p = op.p_flow[l];
            in_q = op.q_flow[l];
        } else {
            in_p = op.exchange_dn;
            in_q = 0.0;
            for (std::size_t v = 0; v < net.n_buses(); ++v) in_q += op.q_inj[v];
        }
        double out_p = 0.0, out_q = 0.0;
        for (const std::size_t c : topo.children[u]) {
            const auto l = static_cast<std::size_t>(topo.parent_line[c]);
            out_p += op.p_flow[l];
            out_q += op.q_flow[l];
        }
        worst = std::max(worst, std::abs(in_p - out_p - op.p_inj[u]));
        worst = std::max(worst, std::abs(in_q - out_q - op.q_inj[u]));
    }
    return worst;
}

// Linear sensitivities of the model. With consumption-positive injections,
//   d v_sq[b] / d p[e] = -2 * R_common(b, e),
//   d v_sq[b] / d q[e] = -2 * X_common(b, e),
//   d p_flow[l] / d p[e] = 1 if e lies in the subtree under l,
// where R/X_common sum the impedances on the shared root-path segment.
struct LinDistFlowSensitivity {
    std::vector<std::vector<double>> r_common;  // n x n
    std::vector<std::vector<double>> x_common;
    std::vector<std::vector<bool>> line_feeds;  // line x bus: subtree membership

    static LinDistFlowSensitivity build(const NetworkCase& net, const Topology& topo) {
        const std::size_t n = net.n_buses();
        LinDistFlowSensitivity s;
        // Cumulative impedance from the root, then common-path values via
        // ancestor walks; n is small enough for the quadratic construction.
        std::vector<double> r_path(n, 0.0), x_path(n, 0.0);
        std::vector<int> depth(n, 0);
        for (const std::size_t u : topo.bfs_order) {
            if (topo.parent[u] < 0) continue;
            const auto p = static_cast<std::size_t>(topo.parent[u]);
            const auto l = static_cast<std::size_t>(topo.parent_line[u]);
            r_path[u] = r_path[p] + net.lines[l].r;
            x_path[u] = x_path[p] + net.lines[l].x;
            depth[u] = depth[p] + 1;
        }
        s.r_common.assign(n, std::vector<double>(n, 0.0));
        s.x_common.assign(n, std::vector<double>(n, 0.0));
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a; b < n; ++b) {
                std::size_t u = a, v = b;
                while (depth[u] > depth[v]) u = static_cast<std::size_t>(topo.parent[u]);
                while (depth[v] > depth[u]) v = static_cast<std::size_t>(topo.parent[v]);
                while (u != v) {
                    u = static_cast<std::size_t>(topo.parent[u]);
                    v = static_cast<std::size_t>(topo.parent[v]);
                }
                s.r_common[a][b] = s.r_common[b][a] = r_path[u];
                s.x_common[a][b] = s.x_common[b][a] = x_path[u];
            }
        }
        s.line_feeds.assign(net.n_lines(), std::vector<bool>(n, false));
        for (std::size_t b = 0; b < n; ++b) {
            std::size_t u = b;
            while (topo.parent[u] >= 0) {
                s.line_feeds[static_cast<std::size_t>(topo.parent_line[u])][b] = true;
                u = static_cast<std::size_t>(topo.parent[u]);
            }
        }
        return s;
    }

    // d v_sq[bus] / d (EC active exchange at ec_bus), including the
    // proportional reactive share.
    double dvsq_dexchange(std::size_t bus, std::size_t ec_bus, double reactive_ratio) const {
        return -2.0 * (r_common[bus][ec_bus] + x_common[bus][ec_bus] * reactive_ratio);
    }

    double dflow_dexchange(std::size_t line, std::size_t ec_bus) const {
        return line_feeds[line][ec_bus] ? 1.0 : 0.0;
    }
};

}  // namespace qcoord
