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
#include <vector>

#include "qcoord/vqc.hpp"

namespace qcoord {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// LSTM cell with every gate mechanism replaced by a VQC:
//   v_t = [h_{t-1}, x_t]
//   f_t = sigmoid(VQC1(v_t)),  i_t = sigmoid(VQC2(v_t)),  o_t = sigmoid(VQC4(v_t))
//   c~_t = tanh(VQC3(v_t)),    c_t = f_t*c_{t-1} + i_t*c~_t
//   h_t = VQC5(o_t * tanh(c_t)),  y_t = VQC6(h_t)
// VQC1..VQC4 read the concatenation (hidden+input qubits) and emit
// hidden_size values; VQC5/VQC6 run on hidden_size qubits, matching the
// dimensions the update equations force on them.
struct QLstmCellSpec {
    std::size_t input_size = 2;
    std::size_t hidden_size = 3;
    std::size_t output_size = 3;
    VqcSpec vqc1, vqc2, vqc3, vqc4;  // gates, on hidden+input qubits
    VqcSpec vqc5;                    // state update, on hidden qubits
    VqcSpec vqc6;                    // output head, on hidden qubits

    static QLstmCellSpec make(std::size_t input_size, std::size_t hidden_size,
                              std::size_t output_size, std::size_t n_layers,
                              Entanglement entanglement = Entanglement::Ring) {
        QLstmCellSpec spec;
        spec.input_size = input_size;
        spec.hidden_size = hidden_size;
        spec.output_size = output_size;
        VqcSpec gate;
        gate.n_qubits = hidden_size + input_size;
        gate.n_layers = n_layers;
        gate.entanglement = entanglement;
        gate.n_outputs = hidden_size;
        spec.vqc1 = spec.vqc2 = spec.vqc3 = spec.vqc4 = gate;
        VqcSpec update;
        update.n_qubits = hidden_size;
        update.n_layers = n_layers;
        update.entanglement = entanglement;
        update.n_outputs = hidden_size;
        spec.vqc5 = update;
        spec.vqc6 = update;
        spec.vqc6.n_outputs = output_size;
        return spec;
    }

    void validate() const {
        detail::require(input_size >= 1 && hidden_size >= 1 && output_size >= 1,
                        "cell dimensions must be >= 1");
        for (const VqcSpec* g : {&vqc1, &vqc2, &vqc3, &vqc4}) {
            g->validate();
            detail::require(g->n_qubits == hidden_size + input_size,
                            "gate VQCs must consume the [h, x] concatenation");
            detail::require(g->n_outputs == hidden_size,
                            "gate VQCs must emit hidden_size values");
        }
        vqc5.validate();
        detail::require(vqc5.n_qubits == hidden_size && vqc5.n_outputs == hidden_size,
                        "VQC5 must map hidden_size to hidden_size");
        vqc6.validate();
        detail::require(vqc6.n_qubits == hidden_size && vqc6.n_outputs == output_size,
                        "VQC6 must map hidden_size to output_size");
    }

    std::size_t parameter_count() const {
        return vqc1.parameter_count() + vqc2.parameter_count() + vqc3.parameter_count() +
               vqc4.parameter_count() + vqc5.parameter_count() + vqc6.parameter_count();
    }
};

struct QLstmParams {
    std::array<ParameterVector, 6> theta;  // VQC1..VQC6

    static QLstmParams zeros(const QLstmCellSpec& spec) {
        QLstmParams p;
        const VqcSpec* specs[6] = {&spec.vqc1, &spec.vqc2, &spec.vqc3,
                                   &spec.vqc4, &spec.vqc5, &spec.vqc6};
        for (int i = 0; i < 6; ++i) p.theta[i].assign(specs[i]->parameter_count(), 0.0);
        return p;
    }
};

struct QLstmStepResult {
    std::vector<double> h;
    std::vector<double> c;
    std::vector<double> y;
};

// Evaluator bundle reused across time steps and samples.
class QLstmCellEvaluator {
public:
    explicit QLstmCellEvaluator(QLstmCellSpec spec)
        : spec_(std::move(spec)),
          gate_eval_(spec_.vqc1),
          update_eval_(spec_.vqc5),
          output_eval_(spec_.vqc6) {
        spec_.validate();
    }

    const QLstmCellSpec& spec() const { return spec_; }

    // Exposes the shared workspaces; gate VQCs 1..4 share one evaluator shape.
    VqcEvaluator& gate_eval() { return gate_eval_; }
    VqcEvaluator& update_eval() { return update_eval_; }
    VqcEvaluator& output_eval() { return output_eval_; }

    QLstmStepResult step(const QLstmParams& params, const std::vector<double>& x,
                         const std::vector<double>& h_prev, const std::vector<double>& c_prev,
                         double noise_level = 0.0, Rng* noise_rng = nullptr) {
        detail::require(x.size() == spec_.input_size, "x_t dimension mismatch");
        detail::require(h_prev.size() == spec_.hidden_size, "h_{t-1} dimension mismatch");
        detail::require(c_prev.size() == spec_.hidden_size, "c_{t-1} dimension mismatch");
        const std::size_t hd = spec_.hidden_size;

        std::vector<double> v(hd + spec_.input_size);
        std::copy(h_prev.begin(), h_prev.end(), v.begin());
        std::copy(x.begin(), x.end(), v.begin() + static_cast<std::ptrdiff_t>(hd));

        std::vector<double> a1(hd), a2(hd), a3(hd), a4(hd);
        gate_eval_.forward(v.data(), params.theta[0].data(), a1.data(), noise_level, noise_rng);
        gate_eval_.forward(v.data(), params.theta[1].data(), a2.data(), noise_level, noise_rng);
        gate_eval_.forward(v.data(), params.theta[2].data(), a3.data(), noise_level, noise_rng);
        gate_eval_.forward(v.data(), params.theta[3].data(), a4.data(), noise_level, noise_rng);

        QLstmStepResult r;
        r.c.resize(hd);
        std::vector<double> u(hd);
        for (std::size_t k = 0; k < hd; ++k) {
            const double f = sigmoid(a1[k]);
            const double i = sigmoid(a2[k]);
            const double o = sigmoid(a4[k]);
            const double ct = f * c_prev[k] + i * std::tanh(a3[k]);
            r.c[k] = ct;
            u[k] = o * std::tanh(ct);
        }
        r.h.resize(hd);
        update_eval_.forward(u.data(), params.theta[4].data(), r.h.data(), noise_level,
                             noise_rng);
        r.y.resize(spec_.output_size);
        output_eval_.forward(r.h.data(), params.theta[5].data(), r.y.data(), noise_level,
                             noise_rng);
        return r;
    }

private:
    QLstmCellSpec spec_;
    VqcEvaluator gate_eval_;
    VqcEvaluator update_eval_;
    VqcEvaluator output_eval_;
};

inline QLstmStepResult qlstm_step(const QLstmCellSpec& spec, const QLstmParams& params,
                                  const std::vector<double>& x,
                                  const std::vector<double>& h_prev,
                                  const std::vector<double>& c_prev) {
    QLstmCellEvaluator eval(spec);
    return eval.step(params, x, h_prev, c_prev);
}

}  // namespace qcoord
