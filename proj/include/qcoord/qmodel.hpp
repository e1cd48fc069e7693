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
#include <vector>

#include "qcoord/qlstm.hpp"
#include "qcoord/qtcn.hpp"

namespace qcoord {

// Min-max scaling constants persisted with every model and dataset.
struct Scaling {
    double price_min = 0.0;
    double price_max = 1.0;
    double resp_min = 0.0;
    double resp_max = 1.0;

    double norm_price(double p) const {
        const double r = (p - price_min) / (price_max - price_min);
        return std::clamp(r, 0.0, 1.0);
    }
    double norm_resp(double v) const { return (v - resp_min) / (resp_max - resp_min); }
    double denorm_resp(double x) const { return resp_min + x * (resp_max - resp_min); }
};

// Hybrid surrogate: Q-TCN feature extraction over the price series, Q-LSTM
// unroll over the compacted feature sequence, then a depth-1 affine head
// (shared weights, per-step bias) mapped back to physical units.
struct QTcnLstmModel {
    std::size_t horizon = 96;
    QTcnLayerSpec tcn;
    ParameterVector tcn_theta;
    QLstmCellSpec lstm;
    QLstmParams lstm_params;
    std::vector<double> head_weights;  // lstm.output_size entries
    std::vector<double> head_bias;     // one entry per horizon step
    Scaling scaling;

    void validate() const {
        detail::require(horizon >= 1, "horizon must be >= 1");
        tcn.validate();
        lstm.validate();
        detail::require(lstm.input_size == tcn.vqc.n_outputs,
                        "Q-LSTM input size must match the Q-TCN feature width");
        detail::require(tcn_theta.size() == tcn.vqc.parameter_count(),
                        "Q-TCN parameter count mismatch");
        const VqcSpec* specs[6] = {&lstm.vqc1, &lstm.vqc2, &lstm.vqc3,
                                   &lstm.vqc4, &lstm.vqc5, &lstm.vqc6};
        for (int i = 0; i < 6; ++i)
            detail::require(lstm_params.theta[i].size() == specs[i]->parameter_count(),
                            "Q-LSTM parameter count mismatch");
        detail::require(head_weights.size() == lstm.output_size,
                        "head weight count must equal the cell output size");
        detail::require(head_bias.size() == horizon, "head bias must have one entry per step");
    }

    std::size_t count_parameters() const {
        std::size_t total = tcn_theta.size();
        for (const auto& t : lstm_params.theta) total += t.size();
        total += head_weights.size() + head_bias.size();
        return total;
    }

    std::size_t lstm_steps() const { return tcn.output_length(horizon); }

    std::size_t feature_index_of_step(std::size_t t) const {
        return std::min(t / tcn.stride, lstm_steps() - 1);
    }

    static QTcnLstmModel make_default(std::size_t horizon, std::uint64_t seed) {
        QTcnLstmModel m;
        m.horizon = horizon;

        m.tcn.kernel_size = 4;
        m.tcn.dilation = 1;
        m.tcn.stride = 2;
        m.tcn.vqc.n_qubits = 4;
        m.tcn.vqc.n_layers = 3;
        m.tcn.vqc.entanglement = Entanglement::Skip;
        m.tcn.vqc.n_outputs = 3;

        m.lstm = QLstmCellSpec::make(/*input=*/3, /*hidden=*/3, /*output=*/3,
                                     /*layers=*/2, Entanglement::Ring);

        Rng rng(seed ^ 0x51f15eedULL);
        const auto init = [&](ParameterVector& v, std::size_t count) {
            v.resize(count);
            for (double& x : v) x = rng.uniform(-0.2, 0.2);
        };
        init(m.tcn_theta, m.tcn.vqc.parameter_count());
        const VqcSpec* specs[6] = {&m.lstm.vqc1, &m.lstm.vqc2, &m.lstm.vqc3,
                                   &m.lstm.vqc4, &m.lstm.vqc5, &m.lstm.vqc6};
        for (int i = 0; i < 6; ++i) init(m.lstm_params.theta[i], specs[i]->parameter_count());
        init(m.head_weights, m.lstm.output_size);
        for (double& w : m.head_weights) w *= 2.0;
        m.head_bias.assign(horizon, 0.5);
        return m;
    }
};

// Holds the statevector workspaces so repeated forwards (training loops,
// Jacobian sweeps in the coordination loop) do not reallocate.
class ModelEvaluator {
public:
    explicit ModelEvaluator(const QTcnLstmModel& model)
        : model_(&model), tcn_eval_(model.tcn.vqc), cell_eval_(model.lstm) {
        model.validate();
    }

    const QTcnLstmModel& model() const { return *model_; }

    // Normalized price series in, normalized response out.
    std::vector<double> forward_normalized(const std::vector<double>& x_norm,
                                           double noise_level = 0.0, Rng* noise_rng = nullptr) {
        detail::require(x_norm.size() == model_->horizon, "price series has the wrong horizon");
        const std::size_t steps = model_->lstm_steps();
        std::vector<double> window;
        std::vector<double> feat(model_->tcn.vqc.n_outputs);
        std::vector<double> h(model_->lstm.hidden_size, 0.0);
        std::vector<double> c(model_->lstm.hidden_size, 0.0);
        std::vector<std::vector<double>> ys(steps);
        std::vector<double> x_step(model_->lstm.input_size);
        for (std::size_t m = 0; m < steps; ++m) {
            model_->tcn.window(x_norm, m, window);
            tcn_eval_.forward(window.data(), model_->tcn_theta.data(), feat.data(), noise_level,
                              noise_rng);
            std::copy(feat.begin(), feat.end(), x_step.begin());
            QLstmStepResult r =
                cell_eval_.step(model_->lstm_params, x_step, h, c, noise_level, noise_rng);
            h = std::move(r.h);
            c = std::move(r.c);
            ys[m] = std::move(r.y);
        }
        std::vector<double> out(model_->horizon);
        for (std::size_t t = 0; t < model_->horizon; ++t) {
            const std::vector<double>& y = ys[model_->feature_index_of_step(t)];
            double v = model_->head_bias[t];
            for (std::size_t k = 0; k < y.size(); ++k) v += model_->head_weights[k] * y[k];
            out[t] = v;
        }
        return out;
    }

    // Physical price series in, physical response out.
    std::vector<double> forward(const std::vector<double>& price, double noise_level = 0.0,
                                Rng* noise_rng = nullptr) {
        std::vector<double> x(price.size());
        for (std::size_t t = 0; t < price.size(); ++t)
            x[t] = model_->scaling.norm_price(price[t]);
        std::vector<double> out = forward_normalized(x, noise_level, noise_rng);
        for (double& v : out) v = model_->scaling.denorm_resp(v);
        return out;
    }

private:
    const QTcnLstmModel* model_;
    VqcEvaluator tcn_eval_;
    QLstmCellEvaluator cell_eval_;
};

inline std::vector<double> model_forward(const QTcnLstmModel& model,
                                         const std::vector<double>& price) {
    ModelEvaluator eval(model);
    return eval.forward(price);
}

}  // namespace qcoord
