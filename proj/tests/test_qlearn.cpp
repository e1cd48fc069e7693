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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "qcoord/model_io.hpp"
#include "qcoord/qlstm.hpp"
#include "qcoord/qmodel.hpp"
#include "qcoord/qtcn.hpp"

namespace {

using namespace qcoord;

QTcnLayerSpec tcn_spec(std::size_t kernel, std::size_t dilation, std::size_t stride,
                       std::size_t outputs) {
    QTcnLayerSpec layer;
    layer.kernel_size = kernel;
    layer.dilation = dilation;
    layer.stride = stride;
    layer.vqc.n_qubits = kernel;
    layer.vqc.n_layers = 2;
    layer.vqc.entanglement = Entanglement::Skip;
    layer.vqc.n_outputs = outputs;
    return layer;
}

TEST(Qtcn, StrideOnePreservesLength) {
    const QTcnLayerSpec layer = tcn_spec(4, 1, 1, 2);
    const ParameterVector theta(layer.vqc.parameter_count(), 0.3);
    std::vector<double> series(12, 0.5);
    const auto feats = qtcn_forward(layer, theta, series);
    EXPECT_EQ(feats.size(), series.size());
    EXPECT_EQ(feats[0].size(), 2u);
}

TEST(Qtcn, ZeroInputZeroParamsGiveOnes) {
    const QTcnLayerSpec layer = tcn_spec(4, 1, 1, 4);
    const ParameterVector theta(layer.vqc.parameter_count(), 0.0);
    const auto feats = qtcn_forward(layer, theta, std::vector<double>(8, 0.0));
    for (const auto& f : feats)
        for (double v : f) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(Qtcn, WindowSlicingOracle) {
    // T = 8, kernel 4, stride 2 -> 4 positions, each equal to a direct
    // vqc_forward on the left-padded window.
    const QTcnLayerSpec layer = tcn_spec(4, 1, 2, 3);
    Rng rng(12);
    ParameterVector theta(layer.vqc.parameter_count());
    for (double& t : theta) t = rng.uniform(-M_PI, M_PI);
    std::vector<double> series(8);
    for (double& x : series) x = rng.uniform();

    const auto feats = qtcn_forward(layer, theta, series);
    ASSERT_EQ(feats.size(), 4u);
    for (std::size_t m = 0; m < 4; ++m) {
        std::vector<double> window(4);
        const std::ptrdiff_t t = static_cast<std::ptrdiff_t>(2 * m);
        for (std::size_t j = 0; j < 4; ++j) {
            const std::ptrdiff_t idx = t - static_cast<std::ptrdiff_t>(3 - j);
            window[j] = idx >= 0 ? series[static_cast<std::size_t>(idx)] : 0.0;
        }
        const std::vector<double> direct = vqc_forward(layer.vqc, theta, window);
        for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(feats[m][k], direct[k], 1e-12);
    }
}

TEST(Qtcn, CausalityUnderPerturbation) {
    const QTcnLayerSpec layer = tcn_spec(4, 2, 1, 2);
    Rng rng(9);
    ParameterVector theta(layer.vqc.parameter_count());
    for (double& t : theta) t = rng.uniform(-M_PI, M_PI);
    std::vector<double> series(10);
    for (double& x : series) x = rng.uniform();
    const auto base = qtcn_forward(layer, theta, series);

    for (std::size_t t = 0; t < series.size(); ++t) {
        std::vector<double> bumped = series;
        bumped[t] = 1.0 - bumped[t];
        const auto out = qtcn_forward(layer, theta, bumped);
        for (std::size_t m = 0; m < t; ++m)
            for (std::size_t k = 0; k < 2; ++k)
                EXPECT_EQ(out[m][k], base[m][k]) << "t=" << t << " m=" << m;
    }
}

TEST(Qtcn, RejectsBadInput) {
    const QTcnLayerSpec layer = tcn_spec(4, 1, 1, 2);
    const ParameterVector theta(layer.vqc.parameter_count(), 0.0);
    EXPECT_THROW(qtcn_forward(layer, theta, {}), std::invalid_argument);
    EXPECT_THROW(qtcn_forward(layer, theta, {0.1, 0.2}), std::invalid_argument);
}

TEST(Qlstm, GateActivationsInOpenUnitInterval) {
    const QLstmCellSpec spec = QLstmCellSpec::make(2, 3, 3, 2);
    Rng rng(44);
    QLstmParams params = QLstmParams::zeros(spec);
    for (auto& t : params.theta)
        for (double& v : t) v = rng.uniform(-M_PI, M_PI);
    QLstmCellEvaluator eval(spec);
    const std::vector<double> x = {0.3, 0.9};
    const std::vector<double> h(3, 0.0), c(3, 0.0);

    // Gate values are sigmoids of bounded expectations, so they live inside
    // (sigmoid(-1), sigmoid(1)).
    VqcEvaluator gate(spec.vqc1);
    std::vector<double> v(5);
    std::copy(h.begin(), h.end(), v.begin());
    std::copy(x.begin(), x.end(), v.begin() + 3);
    for (int g = 0; g < 4; ++g) {
        const std::vector<double> a = gate.forward(v, params.theta[static_cast<std::size_t>(g)]);
        for (double av : a) {
            const double s = sigmoid(av);
            EXPECT_GT(s, sigmoid(-1.0) - 1e-12);
            EXPECT_LT(s, sigmoid(1.0) + 1e-12);
        }
    }
}

TEST(Qlstm, ZeroCellAndZeroCandidateGiveZeroCell) {
    // c_prev = 0 and VQC3 output 0 force c_t = 0 regardless of the gates.
    const QLstmCellSpec spec = QLstmCellSpec::make(1, 2, 2, 1);
    QLstmParams params = QLstmParams::zeros(spec);
    // Encode x = 0.5 on a 3-qubit gate VQC; rotate each qubit by pi/2 in the
    // trainable layer of VQC3 so its <Z> outputs vanish.
    for (double& v : params.theta[2]) v = M_PI / 2.0;
    QLstmCellEvaluator eval(spec);
    const QLstmStepResult r =
        eval.step(params, {0.0}, std::vector<double>(2, 0.0), std::vector<double>(2, 0.0));
    for (double c : r.c) EXPECT_NEAR(c, 0.0, 1e-9);
}

TEST(Qlstm, StepMatchesHandComposition) {
    // hidden = 2, all theta = 0: recompute Eq-style composition from
    // vqc_forward pieces and compare.
    const QLstmCellSpec spec = QLstmCellSpec::make(2, 2, 2, 1);
    QLstmParams params = QLstmParams::zeros(spec);
    Rng rng(61);
    for (auto& t : params.theta)
        for (double& v : t) v = rng.uniform(-0.8, 0.8);
    const std::vector<double> x = {0.4, 0.7};
    const std::vector<double> h_prev = {0.2, -0.3};
    const std::vector<double> c_prev = {0.1, 0.5};

    const QLstmStepResult got = qlstm_step(spec, params, x, h_prev, c_prev);

    std::vector<double> v = {h_prev[0], h_prev[1], x[0], x[1]};
    const auto a1 = vqc_forward(spec.vqc1, params.theta[0], v);
    const auto a2 = vqc_forward(spec.vqc2, params.theta[1], v);
    const auto a3 = vqc_forward(spec.vqc3, params.theta[2], v);
    const auto a4 = vqc_forward(spec.vqc4, params.theta[3], v);
    std::vector<double> c(2), u(2);
    for (std::size_t k = 0; k < 2; ++k) {
        c[k] = sigmoid(a1[k]) * c_prev[k] + sigmoid(a2[k]) * std::tanh(a3[k]);
        u[k] = sigmoid(a4[k]) * std::tanh(c[k]);
    }
    const auto h = vqc_forward(spec.vqc5, params.theta[4], u);
    const auto y = vqc_forward(spec.vqc6, params.theta[5], h);
    for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_NEAR(got.c[k], c[k], 1e-12);
        EXPECT_NEAR(got.h[k], h[k], 1e-12);
    }
    EXPECT_NEAR(got.y[0], y[0], 1e-12);
}

TEST(Qlstm, DimensionMismatchRejected) {
    const QLstmCellSpec spec = QLstmCellSpec::make(2, 3, 3, 2);
    QLstmParams params = QLstmParams::zeros(spec);
    QLstmCellEvaluator eval(spec);
    EXPECT_THROW(eval.step(params, {0.1}, std::vector<double>(3, 0.0),
                           std::vector<double>(3, 0.0)),
                 std::invalid_argument);
}

TEST(Model, OutputLengthAndDeterminism) {
    const QTcnLstmModel model = QTcnLstmModel::make_default(96, 7);
    std::vector<double> price(96);
    for (std::size_t t = 0; t < 96; ++t)
        price[t] = 0.5 + 0.3 * std::sin(0.2 * static_cast<double>(t));
    const std::vector<double> r1 = model_forward(model, price);
    const std::vector<double> r2 = model_forward(model, price);
    EXPECT_EQ(r1.size(), 96u);
    EXPECT_EQ(r1, r2);
}

TEST(Model, CountParametersIsExactSum) {
    const QTcnLstmModel model = QTcnLstmModel::make_default(96, 1);
    std::size_t expected = model.tcn_theta.size();
    for (const auto& t : model.lstm_params.theta) expected += t.size();
    expected += model.head_weights.size() + model.head_bias.size();
    EXPECT_EQ(model.count_parameters(), expected);

    // 4-qubit, 3-layer VQC has 12 parameters.
    EXPECT_EQ(model.tcn.vqc.parameter_count(), 12u);

    // Head-less configuration contributes zero head parameters.
    QTcnLstmModel bare = model;
    bare.head_weights.clear();
    bare.head_bias.clear();
    EXPECT_EQ(bare.count_parameters() + model.head_weights.size() + model.head_bias.size(),
              model.count_parameters());
}

TEST(Model, WrongHorizonRejected) {
    const QTcnLstmModel model = QTcnLstmModel::make_default(96, 7);
    ModelEvaluator eval(model);
    EXPECT_THROW(eval.forward(std::vector<double>(95, 0.5)), std::invalid_argument);
}

TEST(ModelIo, JsonRoundTripReproducesForward) {
    const QTcnLstmModel model = QTcnLstmModel::make_default(48, 3);
    const nlohmann::json j = model_to_json(model);
    const QTcnLstmModel back = model_from_json(j);
    std::vector<double> price(48);
    for (std::size_t t = 0; t < 48; ++t)
        price[t] = 0.4 + 0.2 * std::cos(0.3 * static_cast<double>(t));
    const auto r1 = model_forward(model, price);
    const auto r2 = model_forward(back, price);
    for (std::size_t t = 0; t < 48; ++t) EXPECT_EQ(r1[t], r2[t]);
    EXPECT_EQ(back.count_parameters(), model.count_parameters());
}

}  // namespace
