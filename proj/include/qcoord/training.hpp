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
#include <numeric>
#include <vector>

#include "qcoord/dataset.hpp"
#include "qcoord/qmodel.hpp"

namespace qcoord {

struct TrainingConfig {
    double learning_rate = 0.01;
    std::size_t epochs = 25;
    std::size_t batch_size = 32;
    double beta1 = 0.9;   // Adam first-moment decay
    double beta2 = 0.999;
    double eps = 1e-8;
    double noise_level = 0.0;
    std::uint64_t seed = 0;
    double test_fraction = 0.2;  // trailing rows form the test split

    void validate() const {
        detail::require(learning_rate > 0.0, "learning rate must be positive");
        detail::require(epochs >= 1 && batch_size >= 1, "epochs and batch size must be >= 1");
        detail::require(noise_level >= 0.0 && noise_level <= 1.0,
                        "noise level must be in [0, 1]");
        detail::require(test_fraction >= 0.0 && test_fraction < 1.0,
                        "test fraction must be in [0, 1)");
    }
};

struct TrainReport {
    std::vector<double> loss_trace;  // per-epoch mean training MSE, normalized scale
    double final_train_mse = 0.0;
    double test_mse = 0.0;  // noise-free, normalized scale
};

namespace detail {

// Flat view over every trainable parameter of the hybrid model, in a fixed
// order: tcn | vqc1..vqc6 | head weights | head bias.
struct ParamView {
    std::vector<double*> ptrs;
    std::vector<std::size_t> sizes;
    std::size_t total = 0;

    explicit ParamView(QTcnLstmModel& m) {
        add(m.tcn_theta);
        for (auto& t : m.lstm_params.theta) add(t);
        add(m.head_weights);
        add(m.head_bias);
    }

    void add(std::vector<double>& v) {
        ptrs.push_back(v.data());
        sizes.push_back(v.size());
        total += v.size();
    }

    double get(std::size_t flat) const {
        for (std::size_t g = 0; g < ptrs.size(); ++g) {
            if (flat < sizes[g]) return ptrs[g][flat];
            flat -= sizes[g];
        }
        throw std::out_of_range("flat parameter index");
    }

    void axpy(const std::vector<double>& delta) {
        std::size_t flat = 0;
        for (std::size_t g = 0; g < ptrs.size(); ++g)
            for (std::size_t i = 0; i < sizes[g]; ++i) ptrs[g][i] += delta[flat++];
    }
};

}  // namespace detail

// Per-sample forward/backward pass. The loss gradient flows through the
// classical recurrence (cell state, head) analytically and through every VQC
// via parameter-shift Jacobians with respect to both its angles and its
// encoded inputs; raw price windows are data, so no gradient is propagated
// past the Q-TCN encoding.
class ModelGradientWorkspace {
public:
    explicit ModelGradientWorkspace(const QTcnLstmModel& model)
        : model_(&model),
          tcn_eval_(model.tcn.vqc),
          gate_eval_(model.lstm.vqc1),
          update_eval_(model.lstm.vqc5),
          output_eval_(model.lstm.vqc6) {
        model.validate();
        const QLstmCellSpec& cell = model.lstm;
        hd_ = cell.hidden_size;
        fd_ = cell.input_size;
        od_ = cell.output_size;
        dd_ = hd_ + fd_;
        steps_ = model.lstm_steps();
        pt_ = model.tcn.vqc.parameter_count();
        pg_ = cell.vqc1.parameter_count();
        p5_ = cell.vqc5.parameter_count();
        p6_ = cell.vqc6.parameter_count();
        grad_size_ = pt_ + 4 * pg_ + p5_ + p6_ + od_ + model.horizon;
    }

    std::size_t gradient_size() const { return grad_size_; }

    // Returns the sample loss; accumulates the sample gradient into grad
    // (layout matches detail::ParamView).
    double accumulate(const std::vector<double>& x_norm, const std::vector<double>& y_norm,
                      std::vector<double>& grad, double noise_level = 0.0,
                      Rng* noise_rng = nullptr) {
        const QTcnLstmModel& m = *model_;
        const std::size_t T = m.horizon;
        const std::size_t M = steps_;

        // ---- forward, recording activations -------------------------------
        feats_.assign(M, std::vector<double>(fd_));
        v_.assign(M, std::vector<double>(dd_));
        a1_.assign(M, std::vector<double>(hd_));
        a2_.assign(M, std::vector<double>(hd_));
        a3_.assign(M, std::vector<double>(hd_));
        a4_.assign(M, std::vector<double>(hd_));
        c_.assign(M, std::vector<double>(hd_));
        u_.assign(M, std::vector<double>(hd_));
        h_.assign(M, std::vector<double>(hd_));
        y_.assign(M, std::vector<double>(od_));

        std::vector<double> window;
        std::vector<double> h_prev(hd_, 0.0), c_prev(hd_, 0.0);
        for (std::size_t mstep = 0; mstep < M; ++mstep) {
            m.tcn.window(x_norm, mstep, window);
            tcn_eval_.forward(window.data(), m.tcn_theta.data(), feats_[mstep].data(),
                              noise_level, noise_rng);
            std::copy(h_prev.begin(), h_prev.end(), v_[mstep].begin());
            std::copy(feats_[mstep].begin(), feats_[mstep].end(),
                      v_[mstep].begin() + static_cast<std::ptrdiff_t>(hd_));
            gate_eval_.forward(v_[mstep].data(), m.lstm_params.theta[0].data(),
                               a1_[mstep].data(), noise_level, noise_rng);
            gate_eval_.forward(v_[mstep].data(), m.lstm_params.theta[1].data(),
                               a2_[mstep].data(), noise_level, noise_rng);
            gate_eval_.forward(v_[mstep].data(), m.lstm_params.theta[2].data(),
                               a3_[mstep].data(), noise_level, noise_rng);
            gate_eval_.forward(v_[mstep].data(), m.lstm_params.theta[3].data(),
                               a4_[mstep].data(), noise_level, noise_rng);
            for (std::size_t k = 0; k < hd_; ++k) {
                const double f = sigmoid(a1_[mstep][k]);
                const double i = sigmoid(a2_[mstep][k]);
                const double o = sigmoid(a4_[mstep][k]);
                c_[mstep][k] = f * c_prev[k] + i * std::tanh(a3_[mstep][k]);
                u_[mstep][k] = o * std::tanh(c_[mstep][k]);
            }
            update_eval_.forward(u_[mstep].data(), m.lstm_params.theta[4].data(),
                                 h_[mstep].data(), noise_level, noise_rng);
            output_eval_.forward(h_[mstep].data(), m.lstm_params.theta[5].data(),
                                 y_[mstep].data(), noise_level, noise_rng);
            h_prev = h_[mstep];
            c_prev = c_[mstep];
        }

        double loss = 0.0;
        std::vector<double> dout(T);
        for (std::size_t t = 0; t < T; ++t) {
            const std::vector<double>& y = y_[m.feature_index_of_step(t)];
            double out = m.head_bias[t];
            for (std::size_t k = 0; k < od_; ++k) out += m.head_weights[k] * y[k];
            const double e = out - y_norm[t];
            loss += e * e;
            dout[t] = 2.0 * e / static_cast<double>(T);
        }
        loss /= static_cast<double>(T);

        // ---- backward ------------------------------------------------------
        const std::size_t off_tcn = 0;
        const std::size_t off_g1 = pt_;
        const std::size_t off_g5 = pt_ + 4 * pg_;
        const std::size_t off_g6 = off_g5 + p5_;
        const std::size_t off_w = off_g6 + p6_;
        const std::size_t off_b = off_w + od_;

        std::vector<std::vector<double>> dy(M, std::vector<double>(od_, 0.0));
        for (std::size_t t = 0; t < T; ++t) {
            const std::size_t mstep = m.feature_index_of_step(t);
            for (std::size_t k = 0; k < od_; ++k) {
                dy[mstep][k] += m.head_weights[k] * dout[t];
                grad[off_w + k] += y_[mstep][k] * dout[t];
            }
            grad[off_b + t] += dout[t];
        }

        std::vector<double> dh_carry(hd_, 0.0), dc(hd_, 0.0);
        std::vector<double> dh(hd_), du(hd_), dv(dd_);
        std::vector<double> da(hd_);
        jac6_.resize(od_ * std::max(p6_, hd_));
        jac5_.resize(hd_ * std::max(p5_, hd_));
        jacg_.resize(hd_ * std::max(pg_, dd_));
        dfeat_.assign(M, std::vector<double>(fd_, 0.0));

        for (std::size_t mstep = M; mstep-- > 0;) {
            // y = VQC6(h)
            output_eval_.param_jacobian(h_[mstep].data(), m.lstm_params.theta[5].data(),
                                        jac6_.data(), noise_level, noise_rng);
            for (std::size_t k = 0; k < od_; ++k)
                for (std::size_t j = 0; j < p6_; ++j)
                    grad[off_g6 + j] += jac6_[k * p6_ + j] * dy[mstep][k];
            output_eval_.input_jacobian(h_[mstep].data(), m.lstm_params.theta[5].data(),
                                        jac6_.data(), noise_level, noise_rng);
            for (std::size_t i = 0; i < hd_; ++i) {
                double acc = dh_carry[i];
                for (std::size_t k = 0; k < od_; ++k) acc += jac6_[k * hd_ + i] * dy[mstep][k];
                dh[i] = acc;
            }

            // h = VQC5(u)
            update_eval_.param_jacobian(u_[mstep].data(), m.lstm_params.theta[4].data(),
                                        jac5_.data(), noise_level, noise_rng);
            for (std::size_t k = 0; k < hd_; ++k)
                for (std::size_t j = 0; j < p5_; ++j)
                    grad[off_g5 + j] += jac5_[k * p5_ + j] * dh[k];
            update_eval_.input_jacobian(u_[mstep].data(), m.lstm_params.theta[4].data(),
                                        jac5_.data(), noise_level, noise_rng);
            for (std::size_t i = 0; i < hd_; ++i) {
                double acc = 0.0;
                for (std::size_t k = 0; k < hd_; ++k) acc += jac5_[k * hd_ + i] * dh[k];
                du[i] = acc;
            }

            std::fill(dv.begin(), dv.end(), 0.0);
            const std::vector<double> zero(hd_, 0.0);
            const std::vector<double>& c_prev_v = mstep ? c_[mstep - 1] : zero;
            std::vector<double> dc_next(hd_);
            for (std::size_t k = 0; k < hd_; ++k) {
                const double o = sigmoid(a4_[mstep][k]);
                const double tc = std::tanh(c_[mstep][k]);
                dc[k] += du[k] * o * (1.0 - tc * tc);
            }
            // gates 1..4 in order f, i, c~, o
            for (int g = 0; g < 4; ++g) {
                const std::vector<double>& a = g == 0   ? a1_[mstep]
                                               : g == 1 ? a2_[mstep]
                                               : g == 2 ? a3_[mstep]
                                                        : a4_[mstep];
                for (std::size_t k = 0; k < hd_; ++k) {
                    double upstream;
                    if (g == 0) {
                        upstream = dc[k] * c_prev_v[k];
                    } else if (g == 1) {
                        upstream = dc[k] * std::tanh(a3_[mstep][k]);
                    } else if (g == 2) {
                        upstream = dc[k] * sigmoid(a2_[mstep][k]);
                    } else {
                        const double tc = std::tanh(c_[mstep][k]);
                        upstream = du[k] * tc;
                    }
                    if (g == 2) {
                        const double th = std::tanh(a[k]);
                        da[k] = upstream * (1.0 - th * th);
                    } else {
                        const double s = sigmoid(a[k]);
                        da[k] = upstream * s * (1.0 - s);
                    }
                }
                gate_eval_.param_jacobian(v_[mstep].data(), m.lstm_params.theta[g].data(),
                                          jacg_.data(), noise_level, noise_rng);
                for (std::size_t k = 0; k < hd_; ++k)
                    for (std::size_t j = 0; j < pg_; ++j)
                        grad[off_g1 + static_cast<std::size_t>(g) * pg_ + j] +=
                            jacg_[k * pg_ + j] * da[k];
                gate_eval_.input_jacobian(v_[mstep].data(), m.lstm_params.theta[g].data(),
                                          jacg_.data(), noise_level, noise_rng);
                for (std::size_t i = 0; i < dd_; ++i) {
                    double acc = 0.0;
                    for (std::size_t k = 0; k < hd_; ++k) acc += jacg_[k * dd_ + i] * da[k];
                    dv[i] += acc;
                }
            }
            for (std::size_t k = 0; k < hd_; ++k)
                dc_next[k] = dc[k] * sigmoid(a1_[mstep][k]);
            for (std::size_t i = 0; i < hd_; ++i) dh_carry[i] = dv[i];
            for (std::size_t i = 0; i < fd_; ++i) dfeat_[mstep][i] = dv[hd_ + i];
            dc = std::move(dc_next);
        }

        // TCN parameters: window inputs are data, so only the angle Jacobian
        // is needed.
        jact_.resize(fd_ * pt_);
        for (std::size_t mstep = 0; mstep < M; ++mstep) {
            m.tcn.window(x_norm, mstep, window);
            tcn_eval_.param_jacobian(window.data(), m.tcn_theta.data(), jact_.data(),
                                     noise_level, noise_rng);
            for (std::size_t k = 0; k < fd_; ++k)
                for (std::size_t j = 0; j < pt_; ++j)
                    grad[off_tcn + j] += jact_[k * pt_ + j] * dfeat_[mstep][k];
        }
        return loss;
    }

private:
    const QTcnLstmModel* model_;
    VqcEvaluator tcn_eval_;
    VqcEvaluator gate_eval_;
    VqcEvaluator update_eval_;
    VqcEvaluator output_eval_;
    std::size_t hd_, fd_, od_, dd_, steps_, pt_, pg_, p5_, p6_, grad_size_;

    std::vector<std::vector<double>> feats_, v_, a1_, a2_, a3_, a4_, c_, u_, h_, y_, dfeat_;
    std::vector<double> jac6_, jac5_, jacg_, jact_;
};

// Mean normalized MSE over a row range; pass a noise level to measure the
// depolarized model.
inline double evaluate_mse(const QTcnLstmModel& model, const Dataset& data, std::size_t begin,
                           std::size_t end, double noise_level = 0.0, std::uint64_t seed = 0) {
    detail::require(end <= data.size() && begin < end, "bad evaluation range");
    ModelEvaluator eval(model);
    double total = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        std::vector<double> x(model.horizon), y(model.horizon);
        for (std::size_t t = 0; t < model.horizon; ++t) {
            x[t] = model.scaling.norm_price(data.prices[i][t]);
            y[t] = model.scaling.norm_resp(data.responses[i][t]);
        }
        Rng rng = Rng(seed).fork(i);
        std::vector<double> out =
            eval.forward_normalized(x, noise_level, noise_level > 0.0 ? &rng : nullptr);
        double loss = 0.0;
        for (std::size_t t = 0; t < model.horizon; ++t) {
            const double e = out[t] - y[t];
            loss += e * e;
        }
        total += loss / static_cast<double>(model.horizon);
    }
    return total / static_cast<double>(end - begin);
}

// Adam on the full parameter set; parameter-shift gradients for the quantum
// blocks, analytic gradients for the classical head. The loss trace holds one
// mean training-MSE entry per epoch.
inline TrainReport train(QTcnLstmModel& model, const Dataset& data, const TrainingConfig& cfg) {
    cfg.validate();
    data.validate();
    detail::require(data.size() >= 2, "training needs at least two samples");
    detail::require(data.horizon == model.horizon, "dataset and model horizons differ");

    model.scaling = data.scaling;
    const std::size_t n_test = static_cast<std::size_t>(
        std::floor(cfg.test_fraction * static_cast<double>(data.size())));
    const std::size_t n_train = data.size() - n_test;
    detail::require(n_train >= 1, "no training rows after the test split");

    std::vector<std::vector<double>> xs(n_train), ys(n_train);
    for (std::size_t i = 0; i < n_train; ++i) {
        xs[i].resize(model.horizon);
        ys[i].resize(model.horizon);
        for (std::size_t t = 0; t < model.horizon; ++t) {
            xs[i][t] = model.scaling.norm_price(data.prices[i][t]);
            ys[i][t] = model.scaling.norm_resp(data.responses[i][t]);
        }
    }

    detail::ParamView params(model);
    ModelGradientWorkspace ws(model);
    detail::require(params.total == ws.gradient_size(), "parameter layout mismatch");

    std::vector<double> grad(params.total), batch_grad(params.total);
    std::vector<double> adam_m(params.total, 0.0), adam_v(params.total, 0.0);
    std::vector<double> delta(params.total);
    std::size_t adam_step = 0;

    Rng shuffle_rng(cfg.seed ^ 0x5048c331ULL);
    std::vector<std::size_t> order(n_train);
    std::iota(order.begin(), order.end(), 0);

    TrainReport report;
    report.loss_trace.reserve(cfg.epochs);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        // Fisher-Yates with the project RNG keeps runs toolchain-independent.
        for (std::size_t i = n_train - 1; i > 0; --i) {
            const std::size_t j = shuffle_rng.uniform_index(i + 1);
            std::swap(order[i], order[j]);
        }
        double epoch_loss = 0.0;
        std::size_t seen = 0;
        for (std::size_t start = 0; start < n_train; start += cfg.batch_size) {
            const std::size_t stop = std::min(start + cfg.batch_size, n_train);
            std::fill(batch_grad.begin(), batch_grad.end(), 0.0);
            double batch_loss = 0.0;
            for (std::size_t b = start; b < stop; ++b) {
                const std::size_t idx = order[b];
                std::fill(grad.begin(), grad.end(), 0.0);
                Rng noise_rng = Rng(cfg.seed).fork((epoch << 20) ^ idx);
                batch_loss += ws.accumulate(xs[idx], ys[idx], grad, cfg.noise_level,
                                            cfg.noise_level > 0.0 ? &noise_rng : nullptr);
                for (std::size_t j = 0; j < grad.size(); ++j) batch_grad[j] += grad[j];
            }
            const double inv = 1.0 / static_cast<double>(stop - start);
            batch_loss *= inv;
            if (!std::isfinite(batch_loss))
                throw std::runtime_error("training diverged: non-finite loss at epoch " +
                                         std::to_string(epoch));
            epoch_loss += batch_loss * static_cast<double>(stop - start);
            seen += stop - start;

            ++adam_step;
            const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(adam_step));
            const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(adam_step));
            for (std::size_t j = 0; j < params.total; ++j) {
                const double g = batch_grad[j] * inv;
                adam_m[j] = cfg.beta1 * adam_m[j] + (1.0 - cfg.beta1) * g;
                adam_v[j] = cfg.beta2 * adam_v[j] + (1.0 - cfg.beta2) * g * g;
                const double mhat = adam_m[j] / bc1;
                const double vhat = adam_v[j] / bc2;
                delta[j] = -cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.eps);
            }
            params.axpy(delta);
        }
        report.loss_trace.push_back(epoch_loss / static_cast<double>(seen));
    }
    report.final_train_mse = report.loss_trace.back();
    report.test_mse = n_test > 0 ? evaluate_mse(model, data, n_train, data.size())
                                 : report.final_train_mse;
    return report;
}

}  // namespace qcoord
