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
#include <string>
#include <vector>

#include "qcoord/dataset.hpp"
#include "qcoord/training.hpp"

namespace qcoord {

// Classical reference models in training-parity configurations, used for the
// model-size and accuracy comparisons against the quantum surrogate. All of
// them map a normalized price series to a normalized response series.
class ClassicalNet {
public:
    enum class Arch { Mlp, Tcn, Lstm, TcnLstm };

    static Arch arch_from_name(const std::string& name) {
        if (name == "mlp") return Arch::Mlp;
        if (name == "tcn") return Arch::Tcn;
        if (name == "lstm") return Arch::Lstm;
        if (name == "tcnlstm") return Arch::TcnLstm;
        throw std::invalid_argument("unknown classical architecture: " + name);
    }

    ClassicalNet(Arch arch, std::size_t horizon, std::uint64_t seed)
        : arch_(arch), horizon_(horizon) {
        detail::require(horizon >= kKernel, "horizon shorter than the convolution kernel");
        switch (arch_) {
            case Arch::Mlp:
                mlp_hidden_ = 64;
                params_.resize(mlp_hidden_ * horizon_ + mlp_hidden_ + horizon_ * mlp_hidden_ +
                               horizon_);
                break;
            case Arch::Tcn:
                channels_ = 16;
                params_.resize(channels_ * kKernel + channels_ +
                               channels_ * channels_ * kKernel + channels_ + channels_ + 1);
                break;
            case Arch::Lstm:
                lstm_hidden_ = 32;
                lstm_input_ = 1;
                params_.resize(4 * lstm_hidden_ * (lstm_input_ + lstm_hidden_) +
                               4 * lstm_hidden_ + lstm_hidden_ + 1);
                break;
            case Arch::TcnLstm:
                channels_ = 32;
                lstm_hidden_ = 64;
                lstm_input_ = channels_;
                params_.resize(channels_ * kKernel + channels_ +
                               channels_ * channels_ * kKernel + channels_ +
                               4 * lstm_hidden_ * (lstm_input_ + lstm_hidden_) +
                               4 * lstm_hidden_ + lstm_hidden_ + 1);
                break;
        }
        Rng rng(seed ^ 0xc1a551caULL);
        for (double& p : params_) p = rng.uniform(-0.08, 0.08);
    }

    Arch arch() const { return arch_; }
    std::size_t horizon() const { return horizon_; }
    std::size_t count_parameters() const { return params_.size(); }
    Scaling& scaling() { return scaling_; }
    const Scaling& scaling() const { return scaling_; }

    std::vector<double> forward_normalized(const std::vector<double>& x) const {
        detail::require(x.size() == horizon_, "series has the wrong horizon");
        Cache cache;
        return forward_impl(x, cache);
    }

    std::vector<double> forward(const std::vector<double>& price) const {
        std::vector<double> x(price.size());
        for (std::size_t t = 0; t < price.size(); ++t) x[t] = scaling_.norm_price(price[t]);
        std::vector<double> out = forward_normalized(x);
        for (double& v : out) v = scaling_.denorm_resp(v);
        return out;
    }

    TrainReport train(const Dataset& data, const TrainingConfig& cfg) {
        cfg.validate();
        data.validate();
        detail::require(data.horizon == horizon_, "dataset and model horizons differ");
        scaling_ = data.scaling;
        const std::size_t n_test = static_cast<std::size_t>(
            std::floor(cfg.test_fraction * static_cast<double>(data.size())));
        const std::size_t n_train = data.size() - n_test;
        detail::require(n_train >= 1, "no training rows after the test split");

        std::vector<std::vector<double>> xs(n_train), ys(n_train);
        for (std::size_t i = 0; i < n_train; ++i) {
            xs[i].resize(horizon_);
            ys[i].resize(horizon_);
            for (std::size_t t = 0; t < horizon_; ++t) {
                xs[i][t] = scaling_.norm_price(data.prices[i][t]);
                ys[i][t] = scaling_.norm_resp(data.responses[i][t]);
            }
        }

        std::vector<double> grad(params_.size()), batch_grad(params_.size());
        std::vector<double> am(params_.size(), 0.0), av(params_.size(), 0.0);
        std::size_t adam_step = 0;
        Rng shuffle_rng(cfg.seed ^ 0x7e57ab1eULL);
        std::vector<std::size_t> order(n_train);
        std::iota(order.begin(), order.end(), 0);

        TrainReport report;
        for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
            for (std::size_t i = n_train - 1; i > 0; --i)
                std::swap(order[i], order[shuffle_rng.uniform_index(i + 1)]);
            double epoch_loss = 0.0;
            for (std::size_t start = 0; start < n_train; start += cfg.batch_size) {
                const std::size_t stop = std::min(start + cfg.batch_size, n_train);
                std::fill(batch_grad.begin(), batch_grad.end(), 0.0);
                double batch_loss = 0.0;
                for (std::size_t b = start; b < stop; ++b) {
                    std::fill(grad.begin(), grad.end(), 0.0);
                    batch_loss += sample_gradient(xs[order[b]], ys[order[b]], grad);
                    for (std::size_t j = 0; j < grad.size(); ++j) batch_grad[j] += grad[j];
                }
                const double inv = 1.0 / static_cast<double>(stop - start);
                batch_loss *= inv;
                if (!std::isfinite(batch_loss))
                    throw std::runtime_error("classical training diverged at epoch " +
                                             std::to_string(epoch));
                epoch_loss += batch_loss * static_cast<double>(stop - start);
                ++adam_step;
                const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(adam_step));
                const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(adam_step));
                for (std::size_t j = 0; j < params_.size(); ++j) {
                    const double g = batch_grad[j] * inv;
                    am[j] = cfg.beta1 * am[j] + (1.0 - cfg.beta1) * g;
                    av[j] = cfg.beta2 * av[j] + (1.0 - cfg.beta2) * g * g;
                    params_[j] -= cfg.learning_rate * (am[j] / bc1) /
                                  (std::sqrt(av[j] / bc2) + cfg.eps);
                }
            }
            report.loss_trace.push_back(epoch_loss / static_cast<double>(n_train));
        }
        report.final_train_mse = report.loss_trace.back();
        report.test_mse = report.final_train_mse;
        if (n_test > 0) {
            double total = 0.0;
            for (std::size_t i = n_train; i < data.size(); ++i) {
                std::vector<double> x(horizon_), y(horizon_);
                for (std::size_t t = 0; t < horizon_; ++t) {
                    x[t] = scaling_.norm_price(data.prices[i][t]);
                    y[t] = scaling_.norm_resp(data.responses[i][t]);
                }
                const std::vector<double> out = forward_normalized(x);
                double loss = 0.0;
                for (std::size_t t = 0; t < horizon_; ++t)
                    loss += (out[t] - y[t]) * (out[t] - y[t]);
                total += loss / static_cast<double>(horizon_);
            }
            report.test_mse = total / static_cast<double>(n_test);
        }
        return report;
    }

    const std::vector<double>& parameters() const { return params_; }
    std::vector<double>& parameters() { return params_; }

    // Sample loss on normalized series; accumulates d loss / d params into
    // grad (sized count_parameters()).
    double accumulate_gradient(const std::vector<double>& x_norm,
                               const std::vector<double>& y_norm, std::vector<double>& grad) {
        return sample_gradient(x_norm, y_norm, grad);
    }

private:
    static constexpr std::size_t kKernel = 4;

    struct Cache {
        // convolution stages (channels x T, flattened c * T + t)
        std::vector<double> z1, r1, z2, r2;
        // lstm stages (T x gates / states)
        std::vector<double> gi, gf, gg, go, c, h;
        std::vector<double> hidden;  // mlp hidden pre-tanh
        std::vector<double> input;   // copy of the network input series
    };

    // ---- parameter block offsets ------------------------------------------
    std::size_t off_conv1_w() const { return 0; }
    std::size_t off_conv1_b() const { return channels_ * kKernel; }
    std::size_t off_conv2_w() const { return off_conv1_b() + channels_; }
    std::size_t off_conv2_b() const { return off_conv2_w() + channels_ * channels_ * kKernel; }
    std::size_t off_after_conv() const { return off_conv2_b() + channels_; }

    std::size_t off_lstm_w() const {
        return arch_ == Arch::TcnLstm ? off_after_conv() : 0;
    }
    std::size_t off_lstm_b() const {
        return off_lstm_w() + 4 * lstm_hidden_ * (lstm_input_ + lstm_hidden_);
    }
    std::size_t off_lstm_head() const { return off_lstm_b() + 4 * lstm_hidden_; }

    std::size_t off_tcn_head() const { return off_after_conv(); }

    std::size_t off_mlp_w1() const { return 0; }
    std::size_t off_mlp_b1() const { return mlp_hidden_ * horizon_; }
    std::size_t off_mlp_w2() const { return off_mlp_b1() + mlp_hidden_; }
    std::size_t off_mlp_b2() const { return off_mlp_w2() + horizon_ * mlp_hidden_; }

    static double relu(double x) { return x > 0.0 ? x : 0.0; }

    // Causal convolution: out[c][t] = b[c] + sum_{c',j} w[c][c'][j] *
    // in[c'][t - d*(K-1-j)], zero-padded on the left.
    void conv_forward(const double* w, const double* b, const std::vector<double>& in,
                      std::size_t cin, std::size_t cout, std::size_t dil,
                      std::vector<double>& out) const {
        const std::size_t T = horizon_;
        out.assign(cout * T, 0.0);
        for (std::size_t co = 0; co < cout; ++co) {
            for (std::size_t t = 0; t < T; ++t) {
                double acc = b[co];
                for (std::size_t ci = 0; ci < cin; ++ci) {
                    for (std::size_t j = 0; j < kKernel; ++j) {
                        const std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(t) -
                            static_cast<std::ptrdiff_t>(dil * (kKernel - 1 - j));
                        if (idx < 0) continue;
                        acc += w[(co * cin + ci) * kKernel + j] *
                               in[ci * T + static_cast<std::size_t>(idx)];
                    }
                }
                out[co * T + t] = acc;
            }
        }
    }

    void conv_backward(const double* w, const std::vector<double>& in, std::size_t cin,
                       std::size_t cout, std::size_t dil, const std::vector<double>& dout,
                       double* dw, double* db, std::vector<double>* din) const {
        const std::size_t T = horizon_;
        if (din) din->assign(cin * T, 0.0);
        for (std::size_t co = 0; co < cout; ++co) {
            for (std::size_t t = 0; t < T; ++t) {
                const double d = dout[co * T + t];
                if (d == 0.0) continue;
                db[co] += d;
                for (std::size_t ci = 0; ci < cin; ++ci) {
                    for (std::size_t j = 0; j < kKernel; ++j) {
                        const std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(t) -
                            static_cast<std::ptrdiff_t>(dil * (kKernel - 1 - j));
                        if (idx < 0) continue;
                        const std::size_t src = ci * T + static_cast<std::size_t>(idx);
                        dw[(co * cin + ci) * kKernel + j] += d * in[src];
                        if (din) (*din)[src] += d * w[(co * cin + ci) * kKernel + j];
                    }
                }
            }
        }
    }

    // LSTM over feature vectors (lstm_input_ x T, flattened). Gate order in
    // the packed weight block: input, forget, cell, output.
    void lstm_forward(const std::vector<double>& in, Cache& cache) const {
        const std::size_t T = horizon_;
        const std::size_t H = lstm_hidden_;
        const std::size_t I = lstm_input_;
        const double* w = params_.data() + off_lstm_w();
        const double* b = params_.data() + off_lstm_b();
        cache.gi.assign(T * H, 0.0);
        cache.gf.assign(T * H, 0.0);
        cache.gg.assign(T * H, 0.0);
        cache.go.assign(T * H, 0.0);
        cache.c.assign(T * H, 0.0);
        cache.h.assign(T * H, 0.0);
        std::vector<double> pre(4 * H);
        for (std::size_t t = 0; t < T; ++t) {
            for (std::size_t g = 0; g < 4 * H; ++g) {
                double acc = b[g];
                const double* wrow = w + g * (I + H);
                for (std::size_t i = 0; i < I; ++i) acc += wrow[i] * in[i * T + t];
                if (t > 0)
                    for (std::size_t k = 0; k < H; ++k)
                        acc += wrow[I + k] * cache.h[(t - 1) * H + k];
                pre[g] = acc;
            }
            for (std::size_t k = 0; k < H; ++k) {
                const double gi = sigmoid(pre[k]);
                const double gf = sigmoid(pre[H + k]);
                const double gg = std::tanh(pre[2 * H + k]);
                const double go = sigmoid(pre[3 * H + k]);
                const double cp = t > 0 ? cache.c[(t - 1) * H + k] : 0.0;
                const double ct = gf * cp + gi * gg;
                cache.gi[t * H + k] = gi;
                cache.gf[t * H + k] = gf;
                cache.gg[t * H + k] = gg;
                cache.go[t * H + k] = go;
                cache.c[t * H + k] = ct;
                cache.h[t * H + k] = go * std::tanh(ct);
            }
        }
    }

    void lstm_backward(const std::vector<double>& in, const Cache& cache,
                       const std::vector<double>& dh_out, std::vector<double>& grad,
                       std::vector<double>* din) const {
        const std::size_t T = horizon_;
        const std::size_t H = lstm_hidden_;
        const std::size_t I = lstm_input_;
        const double* w = params_.data() + off_lstm_w();
        double* dw = grad.data() + off_lstm_w();
        double* db = grad.data() + off_lstm_b();
        if (din) din->assign(I * T, 0.0);
        std::vector<double> dh(H, 0.0), dc(H, 0.0), dpre(4 * H);
        for (std::size_t t = T; t-- > 0;) {
            for (std::size_t k = 0; k < H; ++k) dh[k] += dh_out[t * H + k];
            for (std::size_t k = 0; k < H; ++k) {
                const double gi = cache.gi[t * H + k];
                const double gf = cache.gf[t * H + k];
                const double gg = cache.gg[t * H + k];
                const double go = cache.go[t * H + k];
                const double ct = cache.c[t * H + k];
                const double tc = std::tanh(ct);
                const double cp = t > 0 ? cache.c[(t - 1) * H + k] : 0.0;
                dc[k] += dh[k] * go * (1.0 - tc * tc);
                dpre[k] = dc[k] * gg * gi * (1.0 - gi);                // input gate
                dpre[H + k] = dc[k] * cp * gf * (1.0 - gf);            // forget gate
                dpre[2 * H + k] = dc[k] * gi * (1.0 - gg * gg);        // cell candidate
                dpre[3 * H + k] = dh[k] * tc * go * (1.0 - go);        // output gate
                dc[k] *= gf;
            }
            std::fill(dh.begin(), dh.end(), 0.0);
            for (std::size_t g = 0; g < 4 * H; ++g) {
                const double d = dpre[g];
                if (d == 0.0) continue;
                db[g] += d;
                const double* wrow = w + g * (I + H);
                double* dwrow = dw + g * (I + H);
                for (std::size_t i = 0; i < I; ++i) {
                    dwrow[i] += d * in[i * T + t];
                    if (din) (*din)[i * T + t] += d * wrow[i];
                }
                if (t > 0)
                    for (std::size_t k = 0; k < H; ++k) {
                        dwrow[I + k] += d * cache.h[(t - 1) * H + k];
                        dh[k] += d * wrow[I + k];
                    }
            }
        }
    }

    std::vector<double> forward_impl(const std::vector<double>& x, Cache& cache) const {
        const std::size_t T = horizon_;
        std::vector<double> out(T);
        cache.input = x;
        switch (arch_) {
            case Arch::Mlp: {
                const double* w1 = params_.data() + off_mlp_w1();
                const double* b1 = params_.data() + off_mlp_b1();
                const double* w2 = params_.data() + off_mlp_w2();
                const double* b2 = params_.data() + off_mlp_b2();
                cache.hidden.assign(mlp_hidden_, 0.0);
                for (std::size_t k = 0; k < mlp_hidden_; ++k) {
                    double acc = b1[k];
                    for (std::size_t t = 0; t < T; ++t) acc += w1[k * T + t] * x[t];
                    cache.hidden[k] = acc;
                }
                for (std::size_t t = 0; t < T; ++t) {
                    double acc = b2[t];
                    for (std::size_t k = 0; k < mlp_hidden_; ++k)
                        acc += w2[t * mlp_hidden_ + k] * std::tanh(cache.hidden[k]);
                    out[t] = acc;
                }
                return out;
            }
            case Arch::Tcn:
            case Arch::TcnLstm: {
                conv_forward(params_.data() + off_conv1_w(), params_.data() + off_conv1_b(), x,
                             1, channels_, 1, cache.z1);
                cache.r1 = cache.z1;
                for (double& v : cache.r1) v = relu(v);
                conv_forward(params_.data() + off_conv2_w(), params_.data() + off_conv2_b(),
                             cache.r1, channels_, channels_, 2, cache.z2);
                cache.r2 = cache.z2;
                for (double& v : cache.r2) v = relu(v);
                if (arch_ == Arch::Tcn) {
                    const double* hw = params_.data() + off_tcn_head();
                    const double hb = params_[off_tcn_head() + channels_];
                    for (std::size_t t = 0; t < T; ++t) {
                        double acc = hb;
                        for (std::size_t c = 0; c < channels_; ++c)
                            acc += hw[c] * cache.r2[c * T + t];
                        out[t] = acc;
                    }
                    return out;
                }
                lstm_forward(cache.r2, cache);
                const double* hw = params_.data() + off_lstm_head();
                const double hb = params_[off_lstm_head() + lstm_hidden_];
                for (std::size_t t = 0; t < T; ++t) {
                    double acc = hb;
                    for (std::size_t k = 0; k < lstm_hidden_; ++k)
                        acc += hw[k] * cache.h[t * lstm_hidden_ + k];
                    out[t] = acc;
                }
                return out;
            }
            case Arch::Lstm: {
                lstm_forward(x, cache);  // lstm_input_ == 1, in[0*T + t] = x[t]
                const double* hw = params_.data() + off_lstm_head();
                const double hb = params_[off_lstm_head() + lstm_hidden_];
                for (std::size_t t = 0; t < T; ++t) {
                    double acc = hb;
                    for (std::size_t k = 0; k < lstm_hidden_; ++k)
                        acc += hw[k] * cache.h[t * lstm_hidden_ + k];
                    out[t] = acc;
                }
                return out;
            }
        }
        throw std::logic_error("unknown architecture");
    }

    double sample_gradient(const std::vector<double>& x, const std::vector<double>& y,
                           std::vector<double>& grad) {
        const std::size_t T = horizon_;
        Cache cache;
        const std::vector<double> out = forward_impl(x, cache);
        double loss = 0.0;
        std::vector<double> dout(T);
        for (std::size_t t = 0; t < T; ++t) {
            const double e = out[t] - y[t];
            loss += e * e;
            dout[t] = 2.0 * e / static_cast<double>(T);
        }
        loss /= static_cast<double>(T);

        switch (arch_) {
            case Arch::Mlp: {
                const double* w1 = params_.data() + off_mlp_w1();
                const double* w2 = params_.data() + off_mlp_w2();
                double* dw1 = grad.data() + off_mlp_w1();
                double* db1 = grad.data() + off_mlp_b1();
                double* dw2 = grad.data() + off_mlp_w2();
                double* db2 = grad.data() + off_mlp_b2();
                std::vector<double> dhid(mlp_hidden_, 0.0);
                for (std::size_t t = 0; t < T; ++t) {
                    db2[t] += dout[t];
                    for (std::size_t k = 0; k < mlp_hidden_; ++k) {
                        dw2[t * mlp_hidden_ + k] += dout[t] * std::tanh(cache.hidden[k]);
                        dhid[k] += dout[t] * w2[t * mlp_hidden_ + k];
                    }
                }
                for (std::size_t k = 0; k < mlp_hidden_; ++k) {
                    const double th = std::tanh(cache.hidden[k]);
                    const double d = dhid[k] * (1.0 - th * th);
                    db1[k] += d;
                    for (std::size_t t = 0; t < T; ++t) dw1[k * T + t] += d * x[t];
                }
                (void)w1;
                return loss;
            }
            case Arch::Tcn: {
                const double* hw = params_.data() + off_tcn_head();
                double* dhw = grad.data() + off_tcn_head();
                std::vector<double> dr2(channels_ * T, 0.0);
                for (std::size_t t = 0; t < T; ++t) {
                    grad[off_tcn_head() + channels_] += dout[t];
                    for (std::size_t c = 0; c < channels_; ++c) {
                        dhw[c] += dout[t] * cache.r2[c * T + t];
                        dr2[c * T + t] += dout[t] * hw[c];
                    }
                }
                backprop_convs(cache, dr2, grad);
                return loss;
            }
            case Arch::Lstm: {
                std::vector<double> dh(T * lstm_hidden_, 0.0);
                head_backward(cache, dout, grad, dh);
                lstm_backward(x, cache, dh, grad, nullptr);
                return loss;
            }
            case Arch::TcnLstm: {
                std::vector<double> dh(T * lstm_hidden_, 0.0);
                head_backward(cache, dout, grad, dh);
                std::vector<double> dr2;
                lstm_backward(cache.r2, cache, dh, grad, &dr2);
                backprop_convs(cache, dr2, grad);
                return loss;
            }
        }
        throw std::logic_error("unknown architecture");
    }

    void head_backward(const Cache& cache, const std::vector<double>& dout,
                       std::vector<double>& grad, std::vector<double>& dh) const {
        const std::size_t T = horizon_;
        const double* hw = params_.data() + off_lstm_head();
        double* dhw = grad.data() + off_lstm_head();
        for (std::size_t t = 0; t < T; ++t) {
            grad[off_lstm_head() + lstm_hidden_] += dout[t];
            for (std::size_t k = 0; k < lstm_hidden_; ++k) {
                dhw[k] += dout[t] * cache.h[t * lstm_hidden_ + k];
                dh[t * lstm_hidden_ + k] += dout[t] * hw[k];
            }
        }
    }

    void backprop_convs(const Cache& cache, std::vector<double>& dr2,
                        std::vector<double>& grad) const {
        const std::size_t T = horizon_;
        for (std::size_t i = 0; i < dr2.size(); ++i)
            if (cache.z2[i] <= 0.0) dr2[i] = 0.0;
        std::vector<double> dr1;
        conv_backward(params_.data() + off_conv2_w(), cache.r1, channels_, channels_, 2, dr2,
                      grad.data() + off_conv2_w(), grad.data() + off_conv2_b(), &dr1);
        for (std::size_t i = 0; i < dr1.size(); ++i)
            if (cache.z1[i] <= 0.0) dr1[i] = 0.0;
        conv_backward(params_.data() + off_conv1_w(), cache.input, 1, channels_, 1, dr1,
                      grad.data() + off_conv1_w(), grad.data() + off_conv1_b(), nullptr);
        (void)T;
    }

    Arch arch_;
    std::size_t horizon_;
    std::size_t channels_ = 0;
    std::size_t lstm_hidden_ = 0;
    std::size_t lstm_input_ = 0;
    std::size_t mlp_hidden_ = 0;
    std::vector<double> params_;
    Scaling scaling_;
};

}  // namespace qcoord
