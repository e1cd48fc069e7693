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

#include <vector>

#include "qcoord/vqc.hpp"

namespace qcoord {

// Quantum causal convolution: a sliding window of the input series feeds one
// VQC per output position, one qubit per window element. Windows reach only
// backwards in time and are left-padded with zeros.
struct QTcnLayerSpec {
    std::size_t kernel_size = 4;
    std::size_t dilation = 1;
    std::size_t stride = 1;
    VqcSpec vqc;

    void validate() const {
        detail::require(kernel_size >= 1 && dilation >= 1 && stride >= 1,
                        "kernel, dilation and stride must be >= 1");
        vqc.validate();
        detail::require(kernel_size == vqc.n_qubits,
                        "kernel size must equal the VQC qubit count");
    }

    std::size_t output_length(std::size_t series_length) const {
        return (series_length + stride - 1) / stride;
    }

    // Window feeding output position m: taps x[t - dilation*(K-1-j)] with
    // t = m*stride; negative indices read as zero.
    void window(const std::vector<double>& series, std::size_t position,
                std::vector<double>& out) const {
        out.resize(kernel_size);
        const std::ptrdiff_t t = static_cast<std::ptrdiff_t>(position * stride);
        for (std::size_t j = 0; j < kernel_size; ++j) {
            const std::ptrdiff_t idx =
                t - static_cast<std::ptrdiff_t>(dilation * (kernel_size - 1 - j));
            out[j] = idx >= 0 ? series[static_cast<std::size_t>(idx)] : 0.0;
        }
    }
};

inline std::vector<std::vector<double>> qtcn_forward(const QTcnLayerSpec& layer,
                                                     const ParameterVector& theta,
                                                     const std::vector<double>& series,
                                                     double noise_level = 0.0,
                                                     Rng* noise_rng = nullptr) {
    layer.validate();
    detail::require(!series.empty(), "input series must be nonempty");
    detail::require(series.size() >= layer.kernel_size,
                    "series shorter than the kernel window");
    detail::require(theta.size() == layer.vqc.parameter_count(),
                    "parameter vector length does not match the VQC spec");

    VqcEvaluator eval(layer.vqc);
    const std::size_t out_len = layer.output_length(series.size());
    std::vector<std::vector<double>> features(out_len);
    std::vector<double> window;
    for (std::size_t m = 0; m < out_len; ++m) {
        layer.window(series, m, window);
        features[m].resize(layer.vqc.n_outputs);
        eval.forward(window.data(), theta.data(), features[m].data(), noise_level, noise_rng);
    }
    return features;
}

}  // namespace qcoord
