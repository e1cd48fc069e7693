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
#include <cstdint>
#include <vector>

#include "qcoord/circuit.hpp"
#include "qcoord/statevector.hpp"

namespace qcoord {

using ParameterVector = std::vector<double>;

enum class Entanglement { Ring, Skip };
enum class RotationAxis { Y, Z };

// Layered hardware-efficient ansatz: angle encoding, then per layer one
// rotation per qubit followed by a CNOT entangling pattern. One trainable
// angle per qubit per layer. Ring connects k -> k+1 (mod n, a single CNOT for
// two qubits); Skip connects k -> k+2 (mod n, empty below three qubits).
struct VqcSpec {
    std::size_t n_qubits = 4;
    std::size_t n_layers = 3;
    std::vector<RotationAxis> rotation_axes;  // per layer; empty means all Y
    Entanglement entanglement = Entanglement::Ring;
    std::size_t n_outputs = 4;

    std::size_t parameter_count() const { return n_layers * n_qubits; }

    RotationAxis axis(std::size_t layer) const {
        return rotation_axes.empty() ? RotationAxis::Y : rotation_axes[layer];
    }

    void validate() const {
        detail::require(n_qubits >= 1, "VQC needs at least one qubit");
        detail::require(n_layers >= 1, "VQC needs at least one layer");
        detail::require(n_outputs >= 1 && n_outputs <= n_qubits,
                        "VQC output count must be in [1, n_qubits]");
        detail::require(rotation_axes.empty() || rotation_axes.size() == n_layers,
                        "rotation_axes must be empty or one entry per layer");
    }
};

namespace detail {

inline std::vector<std::pair<std::uint32_t, std::uint32_t>> entangler_pairs(
    const VqcSpec& spec) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    const auto n = static_cast<std::uint32_t>(spec.n_qubits);
    if (spec.entanglement == Entanglement::Ring) {
        if (n == 2) {
            pairs.emplace_back(0, 1);
        } else if (n >= 3) {
            for (std::uint32_t k = 0; k < n; ++k) pairs.emplace_back(k, (k + 1) % n);
        }
    } else {
        for (std::uint32_t k = 0; k < n; ++k) {
            const std::uint32_t t = (k + 2) % n;
            if (t != k) pairs.emplace_back(k, t);
        }
    }
    return pairs;
}

}  // namespace detail

// Temporal rotational encoding: x_k in [0, 1] becomes RY(pi x_k) on qubit k.
inline Circuit encode_angles(const std::vector<double>& window) {
    detail::require(!window.empty(), "encoding window must be nonempty");
    for (double x : window)
        detail::require(x >= 0.0 && x <= 1.0, "encoded values must lie in [0, 1]");
    Circuit c(window.size());
    for (std::size_t k = 0; k < window.size(); ++k)
        c.ry(static_cast<std::uint32_t>(k), M_PI * window[k]);
    return c;
}

// Full VQC as a circuit; the evaluator below is the fast path used in
// training loops.
inline Circuit build_vqc_circuit(const VqcSpec& spec, const ParameterVector& theta,
                                 const std::vector<double>& input) {
    spec.validate();
    detail::require(theta.size() == spec.parameter_count(),
                    "parameter vector length does not match the VQC spec");
    detail::require(input.size() == spec.n_qubits, "input length must equal n_qubits");
    Circuit c(spec.n_qubits);
    for (std::size_t k = 0; k < spec.n_qubits; ++k)
        c.ry(static_cast<std::uint32_t>(k), M_PI * input[k]);
    const auto pairs = detail::entangler_pairs(spec);
    for (std::size_t l = 0; l < spec.n_layers; ++l) {
        for (std::size_t q = 0; q < spec.n_qubits; ++q) {
            const double angle = theta[l * spec.n_qubits + q];
            if (spec.axis(l) == RotationAxis::Y)
                c.ry(static_cast<std::uint32_t>(q), angle);
            else
                c.rz(static_cast<std::uint32_t>(q), angle);
        }
        for (const auto& [a, b] : pairs) c.cnot(a, b);
    }
    return c;
}

// Reusable evaluator: owns the statevector workspace and applies the ansatz
// without building Gate objects. All Jacobians use the parameter-shift rule;
// the encoding angle pi*x admits the same rule, giving d<Z>/dx exactly.
class VqcEvaluator {
public:
    explicit VqcEvaluator(VqcSpec spec) : spec_(std::move(spec)) {
        spec_.validate();
        pairs_ = detail::entangler_pairs(spec_);
        amp_.resize(std::size_t{1} << spec_.n_qubits);
        enc_.resize(spec_.n_qubits);
        shift_enc_.resize(spec_.n_qubits);
        shift_theta_.resize(spec_.parameter_count());
        out_plus_.resize(spec_.n_outputs);
        out_minus_.resize(spec_.n_outputs);
    }

    const VqcSpec& spec() const { return spec_; }

    void forward(const double* input, const double* theta, double* out,
                 double noise_level = 0.0, Rng* noise_rng = nullptr) {
        for (std::size_t k = 0; k < spec_.n_qubits; ++k) enc_[k] = M_PI * input[k];
        forward_angles(enc_.data(), theta, out, noise_level, noise_rng);
    }

    std::vector<double> forward(const std::vector<double>& input, const ParameterVector& theta,
                                double noise_level = 0.0, Rng* noise_rng = nullptr) {
        detail::require(input.size() == spec_.n_qubits, "input length must equal n_qubits");
        detail::require(theta.size() == spec_.parameter_count(),
                        "parameter vector length does not match the VQC spec");
        for (double t : theta) detail::require(std::isfinite(t), "parameters must be finite");
        std::vector<double> out(spec_.n_outputs);
        forward(input.data(), theta.data(), out.data(), noise_level, noise_rng);
        return out;
    }

    // jac[k * P + j] = d out_k / d theta_j via (f(+pi/2) - f(-pi/2)) / 2.
    void param_jacobian(const double* input, const double* theta, double* jac,
                        double noise_level = 0.0, Rng* noise_rng = nullptr) {
        const std::size_t p = spec_.parameter_count();
        const std::size_t m = spec_.n_outputs;
        for (std::size_t k = 0; k < spec_.n_qubits; ++k) enc_[k] = M_PI * input[k];
        std::copy(theta, theta + p, shift_theta_.begin());
        for (std::size_t j = 0; j < p; ++j) {
            shift_theta_[j] = theta[j] + M_PI / 2.0;
            forward_angles(enc_.data(), shift_theta_.data(), out_plus_.data(), noise_level,
                           noise_rng);
            shift_theta_[j] = theta[j] - M_PI / 2.0;
            forward_angles(enc_.data(), shift_theta_.data(), out_minus_.data(), noise_level,
                           noise_rng);
            shift_theta_[j] = theta[j];
            for (std::size_t k = 0; k < m; ++k)
                jac[k * p + j] = 0.5 * (out_plus_[k] - out_minus_[k]);
        }
    }

    // jac[k * n + i] = d out_k / d input_i (parameter shift on the encoding
    // angle, scaled by the encoding slope pi).
    void input_jacobian(const double* input, const double* theta, double* jac,
                        double noise_level = 0.0, Rng* noise_rng = nullptr) {
        const std::size_t n = spec_.n_qubits;
        const std::size_t m = spec_.n_outputs;
        for (std::size_t k = 0; k < n; ++k) enc_[k] = M_PI * input[k];
        std::copy(enc_.begin(), enc_.end(), shift_enc_.begin());
        for (std::size_t i = 0; i < n; ++i) {
            shift_enc_[i] = enc_[i] + M_PI / 2.0;
            forward_angles(shift_enc_.data(), theta, out_plus_.data(), noise_level, noise_rng);
            shift_enc_[i] = enc_[i] - M_PI / 2.0;
            forward_angles(shift_enc_.data(), theta, out_minus_.data(), noise_level, noise_rng);
            shift_enc_[i] = enc_[i];
            for (std::size_t k = 0; k < m; ++k)
                jac[k * n + i] = 0.5 * M_PI * (out_plus_[k] - out_minus_[k]);
        }
    }

private:
    void forward_angles(const double* enc, const double* theta, double* out,
                        double noise_level, Rng* noise_rng) {
        std::fill(amp_.begin(), amp_.end(), cplx{0.0, 0.0});
        amp_[0] = cplx{1.0, 0.0};
        const std::size_t n = spec_.n_qubits;
        for (std::size_t k = 0; k < n; ++k) apply_ry(static_cast<std::uint32_t>(k), enc[k]);
        for (std::size_t l = 0; l < spec_.n_layers; ++l) {
            const bool y_axis = spec_.axis(l) == RotationAxis::Y;
            for (std::size_t q = 0; q < n; ++q) {
                const double a = theta[l * n + q];
                if (y_axis)
                    apply_ry(static_cast<std::uint32_t>(q), a);
                else
                    apply_rz(static_cast<std::uint32_t>(q), a);
            }
            for (const auto& [c, t] : pairs_) apply_cnot(c, t);
        }
        if (noise_level > 0.0 && noise_rng != nullptr) {
            for (std::uint32_t q = 0; q < n; ++q)
                if (noise_rng->uniform() < noise_level)
                    detail::apply_pauli(amp_, q, static_cast<int>(noise_rng->uniform_index(3)));
        }
        for (std::size_t k = 0; k < spec_.n_outputs; ++k) {
            const std::uint64_t qbit = 1ULL << k;
            double p1 = 0.0;
            for (std::uint64_t i = 0; i < amp_.size(); ++i)
                if (i & qbit) p1 += std::norm(amp_[i]);
            out[k] = 1.0 - 2.0 * p1;
        }
    }

    void apply_ry(std::uint32_t target, double angle) {
        const double c = std::cos(angle / 2.0);
        const double s = std::sin(angle / 2.0);
        const std::uint64_t tbit = 1ULL << target;
        const std::uint64_t dim = amp_.size();
        for (std::uint64_t g = 0; g < dim; g += tbit << 1) {
            for (std::uint64_t i = g; i < g + tbit; ++i) {
                const cplx a0 = amp_[i];
                const cplx a1 = amp_[i | tbit];
                amp_[i] = c * a0 - s * a1;
                amp_[i | tbit] = s * a0 + c * a1;
            }
        }
    }

    void apply_rz(std::uint32_t target, double angle) {
        const cplx e0 = std::polar(1.0, -angle / 2.0);
        const cplx e1 = std::polar(1.0, angle / 2.0);
        const std::uint64_t tbit = 1ULL << target;
        const std::uint64_t dim = amp_.size();
        for (std::uint64_t g = 0; g < dim; g += tbit << 1) {
            for (std::uint64_t i = g; i < g + tbit; ++i) {
                amp_[i] *= e0;
                amp_[i | tbit] *= e1;
            }
        }
    }

    void apply_cnot(std::uint32_t control, std::uint32_t target) {
        const std::uint64_t cbit = 1ULL << control;
        const std::uint64_t tbit = 1ULL << target;
        const std::uint64_t dim = amp_.size();
        for (std::uint64_t i = 0; i < dim; ++i)
            if ((i & cbit) && !(i & tbit)) std::swap(amp_[i], amp_[i | tbit]);
    }

    VqcSpec spec_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_;
    std::vector<cplx> amp_;
    std::vector<double> enc_;
    std::vector<double> shift_enc_;
    std::vector<double> shift_theta_;
    std::vector<double> out_plus_;
    std::vector<double> out_minus_;
};

// <Z_k> for the first n_outputs qubits after encoding + layered ansatz.
inline std::vector<double> vqc_forward(const VqcSpec& spec, const ParameterVector& theta,
                                       const std::vector<double>& input) {
    VqcEvaluator eval(spec);
    return eval.forward(input, theta);
}

// Exact gradient of <Z_output_index> with respect to every parameter.
inline std::vector<double> parameter_shift_grad(const VqcSpec& spec, const ParameterVector& theta,
                                                const std::vector<double>& input,
                                                std::size_t output_index) {
    spec.validate();
    detail::require(output_index < spec.n_outputs, "output index out of range");
    detail::require(theta.size() == spec.parameter_count(),
                    "parameter vector length does not match the VQC spec");
    for (double t : theta) detail::require(std::isfinite(t), "parameters must be finite");
    detail::require(input.size() == spec.n_qubits, "input length must equal n_qubits");
    VqcEvaluator eval(spec);
    std::vector<double> jac(spec.n_outputs * spec.parameter_count());
    eval.param_jacobian(input.data(), theta.data(), jac.data());
    std::vector<double> grad(spec.parameter_count());
    for (std::size_t j = 0; j < grad.size(); ++j)
        grad[j] = jac[output_index * spec.parameter_count() + j];
    return grad;
}

}  // namespace qcoord
