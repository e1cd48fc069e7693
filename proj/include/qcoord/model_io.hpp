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
#include <string>

#include <json.hpp>

#include "qcoord/classical_nets.hpp"
#include "qcoord/qmodel.hpp"

namespace qcoord {

namespace detail {

inline nlohmann::json vqc_to_json(const VqcSpec& spec) {
    nlohmann::json j;
    j["n_qubits"] = spec.n_qubits;
    j["n_layers"] = spec.n_layers;
    j["entanglement"] = spec.entanglement == Entanglement::Ring ? "ring" : "skip";
    j["n_outputs"] = spec.n_outputs;
    std::vector<std::string> axes;
    for (std::size_t l = 0; l < spec.rotation_axes.size(); ++l)
        axes.push_back(spec.rotation_axes[l] == RotationAxis::Y ? "y" : "z");
    j["rotation_axes"] = axes;
    return j;
}

inline VqcSpec vqc_from_json(const nlohmann::json& j) {
    VqcSpec spec;
    spec.n_qubits = j.at("n_qubits").get<std::size_t>();
    spec.n_layers = j.at("n_layers").get<std::size_t>();
    spec.entanglement =
        j.at("entanglement").get<std::string>() == "skip" ? Entanglement::Skip
                                                          : Entanglement::Ring;
    spec.n_outputs = j.at("n_outputs").get<std::size_t>();
    for (const auto& a : j.at("rotation_axes"))
        spec.rotation_axes.push_back(a.get<std::string>() == "z" ? RotationAxis::Z
                                                                 : RotationAxis::Y);
    spec.validate();
    return spec;
}

}  // namespace detail

inline constexpr int kModelFormatVersion = 1;

inline nlohmann::json model_to_json(const QTcnLstmModel& model) {
    model.validate();
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["type"] = "qtcnlstm";
    j["horizon"] = model.horizon;
    j["scaling"] = {{"price_min", model.scaling.price_min},
                    {"price_max", model.scaling.price_max},
                    {"resp_min", model.scaling.resp_min},
                    {"resp_max", model.scaling.resp_max}};
    j["tcn"] = {{"kernel_size", model.tcn.kernel_size},
                {"dilation", model.tcn.dilation},
                {"stride", model.tcn.stride},
                {"vqc", detail::vqc_to_json(model.tcn.vqc)},
                {"theta", model.tcn_theta}};
    nlohmann::json lstm;
    lstm["input_size"] = model.lstm.input_size;
    lstm["hidden_size"] = model.lstm.hidden_size;
    lstm["output_size"] = model.lstm.output_size;
    const VqcSpec* specs[6] = {&model.lstm.vqc1, &model.lstm.vqc2, &model.lstm.vqc3,
                               &model.lstm.vqc4, &model.lstm.vqc5, &model.lstm.vqc6};
    for (int i = 0; i < 6; ++i) {
        lstm["vqc" + std::to_string(i + 1)] = detail::vqc_to_json(*specs[i]);
        lstm["theta" + std::to_string(i + 1)] = model.lstm_params.theta[i];
    }
    j["lstm"] = lstm;
    j["head"] = {{"weights", model.head_weights}, {"bias", model.head_bias}};
    return j;
}

inline QTcnLstmModel model_from_json(const nlohmann::json& j) {
    detail::require(j.at("format_version").get<int>() == kModelFormatVersion,
                    "unsupported model format version");
    detail::require(j.at("type").get<std::string>() == "qtcnlstm", "unexpected model type");
    QTcnLstmModel m;
    m.horizon = j.at("horizon").get<std::size_t>();
    const auto& s = j.at("scaling");
    m.scaling = Scaling{s.at("price_min").get<double>(), s.at("price_max").get<double>(),
                        s.at("resp_min").get<double>(), s.at("resp_max").get<double>()};
    const auto& tc = j.at("tcn");
    m.tcn.kernel_size = tc.at("kernel_size").get<std::size_t>();
    m.tcn.dilation = tc.at("dilation").get<std::size_t>();
    m.tcn.stride = tc.at("stride").get<std::size_t>();
    m.tcn.vqc = detail::vqc_from_json(tc.at("vqc"));
    m.tcn_theta = tc.at("theta").get<std::vector<double>>();
    const auto& ls = j.at("lstm");
    m.lstm.input_size = ls.at("input_size").get<std::size_t>();
    m.lstm.hidden_size = ls.at("hidden_size").get<std::size_t>();
    m.lstm.output_size = ls.at("output_size").get<std::size_t>();
    VqcSpec* specs[6] = {&m.lstm.vqc1, &m.lstm.vqc2, &m.lstm.vqc3,
                         &m.lstm.vqc4, &m.lstm.vqc5, &m.lstm.vqc6};
    for (int i = 0; i < 6; ++i) {
        *specs[i] = detail::vqc_from_json(ls.at("vqc" + std::to_string(i + 1)));
        m.lstm_params.theta[i] =
            ls.at("theta" + std::to_string(i + 1)).get<std::vector<double>>();
    }
    m.head_weights = j.at("head").at("weights").get<std::vector<double>>();
    m.head_bias = j.at("head").at("bias").get<std::vector<double>>();
    m.validate();
    return m;
}

inline void save_model(const std::string& path, const QTcnLstmModel& model) {
    std::ofstream os(path);
    detail::require(os.good(), "cannot open model file for writing: " + path);
    os << model_to_json(model).dump(2) << "\n";
}

inline QTcnLstmModel load_model(const std::string& path) {
    std::ifstream is(path);
    detail::require(is.good(), "cannot open model file: " + path);
    nlohmann::json j;
    is >> j;
    return model_from_json(j);
}

inline std::string classical_arch_name(ClassicalNet::Arch arch) {
    switch (arch) {
        case ClassicalNet::Arch::Mlp: return "mlp";
        case ClassicalNet::Arch::Tcn: return "tcn";
        case ClassicalNet::Arch::Lstm: return "lstm";
        case ClassicalNet::Arch::TcnLstm: return "tcnlstm";
    }
    return "?";
}

inline nlohmann::json classical_to_json(const ClassicalNet& net) {
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["type"] = classical_arch_name(net.arch());
    j["horizon"] = net.horizon();
    j["scaling"] = {{"price_min", net.scaling().price_min},
                    {"price_max", net.scaling().price_max},
                    {"resp_min", net.scaling().resp_min},
                    {"resp_max", net.scaling().resp_max}};
    j["parameters"] = net.parameters();
    return j;
}

inline ClassicalNet classical_from_json(const nlohmann::json& j) {
    detail::require(j.at("format_version").get<int>() == kModelFormatVersion,
                    "unsupported model format version");
    ClassicalNet net(ClassicalNet::arch_from_name(j.at("type").get<std::string>()),
                     j.at("horizon").get<std::size_t>(), 0);
    const auto& s = j.at("scaling");
    net.scaling() = Scaling{s.at("price_min").get<double>(), s.at("price_max").get<double>(),
                            s.at("resp_min").get<double>(), s.at("resp_max").get<double>()};
    std::vector<double> params = j.at("parameters").get<std::vector<double>>();
    detail::require(params.size() == net.count_parameters(),
                    "classical parameter count mismatch");
    net.parameters() = std::move(params);
    return net;
}

}  // namespace qcoord
