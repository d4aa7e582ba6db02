// ----------------------------------------------------------------------------
// Copyright 2026 The ssdr Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ----------------------------------------------------------------------------

#include "oov/hypernet.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"

namespace ssdr::oov {

HypernetParams::HypernetParams(std::size_t feature_dim, std::vector<std::size_t> dims)
    : in_dim(feature_dim), target_dims(std::move(dims)) {
    params.assign(parameter_count(), 0.0);
}

void HypernetParams::validate() const {
    if (in_dim == 0) throw ConfigError("hypernet: zero feature dimension");
    if (target_dims.size() < 2) throw ConfigError("hypernet: target MLP needs input and output dims");
    if (params.size() != parameter_count())
        throw ConfigError("hypernet: parameter count " + std::to_string(params.size()) + " != " +
                          std::to_string(parameter_count()));
    for (double p : params)
        if (!std::isfinite(p)) throw ConfigError("hypernet: non-finite parameter");
}

nn::MlpWeights hypernet_forward(std::span<const double> fg, const HypernetParams& h) {
    if (fg.size() != h.in_dim)
        throw ConfigError("hypernet: feature length " + std::to_string(fg.size()) + " != " +
                          std::to_string(h.in_dim));
    const std::size_t out = h.out_dim();
    if (h.params.size() != h.parameter_count()) throw ConfigError("hypernet: malformed parameters");
    std::vector<double> phi(out);
    const double* W = h.params.data();
    const double* b = W + out * h.in_dim;
    for (std::size_t o = 0; o < out; ++o) {
        const double* row = W + o * h.in_dim;
        double s = b[o];
        for (std::size_t i = 0; i < h.in_dim; ++i) s += row[i] * fg[i];
        phi[o] = s;
    }
    return nn::MlpWeights(h.target_dims, std::move(phi));
}

void hypernet_backward(std::span<const double> fg, const HypernetParams& h, std::span<const double> dphi,
                       std::span<double> dparams, std::span<double> dfg) {
    const std::size_t out = h.out_dim();
    if (fg.size() != h.in_dim || dphi.size() != out || dparams.size() != h.parameter_count())
        throw ConfigError("hypernet_backward: size mismatch");
    if (!dfg.empty() && dfg.size() != h.in_dim) throw ConfigError("hypernet_backward: dfg size mismatch");
    const double* W = h.params.data();
    double* dW = dparams.data();
    double* db = dW + out * h.in_dim;
    for (std::size_t o = 0; o < out; ++o) {
        const double g = dphi[o];
        if (g == 0.0) continue;
        db[o] += g;
        double* drow = dW + o * h.in_dim;
        for (std::size_t i = 0; i < h.in_dim; ++i) drow[i] += g * fg[i];
        if (!dfg.empty())
            for (std::size_t i = 0; i < h.in_dim; ++i) dfg[i] += g * W[o * h.in_dim + i];
    }
}

}  // namespace ssdr::oov
