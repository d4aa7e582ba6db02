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

#include "nn/mlp.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"
#include "core/sampler.hpp"

namespace ssdr::nn {

double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

std::size_t MlpWeights::parameter_count(std::span<const std::size_t> dims) {
    std::size_t n = 0;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) n += dims[l] * dims[l + 1] + dims[l + 1];
    return n;
}

MlpWeights::MlpWeights(std::vector<std::size_t> layer_dims) : dims(std::move(layer_dims)) {
    if (dims.size() < 2) throw ConfigError("mlp: need at least input and output dims");
    params.assign(parameter_count(dims), 0.0);
}

MlpWeights::MlpWeights(std::vector<std::size_t> layer_dims, std::vector<double> values)
    : dims(std::move(layer_dims)), params(std::move(values)) {
    validate();
}

void MlpWeights::validate() const {
    if (dims.size() < 2) throw ConfigError("mlp: need at least input and output dims");
    for (auto d : dims)
        if (d == 0) throw ConfigError("mlp: zero-width layer");
    if (params.size() != parameter_count(dims))
        throw ConfigError("mlp: parameter count " + std::to_string(params.size()) + " does not match dims (" +
                          std::to_string(parameter_count(dims)) + ")");
    for (double p : params)
        if (!std::isfinite(p)) throw ConfigError("mlp: non-finite parameter");
}

std::size_t bias_offset(const MlpWeights& w, std::size_t layer) {
    std::size_t off = 0;
    for (std::size_t l = 0; l < layer; ++l) off += w.dims[l] * w.dims[l + 1] + w.dims[l + 1];
    return off + w.dims[layer] * w.dims[layer + 1];
}

std::vector<double> mlp_forward(const MlpWeights& w, std::span<const double> in, MlpTape* tape) {
    if (in.size() != w.in_dim())
        throw ConfigError("mlp: input size " + std::to_string(in.size()) + " != " + std::to_string(w.in_dim()));
    std::vector<double> act(in.begin(), in.end());
    std::vector<double> next;
    if (tape) tape->inputs.clear();

    const double* p = w.params.data();
    const std::size_t L = w.layers();
    for (std::size_t l = 0; l < L; ++l) {
        const std::size_t ni = w.dims[l], no = w.dims[l + 1];
        const double* W = p;
        const double* b = p + ni * no;
        next.assign(no, 0.0);
        for (std::size_t o = 0; o < no; ++o) {
            const double* row = W + o * ni;
            double s = b[o];
            for (std::size_t i = 0; i < ni; ++i) s += row[i] * act[i];
            next[o] = (l + 1 < L) ? softplus(s) : s;
        }
        if (tape) tape->inputs.push_back(std::move(act));
        act.swap(next);
        p += ni * no + no;
    }
    if (tape) tape->output = act;
    return act;
}

void mlp_backward(const MlpWeights& w, const MlpTape& tape, std::span<const double> dout,
                  std::span<double> dparams, std::vector<double>* din) {
    const std::size_t L = w.layers();
    if (tape.inputs.size() != L) throw ConfigError("mlp_backward: tape does not match network");
    if (dout.size() != w.out_dim()) throw ConfigError("mlp_backward: output adjoint size mismatch");
    if (dparams.size() != w.parameter_count()) throw ConfigError("mlp_backward: gradient size mismatch");

    // delta = d(loss)/d(pre-activation) of the current layer
    std::vector<double> delta(dout.begin(), dout.end());
    std::vector<double> prev;
    for (std::size_t l = L; l-- > 0;) {
        const std::size_t ni = w.dims[l], no = w.dims[l + 1];
        const std::size_t off = bias_offset(w, l) - ni * no;
        const double* W = w.params.data() + off;
        double* dW = dparams.data() + off;
        double* db = dW + ni * no;
        const auto& x = tape.inputs[l];

        prev.assign(ni, 0.0);
        for (std::size_t o = 0; o < no; ++o) {
            const double g = delta[o];
            if (g == 0.0) continue;
            db[o] += g;
            const double* row = W + o * ni;
            double* drow = dW + o * ni;
            for (std::size_t i = 0; i < ni; ++i) {
                drow[i] += g * x[i];
                prev[i] += g * row[i];
            }
        }
        if (l > 0) {
            // x = softplus(z)  =>  dz = dx * sigmoid(z), with sigmoid(z) = 1 - exp(-x)
            for (std::size_t i = 0; i < ni; ++i) prev[i] *= -std::expm1(-x[i]);
        }
        delta.swap(prev);
    }
    if (din) *din = std::move(delta);
}

void init_random(MlpWeights& w, std::uint64_t seed, double gain) {
    Sampler rng(seed, 0x6d6c70, 0);
    std::size_t off = 0;
    for (std::size_t l = 0; l < w.layers(); ++l) {
        const std::size_t ni = w.dims[l], no = w.dims[l + 1];
        const double limit = gain * std::sqrt(6.0 / double(ni + no));
        for (std::size_t k = 0; k < ni * no; ++k) w.params[off + k] = (2.0 * rng.next1d() - 1.0) * limit;
        for (std::size_t k = 0; k < no; ++k) w.params[off + ni * no + k] = 0.0;
        off += ni * no + no;
    }
}

}  // namespace ssdr::nn
