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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ssdr::nn {

// Fully connected network with softplus hidden activations and a linear
// output layer. Parameters are stored flat, layer-major: for each layer the
// weight matrix (out x in, row-major) followed by its bias vector.
struct MlpWeights {
    std::vector<std::size_t> dims;  // input, hidden..., output
    std::vector<double> params;

    MlpWeights() = default;
    explicit MlpWeights(std::vector<std::size_t> layer_dims);  // zero-initialized
    MlpWeights(std::vector<std::size_t> layer_dims, std::vector<double> values);

    static std::size_t parameter_count(std::span<const std::size_t> dims);
    std::size_t parameter_count() const { return params.size(); }
    std::size_t in_dim() const { return dims.front(); }
    std::size_t out_dim() const { return dims.back(); }
    std::size_t layers() const { return dims.size() - 1; }

    // Throws ConfigError on a bad shape or non-finite parameter.
    void validate() const;
};

// Per-layer activations recorded during the forward pass.
struct MlpTape {
    std::vector<std::vector<double>> inputs;  // input to each layer
    std::vector<double> output;
};

std::vector<double> mlp_forward(const MlpWeights& w, std::span<const double> in, MlpTape* tape = nullptr);

// Accumulates d(loss)/d(params) into `dparams` given d(loss)/d(output).
// When `din` is non-null it receives d(loss)/d(input).
void mlp_backward(const MlpWeights& w, const MlpTape& tape, std::span<const double> dout,
                  std::span<double> dparams, std::vector<double>* din = nullptr);

// Scaled uniform (Glorot-style) initialization with zero biases.
void init_random(MlpWeights& w, std::uint64_t seed, double gain = 1.0);

// Offset of the bias vector of `layer` inside the flat parameter array.
std::size_t bias_offset(const MlpWeights& w, std::size_t layer);

double softplus(double x);
double sigmoid(double x);

}  // namespace ssdr::nn
