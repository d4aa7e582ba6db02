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

#include <span>
#include <vector>

#include "nn/mlp.hpp"

namespace ssdr::oov {

// Affine weight generator Phi = W fg + b. `params` holds W (out x in,
// row-major) followed by b; `target_dims` is the layer layout of the MLP whose
// weights are produced.
struct HypernetParams {
    std::size_t in_dim = 0;
    std::vector<std::size_t> target_dims;
    std::vector<double> params;

    HypernetParams() = default;
    HypernetParams(std::size_t feature_dim, std::vector<std::size_t> dims);  // zero-initialized

    std::size_t out_dim() const { return nn::MlpWeights::parameter_count(target_dims); }
    std::size_t parameter_count() const { return out_dim() * in_dim + out_dim(); }
    void validate() const;
};

nn::MlpWeights hypernet_forward(std::span<const double> fg, const HypernetParams& h);

// Given dL/dPhi, accumulates dL/d(params) into dparams and, when non-null,
// dL/dfg into dfg.
void hypernet_backward(std::span<const double> fg, const HypernetParams& h, std::span<const double> dphi,
                       std::span<double> dparams, std::span<double> dfg = {});

}  // namespace ssdr::oov
