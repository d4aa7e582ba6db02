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
#include <span>
#include <vector>

namespace ssdr::lighting {

struct PosEncConfig {
    int bands = 6;
    bool include_input = true;

    std::size_t output_dim(std::size_t input_dim) const {
        return input_dim * (2 * static_cast<std::size_t>(bands) + (include_input ? 1 : 0));
    }
};

// Sinusoidal encoding, component-major:
// [x, sin(2^0 pi x), cos(2^0 pi x), ..., sin(2^(L-1) pi x), cos(2^(L-1) pi x)]
// for each component in turn (x omitted when include_input is false).
std::vector<double> posenc(std::span<const double> x, const PosEncConfig& cfg);
void posenc_into(std::span<const double> x, const PosEncConfig& cfg, std::span<double> out);

// d(loss)/dx from d(loss)/d(encoding).
std::vector<double> posenc_backward(std::span<const double> x, const PosEncConfig& cfg,
                                    std::span<const double> dout);

}  // namespace ssdr::lighting
