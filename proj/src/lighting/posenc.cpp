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

#include "lighting/posenc.hpp"

#include <cmath>
#include <numbers>

#include "core/error.hpp"

namespace ssdr::lighting {

void posenc_into(std::span<const double> x, const PosEncConfig& cfg, std::span<double> out) {
    if (cfg.bands < 1) throw ConfigError("posenc: bands must be >= 1");
    if (out.size() != cfg.output_dim(x.size())) throw ConfigError("posenc: output size mismatch");
    std::size_t k = 0;
    for (double xi : x) {
        if (cfg.include_input) out[k++] = xi;
        double freq = std::numbers::pi;
        for (int b = 0; b < cfg.bands; ++b, freq *= 2.0) {
            out[k++] = std::sin(freq * xi);
            out[k++] = std::cos(freq * xi);
        }
    }
}

std::vector<double> posenc(std::span<const double> x, const PosEncConfig& cfg) {
    std::vector<double> out(cfg.output_dim(x.size()));
    posenc_into(x, cfg, out);
    return out;
}

std::vector<double> posenc_backward(std::span<const double> x, const PosEncConfig& cfg,
                                    std::span<const double> dout) {
    if (dout.size() != cfg.output_dim(x.size())) throw ConfigError("posenc: adjoint size mismatch");
    std::vector<double> dx(x.size(), 0.0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (cfg.include_input) dx[i] += dout[k++];
        double freq = std::numbers::pi;
        for (int b = 0; b < cfg.bands; ++b, freq *= 2.0) {
            dx[i] += dout[k++] * freq * std::cos(freq * x[i]);
            dx[i] -= dout[k++] * freq * std::sin(freq * x[i]);
        }
    }
    return dx;
}

}  // namespace ssdr::lighting
