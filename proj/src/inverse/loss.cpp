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

#include "inverse/loss.hpp"

#include <cmath>

#include "core/error.hpp"

namespace ssdr::inverse {

ImageLoss loss_rerender(const ImageBuffer& pred, const ImageBuffer& target, const ImageBuffer* valid) {
    if (!pred.same_shape(target)) throw ConfigError("loss_rerender: image dimensions differ");
    if (valid && (valid->width() != pred.width() || valid->height() != pred.height() || valid->channels() != 1))
        throw ConfigError("loss_rerender: mask dimensions differ");

    ImageLoss out{0.0, ImageBuffer(pred.width(), pred.height(), pred.channels())};
    const int c = pred.channels();
    std::size_t count = 0;
    for (int y = 0; y < pred.height(); ++y)
        for (int x = 0; x < pred.width(); ++x) {
            if (valid && !(valid->at(x, y) > 0.0)) continue;
            count += c;
            for (int k = 0; k < c; ++k) {
                const double r = pred.at(x, y, k) - target.at(x, y, k);
                out.value += r * r;
            }
        }
    if (count == 0) return out;
    const double inv = 1.0 / static_cast<double>(count);
    out.value *= inv;
    for (int y = 0; y < pred.height(); ++y)
        for (int x = 0; x < pred.width(); ++x) {
            if (valid && !(valid->at(x, y) > 0.0)) continue;
            for (int k = 0; k < c; ++k) out.adjoint.at(x, y, k) = 2.0 * (pred.at(x, y, k) - target.at(x, y, k)) * inv;
        }
    return out;
}

SpectrumLoss loss_light_hdr(std::span<const Spectrum> pred, std::span<const Spectrum> gt, double eps) {
    if (pred.size() != gt.size()) throw ConfigError("loss_light_hdr: batch sizes differ");
    require(eps > 0.0, "loss_light_hdr: eps must be positive");
    SpectrumLoss out;
    out.adjoint.resize(pred.size());
    if (pred.empty()) return out;
    const double inv = 1.0 / (3.0 * static_cast<double>(pred.size()));
    for (std::size_t i = 0; i < pred.size(); ++i)
        for (int k = 0; k < 3; ++k) {
            const double a = pred[i][k], b = gt[i][k];
            if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b))
                throw ContractViolation("loss_light_hdr: inputs must be finite and non-negative");
            const double r = std::log(eps + a) - std::log(eps + b);
            out.value += r * r * inv;
            out.adjoint[i][k] = 2.0 * r / (eps + a) * inv;
        }
    return out;
}

}  // namespace ssdr::inverse
