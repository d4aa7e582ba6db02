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

#include "core/image.hpp"
#include "core/spectrum.hpp"

namespace ssdr::inverse {

struct ImageLoss {
    double value = 0.0;
    ImageBuffer adjoint;  // d(value)/d(pred)
};

// Mean squared error over every channel of the valid pixels. `valid`, when
// given, is a 1-channel mask (> 0 marks a valid pixel) of the same size.
ImageLoss loss_rerender(const ImageBuffer& pred, const ImageBuffer& target, const ImageBuffer* valid = nullptr);

struct SpectrumLoss {
    double value = 0.0;
    std::vector<Spectrum> adjoint;
};

// Mean over samples and channels of (log(eps + pred) - log(eps + gt))^2.
// eps = 1 gives the log(1 + x) form. Throws ContractViolation on negative or
// non-finite inputs.
SpectrumLoss loss_light_hdr(std::span<const Spectrum> pred, std::span<const Spectrum> gt, double eps = 1.0);

}  // namespace ssdr::inverse
