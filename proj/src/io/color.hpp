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

#include <filesystem>

#include "core/image.hpp"

namespace ssdr::io {

// x -> x^2.2 per channel (plain power law, not the piecewise sRGB curve).
// Values outside [0, 1] are clamped with a logged warning.
ImageBuffer srgb_to_linear(const ImageBuffer& img);

// (1 - exp(-exposure * x))^(1/2.2), in [0, 1).
double tonemap(double x, double exposure);

// 8-bit RGB preview of a 1- or 3-channel image. Throws ContractViolation for
// non-finite input.
void write_png_preview(const std::filesystem::path& path, const ImageBuffer& img, double exposure = 1.0);

// Images placed left to right (heights must agree).
ImageBuffer side_by_side(const std::vector<ImageBuffer>& images);

}  // namespace ssdr::io
