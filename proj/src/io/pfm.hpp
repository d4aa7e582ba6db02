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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "core/image.hpp"

namespace ssdr::io {

// Portable float map. "PF" holds 3 channels, "Pf" one. A negative scale token
// means little-endian samples, positive big-endian. Scanlines are stored
// bottom-up; ImageBuffer is top-down.
ImageBuffer decode_pfm(std::span<const std::uint8_t> bytes);

// Always writes little-endian with scale -1. Only 1- and 3-channel images.
std::vector<std::uint8_t> encode_pfm(const ImageBuffer& img);

ImageBuffer read_pfm(const std::filesystem::path& path);
void write_pfm(const std::filesystem::path& path, const ImageBuffer& img);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace ssdr::io
