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
#include <vector>

#include "core/camera.hpp"
#include "inverse/optimize.hpp"
#include "lighting/analytic.hpp"
#include "lighting/lightnet.hpp"
#include "nn/mlp.hpp"
#include "oov/hypernet.hpp"

namespace ssdr::io {

namespace fs = std::filesystem;

// camera.json: {"fx", "fy", "cx", "cy", "width", "height"}
Camera read_camera(const fs::path& path);
void write_camera(const fs::path& path, const Camera& cam);

// f32 little-endian blob. The reader rejects sizes other than 4 * count.
std::vector<double> read_f32_blob(const fs::path& path, std::size_t count);
void write_f32_blob(const fs::path& path, const std::vector<double>& values);

// Weight files are a JSON header next to a raw blob:
//   {"kind": "mlp", "dims": [...], "count": N, "blob": "name.bin"}
//   {"kind": "hypernet", "in_dim": K, "target_dims": [...], "count": N, "blob": "name.bin"}
// The blob path is relative to the header. Values pass through f32.
nn::MlpWeights read_mlp(const fs::path& header);
void write_mlp(const fs::path& header, const nn::MlpWeights& w);
oov::HypernetParams read_hypernet(const fs::path& header);
void write_hypernet(const fs::path& header, const oov::HypernetParams& h);

// {"kind": "grid", "dims": [nx, ny, nz, ntheta, nphi], "bounds_min": [...],
//  "bounds_max": [...], "blob": "name.bin"}; blob layout as GridLight.
lighting::GridLight read_grid_light(const fs::path& header);
void write_grid_light(const fs::path& header, const lighting::GridLight& light);

// {"kind": "features", "width", "height", "channels", "slices": [...]}: one
// 3-channel PFM per group of channels, the last one zero-padded.
lighting::FeatureGrid read_feature_grid(const fs::path& manifest);
void write_feature_grid(const fs::path& manifest, const lighting::FeatureGrid& grid);

// iteration,loss,mean_albedo,mean_roughness,mean_metallic,mean_light
void write_trace_csv(const fs::path& path, const std::vector<inverse::TraceRow>& trace);

}  // namespace ssdr::io
