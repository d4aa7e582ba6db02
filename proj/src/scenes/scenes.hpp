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
#include <memory>
#include <optional>
#include <string>

#include "brdf/ggx.hpp"
#include "io/bundle.hpp"
#include "lighting/analytic.hpp"
#include "lighting/lightnet.hpp"
#include "nn/mlp.hpp"
#include "oov/hypernet.hpp"

namespace ssdr::scenes {

enum class SceneKind { CornellLike, TwoPlane, GlossyFloor };

SceneKind parse_scene_kind(const std::string& name);
std::string to_string(SceneKind kind);

struct SceneOptions {
    int width = 32;
    int height = 32;
    bool reference = true;          // render the quadrature reference image
    long reference_nodes = 1'000'000;
    bool learned_assets = true;     // emit a feature grid and random decoder/hypernetwork
    int feature_channels = 8;
    std::uint64_t seed = 0;         // initialization of the learned assets
    int threads = 0;
};

// Analytic scenes with closed-form geometry. All share a pinhole camera at
// the origin looking along +z with fx = fy = 0.78125 * width.
//   cornell-like: closed box x, y in [-1, 1], back wall z = 3, red left and
//     green right walls, white elsewhere; Lambertian (diffuse lobe only); sky light.
//   two-plane: floor y = 1 and back wall z = 6; sampled 5D grid light.
//   glossy-floor: the two-plane geometry with a metallic floor of roughness
//     0.1 under a sky with a compact sun visible in the floor reflection.
struct Scene {
    SceneKind kind = SceneKind::CornellLike;
    GBuffer gbuffer;
    Camera camera;
    io::BundleManifest manifest;
    brdf::Lobes lobes = brdf::Lobes::All;
    std::optional<lighting::GridLight> grid;
    std::optional<ImageBuffer> reference;

    std::optional<lighting::FeatureGrid> features;
    std::optional<nn::MlpWeights> decoder;
    std::optional<oov::HypernetParams> hypernet;
    std::vector<double> global_feature;

    // The scene's default light field.
    std::unique_ptr<lighting::LightField> light() const;
};

Scene make_scene(SceneKind kind, const SceneOptions& opts = {});

// Writes the bundle and every asset of the scene into dir.
void write_scene(const std::filesystem::path& dir, const Scene& scene);

// Camera and geometry helpers shared by the generators.
Camera scene_camera(int width, int height);

// Two-plane geometry: depth and normals of the floor y = floor_y and the
// wall z = wall_z as seen by `cam`.
GBuffer two_plane_gbuffer(const Camera& cam, double floor_y = 1.0, double wall_z = 6.0);

}  // namespace ssdr::scenes
