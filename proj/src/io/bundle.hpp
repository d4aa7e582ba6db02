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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/camera.hpp"
#include "core/gbuffer.hpp"
#include "lighting/analytic.hpp"
#include "lighting/light_field.hpp"

namespace ssdr::io {

namespace fs = std::filesystem;

enum class LightingKind { Constant, Sky, Grid, Learned };

LightingKind parse_lighting_kind(const std::string& name);
std::string to_string(LightingKind kind);

// Assets of the learned lighting path, as paths relative to the bundle.
struct LearnedAssets {
    std::string features;                // feature grid manifest
    std::string decoder;                 // decoder MLP header
    std::optional<std::string> nerf;     // direct NeRF weights, or
    std::optional<std::string> hypernet; // hypernetwork producing them from
    std::vector<double> global_feature;  // this global image feature
};

// bundle.json. Every field is optional; a bundle without the file uses the
// default map names.
struct BundleManifest {
    std::string albedo = "albedo.pfm";
    std::string normal = "normal.pfm";
    std::string depth = "depth.pfm";
    std::string roughness = "roughness.pfm";
    std::string metallic = "metallic.pfm";
    std::string camera = "camera.json";
    double scene_scale = 1.0;  // meters per depth unit
    bool diffuse_only = false;  // Lambertian scene: render the diffuse lobe only

    std::string default_lighting = "constant";
    std::optional<Spectrum> constant;
    std::optional<lighting::SkyParams> sky;
    std::optional<std::string> grid;  // grid light header
    std::optional<LearnedAssets> learned;
    std::optional<std::string> target;  // reference or target image
};

struct Bundle {
    fs::path dir;
    BundleManifest manifest;
    GBuffer gbuffer;
    Camera camera;
};

// Loads and validates a bundle directory. A missing map raises
// ValidationError("missing map: <name>"); invariant violations raise
// ValidationError with the report unless `repair` is set.
Bundle load_bundle(const fs::path& dir, bool repair = false);

// Writes the five maps, camera.json and bundle.json into dir (created if needed).
void save_bundle(const fs::path& dir, const GBuffer& g, const Camera& cam, const BundleManifest& manifest);

BundleManifest read_manifest(const fs::path& path);
void write_manifest(const fs::path& path, const BundleManifest& manifest);

// Builds the requested light field from the bundle's assets. Constant and
// sky fall back to defaults (radiance 1, default sky) when the bundle does
// not specify them; grid and learned require their assets.
std::unique_ptr<lighting::LightField> make_lighting(const Bundle& bundle, LightingKind kind);

}  // namespace ssdr::io
