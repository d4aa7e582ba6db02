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

#include <string>
#include <vector>

#include "core/camera.hpp"
#include "core/image.hpp"
#include "core/vec.hpp"

namespace ssdr {

// Per-pixel surface description. Depth is view-space z in meters; a
// non-positive or non-finite depth marks a pixel with no geometry.
struct GBuffer {
    ImageBuffer albedo;     // 3 channels, [0,1]
    ImageBuffer normal;     // 3 channels, unit view-space vectors
    ImageBuffer depth;      // 1 channel, > 0
    ImageBuffer roughness;  // 1 channel, [0,1]
    ImageBuffer metallic;   // 1 channel, [0,1]

    int width() const { return depth.width(); }
    int height() const { return depth.height(); }

    bool has_geometry(int x, int y) const;
    Vec3 normal_at(int x, int y) const;

    // Throws ValidationError when map shapes disagree.
    void check_shapes() const;
};

// Invalid depth sentinel used by the scene generators.
inline constexpr double kNoGeometry = 0.0;

bool is_valid_depth(double d);

struct ValidationIssue {
    enum class Kind { NonUnitNormal, OutOfRange, NonFinite };
    Kind kind;
    std::string map;
    int x = 0;
    int y = 0;
    double value = 0.0;
};

std::string to_string(const ValidationIssue& issue);

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

// Reports every violated per-pixel invariant of `g`. With `repair`, normals
// are renormalized and scalar maps clamped in place (non-finite values are
// replaced by 0, or by +z for normals). Mismatched map dimensions throw.
ValidationReport validate_gbuffer(GBuffer& g, bool repair);
ValidationReport validate_gbuffer(const GBuffer& g);

// Uniform G-buffer of a given size, handy for tests and scene generation.
GBuffer make_uniform_gbuffer(int width, int height, const Spectrum& albedo, const Vec3& normal,
                             double depth, double roughness, double metallic);

}  // namespace ssdr
