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

#include "core/vec.hpp"

namespace ssdr {

struct PixelCoord {
    double x = 0.0;
    double y = 0.0;
};

// Pinhole camera in view space: right-handed, looking along +z, image y
// pointing down. Pixel (i, j) spans [i, i+1) x [j, j+1).
struct Camera {
    double fx = 1.0;
    double fy = 1.0;
    double cx = 0.0;
    double cy = 0.0;
    int width = 1;
    int height = 1;

    // Throws ConfigError when the intrinsics break the invariants.
    void validate() const;

    bool inside(const PixelCoord& px) const {
        return px.x >= 0.0 && px.y >= 0.0 && px.x < width && px.y < height;
    }
};

struct Projection {
    PixelCoord pixel;
    bool in_view = false;
};

// Throws ContractViolation ("behind camera") for z <= 0.
Projection project(const Camera& cam, const Vec3& x);

// Throws ContractViolation for depth <= 0. `depth` is the z coordinate.
Vec3 unproject(const Camera& cam, const PixelCoord& px, double depth);

// View-space direction through a pixel position, normalized.
Vec3 pixel_ray(const Camera& cam, const PixelCoord& px);

}  // namespace ssdr
