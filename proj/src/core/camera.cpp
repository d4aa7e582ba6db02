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

#include "core/camera.hpp"

#include <cmath>

#include "core/error.hpp"

namespace ssdr {

void Camera::validate() const {
    if (!(fx > 0.0) || !(fy > 0.0)) throw ConfigError("camera: focal lengths must be positive");
    if (width <= 0 || height <= 0) throw ConfigError("camera: image size must be positive");
    if (!(cx >= 0.0 && cx < width) || !(cy >= 0.0 && cy < height))
        throw ConfigError("camera: principal point outside the image");
}

Projection project(const Camera& cam, const Vec3& x) {
    if (!(x.z > 0.0)) throw ContractViolation("project: point is behind camera");
    Projection p;
    p.pixel = {cam.fx * x.x / x.z + cam.cx, cam.fy * x.y / x.z + cam.cy};
    p.in_view = cam.inside(p.pixel);
    return p;
}

Vec3 unproject(const Camera& cam, const PixelCoord& px, double depth) {
    if (!(depth > 0.0)) throw ContractViolation("unproject: depth must be positive");
    return {(px.x - cam.cx) / cam.fx * depth, (px.y - cam.cy) / cam.fy * depth, depth};
}

Vec3 pixel_ray(const Camera& cam, const PixelCoord& px) {
    return normalize(Vec3{(px.x - cam.cx) / cam.fx, (px.y - cam.cy) / cam.fy, 1.0});
}

}  // namespace ssdr
