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

#include "core/camera.hpp"
#include "core/image.hpp"
#include "core/vec.hpp"

namespace ssdr::ssrt {

struct Config {
    int max_steps = 1024;
    double stride = 1.0;           // pixels per march step
    double thickness = 0.05;       // meters; larger gaps flag the hit as occluded
    int refinement_steps = 8;      // binary-search iterations after a crossing
    double max_distance = 100.0;   // meters along the ray
    double near_plane = 1e-3;      // rays are clipped at this view-space z

    void validate() const;
};

enum class Status { Hit, ExitedView, ExhaustedSteps };

struct Hit {
    Status status = Status::ExhaustedSteps;
    Vec3 point;          // source point s, valid on Hit
    PixelCoord pixel;    // pi(s) on Hit; last in-view march position otherwise
    double delta_d = 0;  // |ray depth - surface depth| at the hit pixel
    double u = 1.0;      // uncertainty; exactly 1 unless status == Hit
    bool occluded = false;  // delta_d > thickness (ray passed behind a foreground surface)
};

// tanh(10 * delta_d). Throws ContractViolation for negative input.
double uncertainty(double delta_d);

// Marches from p along dir through the depth map. Depth values <= 0 or
// non-finite mark pixels without geometry, which never produce hits.
Hit trace(const ImageBuffer& depth, const Camera& cam, const Vec3& p, const Vec3& dir,
          const Config& cfg = {});

}  // namespace ssdr::ssrt
