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

#include "inverse/optimize.hpp"
#include "render/render.hpp"

namespace ssdr::render {

struct GradcheckConfig {
    int patch = 8;          // side of the square patch around the principal point
    double step = 1e-6;     // central difference half-step
    double tolerance = 1e-4;
    // Entries where both |fd| and |adjoint| are below this are not compared;
    // a class with no compared entries passes.
    double abs_floor = 1e-10;
    std::size_t max_light_params = 16;  // light parameters checked (evenly spaced)
    RenderConfig render;  // spp 64 by default
};

struct GradcheckEntry {
    std::string name;       // a, r, m, n, light
    double max_rel_err = 0.0;
    double max_abs_err = 0.0;
    std::size_t compared = 0;
    bool pass = false;
};

struct GradcheckReport {
    std::vector<GradcheckEntry> entries;
    bool pass = false;
};

// Compares render_backward against central finite differences of
// render_mc_frozen (common random numbers, directions drawn from the
// unperturbed G-buffer) for a random projection of the patch image.
GradcheckReport gradcheck(const GBuffer& g, const Camera& cam, const lighting::LightField& light,
                          const inverse::ParamSet& params, const GradcheckConfig& cfg);

}  // namespace ssdr::render
