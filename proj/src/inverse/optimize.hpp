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

#include <memory>
#include <string>
#include <vector>

#include "core/camera.hpp"
#include "core/gbuffer.hpp"
#include "lighting/light_field.hpp"
#include "render/render.hpp"

namespace ssdr::inverse {

// Which quantities the optimizer updates.
struct ParamSet {
    bool albedo = false;
    bool roughness = false;
    bool metallic = false;
    bool normal = false;
    bool light = false;

    bool any() const { return albedo || roughness || metallic || normal || light; }

    // Comma-separated list of a, r, m, n, light. Throws ConfigError on an
    // unknown name.
    static ParamSet parse(const std::string& list);
    std::string to_string() const;
};

struct LossConfig {
    double lambda_r = 1.0;  // re-render loss weight
    // Weights of the albedo/normal/material/depth supervision terms; those
    // terms need ground-truth maps and are not part of this optimizer.
    double lambda_a = 0.0;
    double lambda_n = 0.0;
    double lambda_m = 0.0;
    double lambda_d = 0.0;
    double hdr_eps = 1.0;

    int iterations = 200;
    double learning_rate = 0.05;
    double final_lr_ratio = 0.1;  // geometric decay from learning_rate to this fraction
    ParamSet params;
    // Optimize one value per map instead of one per pixel.
    bool shared = false;
    // Draw fresh samples each iteration (seed + iteration) instead of keeping
    // one fixed seed for the whole run.
    bool resample = false;
    // Sampling is redrawn from the current parameters every iteration, so the
    // pdf is treated as a constant by default.
    render::RenderConfig render = [] {
        render::RenderConfig rc;
        rc.pdf_gradient = false;
        return rc;
    }();

    void validate() const;
};

struct TraceRow {
    int iteration = 0;
    double loss = 0.0;
    double mean_albedo = 0.0;
    double mean_roughness = 0.0;
    double mean_metallic = 0.0;
    double mean_light = 0.0;
};

struct OptimizeResult {
    GBuffer gbuffer;
    std::unique_ptr<lighting::LightField> light;
    // One row per iteration (loss before its update) plus a final row for
    // the returned parameters.
    std::vector<TraceRow> trace;
};

// Analysis-by-synthesis: render, compare with `target`, back-propagate and
// take an Adam step, then clamp parameters to their valid ranges. Only pixels
// with geometry take part. Throws NumericalError if the loss turns NaN.
OptimizeResult optimize(const GBuffer& init, const Camera& cam, const lighting::LightField& light,
                        const ImageBuffer& target, const LossConfig& cfg);

}  // namespace ssdr::inverse
