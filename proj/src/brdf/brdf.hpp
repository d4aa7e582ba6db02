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

#include "brdf/ggx.hpp"
#include "core/sampler.hpp"

namespace ssdr::brdf {

using Params = ParamsT<double>;

enum class Lobe { Diffuse, Specular };

struct Sample {
    Vec3 direction;
    double pdf = 0.0;
    Spectrum value;
    Lobe lobe = Lobe::Diffuse;
    // False when no usable direction was produced (pdf 0); callers skip it
    // but still count it toward the sample total.
    bool valid = false;
};

// Checked evaluation; throws ContractViolation when any direction deviates
// from unit length by more than 1e-3.
Spectrum eval(const Vec3& v, const Vec3& d, const Vec3& n, const Params& params,
              Lobes lobes = Lobes::All);
LobeValues<double> eval_lobes(const Vec3& v, const Vec3& d, const Vec3& n, const Params& params,
                              Lobes lobes = Lobes::All);

double pdf(const Vec3& v, const Vec3& d, const Vec3& n, const Params& params,
           Lobes lobes = Lobes::All);

// Draws three numbers from `rng`: lobe choice and a 2D direction sample.
Sample sample(const Vec3& v, const Vec3& n, const Params& params, Sampler& rng,
              Lobes lobes = Lobes::All);

Vec3 sample_cosine_hemisphere(double u1, double u2);
Vec3 sample_ggx_half_vector(double u1, double u2, double alpha);

}  // namespace ssdr::brdf
