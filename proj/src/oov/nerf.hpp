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

#include <span>
#include <vector>

#include "core/sampler.hpp"
#include "core/spectrum.hpp"
#include "core/vec.hpp"
#include "lighting/posenc.hpp"
#include "nn/mlp.hpp"

namespace ssdr::oov {

struct NerfConfig {
    lighting::PosEncConfig position_encoding{10, true};
    double position_scale = 0.1;  // meters -> encoder units (room scale maps to ~[-1, 1])
    double radiance_scale = 5.0;  // c = radiance_scale * sigmoid(.)
};

// Input 63 (3 * (2*10 + 1)), 4 hidden layers of 64, output (sigma, r, g, b).
std::vector<std::size_t> default_nerf_dims(const NerfConfig& cfg = {});

struct NerfOutput {
    double sigma = 0.0;  // softplus, m^-1
    Spectrum color;      // radiance_scale * sigmoid
};

// Direction-free radiance/density MLP evaluated on gamma(x).
NerfOutput nerf_eval(const nn::MlpWeights& w, const Vec3& x, const NerfConfig& cfg = {});

// Accumulates dL/dparams given dL/dsigma and dL/dcolor.
void nerf_backward(const nn::MlpWeights& w, const Vec3& x, const NerfConfig& cfg, double dsigma,
                   const Spectrum& dcolor, std::span<double> dparams);

struct VolumeConfig {
    double t_near = 0.05;
    double t_far = 20.0;
    int n_samples = 32;
    void validate() const;
};

struct VolumeSample {
    double t = 0.0;
    Vec3 x;
    double sigma = 0.0;
    Spectrum color;
    double delta = 0.0;
};

struct Composite {
    Spectrum radiance;
    std::vector<double> weights;  // T_i (1 - exp(-sigma_i delta_i))
};

// Sum_i T_i (1 - exp(-sigma_i delta_i)) c_i with T_i = exp(-sum_{j<i} sigma_j delta_j).
Composite composite(std::span<const VolumeSample> samples);

// Stratified sample positions t_i on [t_near, t_far]; deltas t_{i+1} - t_i,
// except that the first starts at t_near and the last reaches t_far.
// Consumes n_samples draws from rng.
std::vector<VolumeSample> stratified_samples(const Vec3& p, const Vec3& d, const VolumeConfig& cfg, Sampler& rng);

// Radiance arriving at p from direction d (d points toward the source):
// samples x_i = p + t_i d and composites front to back.
Spectrum volume_render(const nn::MlpWeights& w, const Vec3& p, const Vec3& d, const VolumeConfig& vcfg,
                       Sampler& rng, const NerfConfig& ncfg = {});

// Adds adjoint . dL/dparams into dparams. rng must replay the forward stream.
void volume_render_backward(const nn::MlpWeights& w, const Vec3& p, const Vec3& d, const VolumeConfig& vcfg,
                            Sampler& rng, const NerfConfig& ncfg, const Spectrum& adjoint,
                            std::span<double> dparams);

// Convex combination (1 - u) l_ssrt + u l_oov. Throws for u outside [0, 1].
Spectrum blend(const Spectrum& l_ssrt, const Spectrum& l_oov, double u);

}  // namespace ssdr::oov
