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
#include <optional>
#include <vector>

#include "lighting/light_field.hpp"
#include "lighting/lightnet.hpp"
#include "oov/hypernet.hpp"
#include "oov/nerf.hpp"

namespace ssdr::oov {

// Source of the out-of-view NeRF weights: either stored directly or produced
// by the hypernetwork from a global image feature.
struct OovWeights {
    std::optional<nn::MlpWeights> direct;
    std::optional<HypernetParams> hypernet;
    std::vector<double> global_feature;
};

// Full learned lighting: SSRT + decoder for in-view sources, NeRF volume
// rendering for out-of-view ones, blended by the SSRT uncertainty.
// Differentiable parameters are the decoder weights followed by either the
// direct NeRF weights or the hypernetwork parameters.
class LearnedLightField final : public lighting::LightField {
public:
    LearnedLightField(lighting::FeatureGrid features, GBuffer gbuffer, Camera camera, nn::MlpWeights decoder,
                      OovWeights oov, lighting::LightNetConfig lightnet_cfg = {}, NerfConfig nerf_cfg = {},
                      VolumeConfig volume_cfg = {});

    lighting::LightQuery query(const Vec3& p, const Vec3& d, Sampler& rng) const override;

    std::size_t parameter_count() const override;
    std::vector<double> parameters() const override;
    void set_parameters(std::span<const double> values) override;
    void accumulate_gradient(const Vec3& p, const Vec3& d, Sampler& rng, const Spectrum& adjoint,
                             std::span<double> grad) const override;
    std::unique_ptr<lighting::LightField> clone() const override;

    const nn::MlpWeights& decoder() const { return decoder_; }
    const nn::MlpWeights& nerf_weights() const { return nerf_; }

private:
    lighting::LightNetInputs inputs() const;
    void refresh_nerf();

    lighting::FeatureGrid features_;
    GBuffer gbuffer_;
    Camera camera_;
    nn::MlpWeights decoder_;
    OovWeights oov_;
    nn::MlpWeights nerf_;  // effective NeRF weights (direct or hypernet output)
    lighting::LightNetConfig lightnet_cfg_;
    NerfConfig nerf_cfg_;
    VolumeConfig volume_cfg_;
};

}  // namespace ssdr::oov
