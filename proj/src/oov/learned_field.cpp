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

#include "oov/learned_field.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace ssdr::oov {

LearnedLightField::LearnedLightField(lighting::FeatureGrid features, GBuffer gbuffer, Camera camera,
                                     nn::MlpWeights decoder, OovWeights oov, lighting::LightNetConfig lightnet_cfg,
                                     NerfConfig nerf_cfg, VolumeConfig volume_cfg)
    : features_(std::move(features)),
      gbuffer_(std::move(gbuffer)),
      camera_(camera),
      decoder_(std::move(decoder)),
      oov_(std::move(oov)),
      lightnet_cfg_(lightnet_cfg),
      nerf_cfg_(nerf_cfg),
      volume_cfg_(volume_cfg) {
    gbuffer_.check_shapes();
    decoder_.validate();
    volume_cfg_.validate();
    if (oov_.direct.has_value() == oov_.hypernet.has_value())
        throw ConfigError("learned light: provide exactly one of direct NeRF weights or a hypernetwork");
    if (oov_.hypernet) oov_.hypernet->validate();
    refresh_nerf();
    if (decoder_.in_dim() != lighting::lightnet_input_dim(features_.channels(), lightnet_cfg_) ||
        decoder_.out_dim() != 3)
        throw ConfigError("learned light: decoder shape does not match feature grid");
    if (nerf_.in_dim() != nerf_cfg_.position_encoding.output_dim(3) || nerf_.out_dim() != 4)
        throw ConfigError("learned light: NeRF weight shape mismatch");
}

lighting::LightNetInputs LearnedLightField::inputs() const {
    return {features_, gbuffer_, camera_, decoder_, lightnet_cfg_};
}

void LearnedLightField::refresh_nerf() {
    if (oov_.direct)
        nerf_ = *oov_.direct;
    else
        nerf_ = hypernet_forward(oov_.global_feature, *oov_.hypernet);
}

lighting::LightQuery LearnedLightField::query(const Vec3& p, const Vec3& d, Sampler& rng) const {
    const auto in = inputs();
    const auto r = lighting::lightnet_query(in, p, d);
    const double u = r.hit.u;
    Spectrum l_oov;
    if (u > 0.0) l_oov = volume_render(nerf_, p, d, volume_cfg_, rng, nerf_cfg_);
    return {blend(r.radiance, l_oov, u), 1.0 - u};
}

std::size_t LearnedLightField::parameter_count() const {
    return decoder_.parameter_count() +
           (oov_.direct ? oov_.direct->parameter_count() : oov_.hypernet->parameter_count());
}

std::vector<double> LearnedLightField::parameters() const {
    std::vector<double> out = decoder_.params;
    const auto& tail = oov_.direct ? oov_.direct->params : oov_.hypernet->params;
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
}

void LearnedLightField::set_parameters(std::span<const double> values) {
    if (values.size() != parameter_count()) throw ConfigError("learned light: wrong parameter count");
    const std::size_t nd = decoder_.parameter_count();
    std::copy(values.begin(), values.begin() + nd, decoder_.params.begin());
    auto& tail = oov_.direct ? oov_.direct->params : oov_.hypernet->params;
    std::copy(values.begin() + nd, values.end(), tail.begin());
    refresh_nerf();
}

void LearnedLightField::accumulate_gradient(const Vec3& p, const Vec3& d, Sampler& rng, const Spectrum& adjoint,
                                            std::span<double> grad) const {
    const auto in = inputs();
    const auto hit = ssrt::trace(gbuffer_.depth, camera_, p, d, lightnet_cfg_.ssrt);
    const double u = hit.u;
    const std::size_t nd = decoder_.parameter_count();
    if (u < 1.0) lighting::lightnet_query_backward(in, p, d, adjoint * (1.0 - u), grad.subspan(0, nd));
    if (u > 0.0) {
        auto tail = grad.subspan(nd);
        if (oov_.direct) {
            volume_render_backward(nerf_, p, d, volume_cfg_, rng, nerf_cfg_, adjoint * u, tail);
        } else {
            std::vector<double> dphi(nerf_.parameter_count(), 0.0);
            volume_render_backward(nerf_, p, d, volume_cfg_, rng, nerf_cfg_, adjoint * u, dphi);
            hypernet_backward(oov_.global_feature, *oov_.hypernet, dphi, tail);
        }
    }
}

std::unique_ptr<lighting::LightField> LearnedLightField::clone() const {
    return std::make_unique<LearnedLightField>(*this);
}

}  // namespace ssdr::oov
