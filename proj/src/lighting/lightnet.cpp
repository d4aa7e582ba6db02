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

#include "lighting/lightnet.hpp"

#include <algorithm>
#include <cmath>

#include "brdf/ggx.hpp"
#include "core/error.hpp"

namespace ssdr::lighting {

FeatureGrid::FeatureGrid(ImageBuffer features) : features_(std::move(features)) {
    if (!features_.all_finite()) throw ConfigError("feature grid: non-finite values");
}

void FeatureGrid::sample(const PixelCoord& px, std::span<double> out) const {
    features_.sample_bilinear(px.x, px.y, out);
}

std::size_t lightnet_input_dim(int feature_channels, const LightNetConfig& cfg) {
    return cfg.direction_encoding.output_dim(3) + static_cast<std::size_t>(feature_channels) + kGBufferFeatureDim;
}

std::vector<std::size_t> default_decoder_dims(int feature_channels, const LightNetConfig& cfg) {
    return {lightnet_input_dim(feature_channels, cfg), 128, 128, 128, 128, 3};
}

namespace {

void check_shapes(const LightNetInputs& in) {
    const std::size_t want = lightnet_input_dim(in.features.channels(), in.config);
    if (in.decoder.in_dim() != want || in.decoder.out_dim() != 3)
        throw ConfigError("lightnet: decoder expects input " + std::to_string(in.decoder.in_dim()) +
                          " / output " + std::to_string(in.decoder.out_dim()) + ", need " +
                          std::to_string(want) + " / 3");
    if (in.features.width() != in.gbuffer.width() || in.features.height() != in.gbuffer.height())
        throw ConfigError("lightnet: feature grid and G-buffer sizes differ");
}

}  // namespace

std::vector<double> lightnet_features(const LightNetInputs& in, const Vec3& d, const ssrt::Hit& hit) {
    const auto& enc = in.config.direction_encoding;
    const std::size_t enc_dim = enc.output_dim(3);
    const std::size_t c = static_cast<std::size_t>(in.features.channels());
    std::vector<double> x(enc_dim + c + kGBufferFeatureDim);

    const double dv[3] = {d.x, d.y, d.z};
    posenc_into(dv, enc, std::span<double>(x).subspan(0, enc_dim));
    in.features.sample(hit.pixel, std::span<double>(x).subspan(enc_dim, c));

    const GBuffer& g = in.gbuffer;
    int px = std::clamp(static_cast<int>(std::floor(hit.pixel.x)), 0, g.width() - 1);
    int py = std::clamp(static_cast<int>(std::floor(hit.pixel.y)), 0, g.height() - 1);
    const Spectrum a = g.albedo.rgb(px, py);
    const double m = g.metallic.at(px, py);
    double* aux = x.data() + enc_dim + c;
    for (int k = 0; k < 3; ++k) {
        aux[k] = a[k] * (1.0 - m);                                              // K_d
        aux[3 + k] = brdf::kDielectricF0 + (a[k] - brdf::kDielectricF0) * m;    // K_s
        aux[6 + k] = g.normal.at(px, py, k);                                     // N
    }
    aux[9] = g.roughness.at(px, py);
    return x;
}

LightNetResult lightnet_query(const LightNetInputs& in, const Vec3& p, const Vec3& d) {
    check_shapes(in);
    LightNetResult r;
    r.hit = ssrt::trace(in.gbuffer.depth, in.camera, p, d, in.config.ssrt);
    const auto x = lightnet_features(in, d, r.hit);
    const auto out = nn::mlp_forward(in.decoder, x);
    r.radiance = {nn::softplus(out[0]), nn::softplus(out[1]), nn::softplus(out[2])};
    return r;
}

void lightnet_query_backward(const LightNetInputs& in, const Vec3& p, const Vec3& d, const Spectrum& adjoint,
                             std::span<double> dweights) {
    check_shapes(in);
    const auto hit = ssrt::trace(in.gbuffer.depth, in.camera, p, d, in.config.ssrt);
    const auto x = lightnet_features(in, d, hit);
    nn::MlpTape tape;
    const auto out = nn::mlp_forward(in.decoder, x, &tape);
    const double dout[3] = {adjoint.r * nn::sigmoid(out[0]), adjoint.g * nn::sigmoid(out[1]),
                            adjoint.b * nn::sigmoid(out[2])};
    nn::mlp_backward(in.decoder, tape, dout, dweights);
}

}  // namespace ssdr::lighting
