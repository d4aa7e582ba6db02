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

#include "core/camera.hpp"
#include "core/gbuffer.hpp"
#include "lighting/posenc.hpp"
#include "nn/mlp.hpp"
#include "ssrt/ssrt.hpp"

namespace ssdr::lighting {

// Per-pixel feature map sampled bilinearly at continuous pixel coordinates.
class FeatureGrid {
public:
    FeatureGrid() = default;
    explicit FeatureGrid(ImageBuffer features);

    int channels() const { return features_.channels(); }
    int width() const { return features_.width(); }
    int height() const { return features_.height(); }
    const ImageBuffer& image() const { return features_; }

    void sample(const PixelCoord& px, std::span<double> out) const;

private:
    ImageBuffer features_;
};

struct LightNetConfig {
    PosEncConfig direction_encoding{6, true};
    ssrt::Config ssrt;
};

// Size of the auxiliary G-buffer sample: K_d (3), K_s (3), N (3), R (1).
inline constexpr std::size_t kGBufferFeatureDim = 10;

std::size_t lightnet_input_dim(int feature_channels, const LightNetConfig& cfg);

// Decoder MLP widths: 4 hidden layers of 128 units, rgb output.
std::vector<std::size_t> default_decoder_dims(int feature_channels, const LightNetConfig& cfg);

// Everything the in-view lighting query reads. References must outlive it.
struct LightNetInputs {
    const FeatureGrid& features;
    const GBuffer& gbuffer;
    const Camera& camera;
    const nn::MlpWeights& decoder;
    const LightNetConfig& config;
};

struct LightNetResult {
    Spectrum radiance;
    ssrt::Hit hit;
};

// Traces from p along d (d points toward the light source), then decodes
// softplus(f(gamma(d), F[pi(s)], G[pi(s)])). For rays without a hit the
// decoder still runs at the last in-view march position; callers are expected
// to discard it since u = 1. Throws ConfigError on a weight shape mismatch.
LightNetResult lightnet_query(const LightNetInputs& in, const Vec3& p, const Vec3& d);

// Adds adjoint . d(radiance)/d(decoder params) into dweights.
void lightnet_query_backward(const LightNetInputs& in, const Vec3& p, const Vec3& d, const Spectrum& adjoint,
                             std::span<double> dweights);

// The decoder input vector for a precomputed hit (exposed for tests).
std::vector<double> lightnet_features(const LightNetInputs& in, const Vec3& d, const ssrt::Hit& hit);

}  // namespace ssdr::lighting
