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

#include "oov/nerf.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace ssdr::oov {

std::vector<std::size_t> default_nerf_dims(const NerfConfig& cfg) {
    return {cfg.position_encoding.output_dim(3), 64, 64, 64, 64, 4};
}

namespace {

std::vector<double> encode(const Vec3& x, const NerfConfig& cfg) {
    const double s = cfg.position_scale;
    const double v[3] = {x.x * s, x.y * s, x.z * s};
    return lighting::posenc(v, cfg.position_encoding);
}

void check_shape(const nn::MlpWeights& w, const NerfConfig& cfg) {
    if (w.in_dim() != cfg.position_encoding.output_dim(3) || w.out_dim() != 4)
        throw ConfigError("nerf: weights shaped " + std::to_string(w.in_dim()) + " -> " +
                          std::to_string(w.out_dim()) + ", need " +
                          std::to_string(cfg.position_encoding.output_dim(3)) + " -> 4");
}

NerfOutput activate(const std::vector<double>& raw, const NerfConfig& cfg) {
    return {nn::softplus(raw[0]),
            {cfg.radiance_scale * nn::sigmoid(raw[1]), cfg.radiance_scale * nn::sigmoid(raw[2]),
             cfg.radiance_scale * nn::sigmoid(raw[3])}};
}

}  // namespace

NerfOutput nerf_eval(const nn::MlpWeights& w, const Vec3& x, const NerfConfig& cfg) {
    check_shape(w, cfg);
    return activate(nn::mlp_forward(w, encode(x, cfg)), cfg);
}

void nerf_backward(const nn::MlpWeights& w, const Vec3& x, const NerfConfig& cfg, double dsigma,
                   const Spectrum& dcolor, std::span<double> dparams) {
    check_shape(w, cfg);
    nn::MlpTape tape;
    const auto raw = nn::mlp_forward(w, encode(x, cfg), &tape);
    double dout[4];
    dout[0] = dsigma * nn::sigmoid(raw[0]);
    for (int c = 0; c < 3; ++c) {
        double s = nn::sigmoid(raw[1 + c]);
        dout[1 + c] = dcolor[c] * cfg.radiance_scale * s * (1.0 - s);
    }
    nn::mlp_backward(w, tape, dout, dparams);
}

void VolumeConfig::validate() const {
    if (!(t_near < t_far)) throw ConfigError("volume: t_near must be < t_far");
    if (n_samples < 2) throw ConfigError("volume: need at least 2 samples");
}

Composite composite(std::span<const VolumeSample> samples) {
    Composite out;
    out.weights.resize(samples.size());
    double optical_depth = 0.0, used = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        const double tau = s.sigma * s.delta;
        // Capped by the remaining budget so rounding never lets the weights
        // of an opaque ray add up past 1.
        const double w = std::min(std::exp(-optical_depth) * -std::expm1(-tau), 1.0 - used);
        used += w;
        out.weights[i] = w;
        out.radiance += s.color * w;
        optical_depth += tau;
    }
    return out;
}

std::vector<VolumeSample> stratified_samples(const Vec3& p, const Vec3& d, const VolumeConfig& cfg, Sampler& rng) {
    cfg.validate();
    const int n = cfg.n_samples;
    const double width = (cfg.t_far - cfg.t_near) / n;
    std::vector<VolumeSample> s(n);
    for (int i = 0; i < n; ++i) {
        s[i].t = cfg.t_near + (i + rng.next1d()) * width;
        s[i].x = p + d * s[i].t;
    }
    for (int i = 0; i + 1 < n; ++i) s[i].delta = s[i + 1].t - s[i].t;
    s[n - 1].delta = cfg.t_far - s[n - 1].t;
    // The first sample also covers [t_near, t_0], so the deltas tile the ray.
    s[0].delta += s[0].t - cfg.t_near;
    return s;
}

Spectrum volume_render(const nn::MlpWeights& w, const Vec3& p, const Vec3& d, const VolumeConfig& vcfg,
                       Sampler& rng, const NerfConfig& ncfg) {
    auto samples = stratified_samples(p, d, vcfg, rng);
    for (auto& s : samples) {
        const auto o = nerf_eval(w, s.x, ncfg);
        s.sigma = o.sigma;
        s.color = o.color;
    }
    return composite(samples).radiance;
}

void volume_render_backward(const nn::MlpWeights& w, const Vec3& p, const Vec3& d, const VolumeConfig& vcfg,
                            Sampler& rng, const NerfConfig& ncfg, const Spectrum& adjoint,
                            std::span<double> dparams) {
    auto samples = stratified_samples(p, d, vcfg, rng);
    for (auto& s : samples) {
        const auto o = nerf_eval(w, s.x, ncfg);
        s.sigma = o.sigma;
        s.color = o.color;
    }
    const auto comp = composite(samples);
    const std::size_t n = samples.size();

    // dL/dsigma_k = delta_k (T_k e^{-tau_k} g.c_k - sum_{i>k} w_i g.c_i)
    std::vector<double> tail(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;)
        tail[i] = tail[i + 1] + comp.weights[i] * (adjoint.r * samples[i].color.r + adjoint.g * samples[i].color.g +
                                                   adjoint.b * samples[i].color.b);
    double optical_depth = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& s = samples[k];
        const double tau = s.sigma * s.delta;
        const double trans = std::exp(-optical_depth);
        const double gc = adjoint.r * s.color.r + adjoint.g * s.color.g + adjoint.b * s.color.b;
        const double dsigma = s.delta * (trans * std::exp(-tau) * gc - tail[k + 1]);
        const Spectrum dcolor = adjoint * comp.weights[k];
        nerf_backward(w, s.x, ncfg, dsigma, dcolor, dparams);
        optical_depth += tau;
    }
}

Spectrum blend(const Spectrum& l_ssrt, const Spectrum& l_oov, double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw ContractViolation("blend: uncertainty must lie in [0, 1]");
    // std::lerp is exact at both endpoints and stays within [min, max].
    return {std::lerp(l_ssrt.r, l_oov.r, u), std::lerp(l_ssrt.g, l_oov.g, u), std::lerp(l_ssrt.b, l_oov.b, u)};
}

}  // namespace ssdr::oov
