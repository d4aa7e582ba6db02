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

#include <cstdint>
#include <optional>
#include <vector>

#include "brdf/ggx.hpp"
#include "core/camera.hpp"
#include "core/gbuffer.hpp"
#include "core/image.hpp"
#include "lighting/light_field.hpp"

namespace ssdr::render {

struct RenderConfig {
    int spp = 64;
    std::uint64_t seed = 0;
    double pdf_floor = 1e-6;          // applied only inside the estimator quotient
    std::optional<double> clamp_max;  // preview-only clamp of final pixel values
    brdf::Lobes lobes = brdf::Lobes::All;
    int threads = 0;                  // 0 = hardware concurrency; never changes results
    // Differentiate through the pdf in the estimator quotient. With it the
    // adjoint is the exact derivative of render_mc_frozen; without it the
    // pdf is held at its sampled value, which gives an unbiased estimate of
    // the derivative of the expected image.
    bool pdf_gradient = true;
    // Accumulate adjoints of the light field's parameters in render_backward.
    bool light_gradient = true;

    void validate() const;
};

// Monte Carlo re-rendering with BRDF importance sampling:
//   I(p) = 1/N sum_i f_r(v, d_i) L(p, d_i) cos(theta_i) / max(pdf(v, d_i), pdf_floor)
// Pixels without geometry, or whose normal faces away from the camera, are 0.
// Throws NumericalError (with the pixel location) if an accumulator turns NaN.
ImageBuffer render_mc(const GBuffer& g, const Camera& cam, const lighting::LightField& light,
                      const RenderConfig& cfg);

// Same estimator, but the sample directions are drawn using the material and
// normals of `sampling` while f_r, pdf and cos use `g`. With g == sampling this
// is render_mc; perturbing g alone gives finite differences of the
// detached-sampling estimator that render_backward differentiates.
ImageBuffer render_mc_frozen(const GBuffer& g, const GBuffer& sampling, const Camera& cam,
                             const lighting::LightField& light, const RenderConfig& cfg);

struct GradientImage {
    ImageBuffer d_albedo;     // 3 channels
    ImageBuffer d_roughness;  // 1 channel
    ImageBuffer d_metallic;   // 1 channel
    ImageBuffer d_normal;     // 3 channels, orthogonal to the unit normal
    std::vector<double> d_light;  // adjoints of light.parameters(), empty if none
};

// Adjoint of render_mc for an output adjoint dI (3 channels). Sample
// directions and SSRT hits are treated as constants; gradients flow through
// f_r, pdf, cos and the light field's parameters. cfg.seed must match the
// forward call for the result to be the gradient of that forward image.
GradientImage render_backward(const GBuffer& g, const Camera& cam, const lighting::LightField& light,
                              const RenderConfig& cfg, const ImageBuffer& adjoint);

struct QuadratureGrid {
    int n_theta = 16;
    int n_phi = 32;
};

// Deterministic hemisphere quadrature at cosine-weighted cell centers, the
// fixed-direction baseline. Throws ContractViolation for grids below 2 x 4.
ImageBuffer render_discretized(const GBuffer& g, const Camera& cam, const lighting::LightField& light,
                               const QuadratureGrid& grid, brdf::Lobes lobes = brdf::Lobes::All, int threads = 0);

struct ReferenceConfig {
    long nodes = 1'000'000;  // quadrature nodes per pixel, split across active lobes
    brdf::Lobes lobes = brdf::Lobes::All;
    int threads = 0;
};

// Quadrature reference of the rendering integral. The diffuse lobe is
// integrated on a cosine-weighted midpoint grid; the specular lobe on a
// half-vector grid whose polar coordinate is warped by tan(theta_h) =
// alpha tan(psi), which concentrates nodes where the GGX lobe lives.
ImageBuffer render_reference(const GBuffer& g, const Camera& cam, const lighting::LightField& light,
                             const ReferenceConfig& cfg = {});

// Single-point version of the reference quadrature.
Spectrum reference_radiance(const Vec3& p, const Vec3& v, const Vec3& n, const brdf::ParamsT<double>& params,
                            const lighting::LightField& light, const ReferenceConfig& cfg,
                            std::uint64_t pixel_index = 0);

// Shading point of a pixel: surface position, view and normal directions.
struct ShadingPoint {
    Vec3 p;
    Vec3 v;
    Vec3 n;
    bool valid = false;
};

ShadingPoint shading_point(const GBuffer& g, const Camera& cam, int x, int y);

}  // namespace ssdr::render
