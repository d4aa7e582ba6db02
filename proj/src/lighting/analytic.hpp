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

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "lighting/light_field.hpp"

namespace ssdr::lighting {

// L(p, d) = radiance everywhere. Parameters: radiance rgb.
class ConstantLight final : public LightField {
public:
    explicit ConstantLight(const Spectrum& radiance);

    LightQuery query(const Vec3& p, const Vec3& d, Sampler& rng) const override;
    std::size_t parameter_count() const override { return 3; }
    std::vector<double> parameters() const override;
    void set_parameters(std::span<const double> values) override;
    void accumulate_gradient(const Vec3& p, const Vec3& d, Sampler& rng, const Spectrum& adjoint,
                             std::span<double> grad) const override;
    double project_parameter(std::size_t, double value) const override { return std::max(value, 0.0); }
    std::unique_ptr<LightField> clone() const override { return std::make_unique<ConstantLight>(*this); }

    const Spectrum& radiance() const { return radiance_; }

private:
    Spectrum radiance_;
};

struct SkyParams {
    Spectrum zenith{1.0, 1.0, 1.0};
    Spectrum horizon{0.2, 0.2, 0.2};
    Vec3 up{0.0, -1.0, 0.0};  // view-space up (image y points down)
    // Optional compact source: sun * exp(sharpness * (d . sun_direction - 1)).
    Spectrum sun{0.0, 0.0, 0.0};
    Vec3 sun_direction{0.0, -1.0, 0.0};
    double sun_sharpness = 500.0;
};

// Direction-only sky: linear blend from horizon to zenith over the upper
// hemisphere (horizon color below it), plus an optional smooth sun lobe.
// Parameters: zenith rgb, horizon rgb, sun rgb.
class SkyLight final : public LightField {
public:
    explicit SkyLight(const SkyParams& params);

    LightQuery query(const Vec3& p, const Vec3& d, Sampler& rng) const override;
    Spectrum radiance(const Vec3& d) const;
    std::size_t parameter_count() const override { return 9; }
    std::vector<double> parameters() const override;
    void set_parameters(std::span<const double> values) override;
    void accumulate_gradient(const Vec3& p, const Vec3& d, Sampler& rng, const Spectrum& adjoint,
                             std::span<double> grad) const override;
    double project_parameter(std::size_t, double value) const override { return std::max(value, 0.0); }
    std::unique_ptr<LightField> clone() const override { return std::make_unique<SkyLight>(*this); }

    const SkyParams& params() const { return params_; }

private:
    SkyParams params_;
};

// Sampled 5D radiance field over (x, y, z, theta, phi). Nodes sit at cell
// centers; positions interpolate trilinearly (clamped at the bounds) and
// directions bilinearly in (theta, phi), with phi periodic. theta is the polar
// angle from +z, phi = atan2(d.y, d.x) in [0, 2 pi).
struct GridSpec {
    std::array<int, 5> dims{1, 1, 1, 1, 1};  // nx, ny, nz, ntheta, nphi
    Vec3 bounds_min{-1.0, -1.0, -1.0};
    Vec3 bounds_max{1.0, 1.0, 1.0};
};

class GridLight final : public LightField {
public:
    // data: rgb triples, index ((((ix*ny + iy)*nz + iz)*ntheta + it)*nphi + ip)*3 + c
    GridLight(const GridSpec& spec, std::vector<double> data);

    LightQuery query(const Vec3& p, const Vec3& d, Sampler& rng) const override;
    std::unique_ptr<LightField> clone() const override { return std::make_unique<GridLight>(*this); }

    // Parameters: the node radiances in data() order.
    std::size_t parameter_count() const override { return data_.size(); }
    std::vector<double> parameters() const override { return data_; }
    void set_parameters(std::span<const double> values) override;
    void accumulate_gradient(const Vec3& p, const Vec3& d, Sampler& rng, const Spectrum& adjoint,
                             std::span<double> grad) const override;
    double project_parameter(std::size_t, double value) const override { return std::max(value, 0.0); }

    const GridSpec& spec() const { return spec_; }
    const std::vector<double>& data() const { return data_; }
    // Position and direction of node (ix, iy, iz, it, ip).
    Vec3 node_position(int ix, int iy, int iz) const;
    Vec3 node_direction(int it, int ip) const;

private:
    // Data offset and weight of the 32 interpolation corners.
    using Stencil = std::array<std::pair<std::size_t, double>, 32>;
    Stencil stencil(const Vec3& p, const Vec3& d) const;
    std::size_t index(int ix, int iy, int iz, int it, int ip) const;

    GridSpec spec_;
    std::vector<double> data_;
};

enum class AnalyticKind { Constant, Sky, Grid };

AnalyticKind parse_analytic_kind(const std::string& name);

}  // namespace ssdr::lighting
