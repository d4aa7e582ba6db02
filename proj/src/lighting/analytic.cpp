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

#include "lighting/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "core/error.hpp"

namespace ssdr::lighting {

namespace {

void check_radiance(const Spectrum& s, const char* what) {
    if (!is_finite(s) || s.r < 0.0 || s.g < 0.0 || s.b < 0.0)
        throw ConfigError(std::string(what) + ": radiance must be finite and non-negative");
}

void check_params(std::span<const double> values, std::size_t n) {
    if (values.size() != n) throw ConfigError("light field: wrong parameter count");
}

}  // namespace

ConstantLight::ConstantLight(const Spectrum& radiance) : radiance_(radiance) {
    check_radiance(radiance, "constant light");
}

LightQuery ConstantLight::query(const Vec3&, const Vec3&, Sampler&) const { return {radiance_, 1.0}; }

std::vector<double> ConstantLight::parameters() const { return {radiance_.r, radiance_.g, radiance_.b}; }

void ConstantLight::set_parameters(std::span<const double> values) {
    check_params(values, 3);
    radiance_ = {values[0], values[1], values[2]};
}

void ConstantLight::accumulate_gradient(const Vec3&, const Vec3&, Sampler&, const Spectrum& adjoint,
                                        std::span<double> grad) const {
    grad[0] += adjoint.r;
    grad[1] += adjoint.g;
    grad[2] += adjoint.b;
}

SkyLight::SkyLight(const SkyParams& params) : params_(params) {
    check_radiance(params.zenith, "sky zenith");
    check_radiance(params.horizon, "sky horizon");
    check_radiance(params.sun, "sky sun");
    params_.up = normalize(params.up);
    params_.sun_direction = normalize(params.sun_direction);
}

Spectrum SkyLight::radiance(const Vec3& d) const {
    double t = std::max(0.0, dot(d, params_.up));
    Spectrum L = params_.horizon + (params_.zenith - params_.horizon) * t;
    if (!is_black(params_.sun))
        L += params_.sun * std::exp(params_.sun_sharpness * (dot(d, params_.sun_direction) - 1.0));
    return L;
}

LightQuery SkyLight::query(const Vec3&, const Vec3& d, Sampler&) const { return {radiance(d), 1.0}; }

std::vector<double> SkyLight::parameters() const {
    const auto& p = params_;
    return {p.zenith.r, p.zenith.g, p.zenith.b, p.horizon.r, p.horizon.g,
            p.horizon.b, p.sun.r,    p.sun.g,    p.sun.b};
}

void SkyLight::set_parameters(std::span<const double> v) {
    check_params(v, 9);
    params_.zenith = {v[0], v[1], v[2]};
    params_.horizon = {v[3], v[4], v[5]};
    params_.sun = {v[6], v[7], v[8]};
}

void SkyLight::accumulate_gradient(const Vec3&, const Vec3& d, Sampler&, const Spectrum& adjoint,
                                   std::span<double> grad) const {
    double t = std::max(0.0, dot(d, params_.up));
    double s = std::exp(params_.sun_sharpness * (dot(d, params_.sun_direction) - 1.0));
    for (int c = 0; c < 3; ++c) {
        grad[c] += adjoint[c] * t;
        grad[3 + c] += adjoint[c] * (1.0 - t);
        grad[6 + c] += adjoint[c] * s;
    }
}

GridLight::GridLight(const GridSpec& spec, std::vector<double> data) : spec_(spec), data_(std::move(data)) {
    std::size_t n = 3;
    for (int k : spec_.dims) {
        if (k < 1) throw ConfigError("grid light: dimensions must be >= 1");
        n *= static_cast<std::size_t>(k);
    }
    if (data_.size() != n)
        throw ConfigError("grid light: expected " + std::to_string(n) + " values, got " +
                          std::to_string(data_.size()));
    for (int a = 0; a < 3; ++a) {
        double lo = a == 0 ? spec_.bounds_min.x : (a == 1 ? spec_.bounds_min.y : spec_.bounds_min.z);
        double hi = a == 0 ? spec_.bounds_max.x : (a == 1 ? spec_.bounds_max.y : spec_.bounds_max.z);
        if (!(hi > lo)) throw ConfigError("grid light: empty bounds");
    }
    for (double v : data_)
        if (!std::isfinite(v) || v < 0.0) throw ConfigError("grid light: radiance must be finite and non-negative");
}

std::size_t GridLight::index(int ix, int iy, int iz, int it, int ip) const {
    const auto& n = spec_.dims;
    return ((((static_cast<std::size_t>(ix) * n[1] + iy) * n[2] + iz) * n[3] + it) * n[4] + ip) * 3;
}

Vec3 GridLight::node_position(int ix, int iy, int iz) const {
    const auto& lo = spec_.bounds_min;
    const auto& hi = spec_.bounds_max;
    const auto& n = spec_.dims;
    return {lo.x + (ix + 0.5) * (hi.x - lo.x) / n[0], lo.y + (iy + 0.5) * (hi.y - lo.y) / n[1],
            lo.z + (iz + 0.5) * (hi.z - lo.z) / n[2]};
}

Vec3 GridLight::node_direction(int it, int ip) const {
    double theta = (it + 0.5) * std::numbers::pi / spec_.dims[3];
    double phi = (ip + 0.5) * 2.0 * std::numbers::pi / spec_.dims[4];
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

GridLight::Stencil GridLight::stencil(const Vec3& p, const Vec3& dir) const {
    const auto& n = spec_.dims;
    const Vec3 d = normalize(dir);

    // Continuous node coordinates and the two neighbors + weight per axis.
    struct Axis {
        int i0, i1;
        double t;
    };
    auto clamped = [](double f, int count) {
        f = std::clamp(f, 0.0, double(count - 1));
        int i0 = static_cast<int>(std::floor(f));
        int i1 = std::min(i0 + 1, count - 1);
        return Axis{i0, i1, f - i0};
    };
    auto periodic = [](double f, int count) {
        double fl = std::floor(f);
        double t = f - fl;
        int i0 = static_cast<int>(fl) % count;
        if (i0 < 0) i0 += count;
        return Axis{i0, (i0 + 1) % count, t};
    };

    const auto& lo = spec_.bounds_min;
    const auto& hi = spec_.bounds_max;
    Axis ax[5] = {
        clamped((p.x - lo.x) / (hi.x - lo.x) * n[0] - 0.5, n[0]),
        clamped((p.y - lo.y) / (hi.y - lo.y) * n[1] - 0.5, n[1]),
        clamped((p.z - lo.z) / (hi.z - lo.z) * n[2] - 0.5, n[2]),
        clamped(std::acos(std::clamp(d.z, -1.0, 1.0)) / std::numbers::pi * n[3] - 0.5, n[3]),
        periodic([&] {
            double phi = std::atan2(d.y, d.x);
            if (phi < 0.0) phi += 2.0 * std::numbers::pi;
            return phi / (2.0 * std::numbers::pi) * n[4] - 0.5;
        }(),
                 n[4]),
    };

    Stencil st;
    for (int corner = 0; corner < 32; ++corner) {
        int idx[5];
        double w = 1.0;
        for (int a = 0; a < 5; ++a) {
            bool upper = (corner >> a) & 1;
            idx[a] = upper ? ax[a].i1 : ax[a].i0;
            w *= upper ? ax[a].t : 1.0 - ax[a].t;
        }
        st[corner] = {index(idx[0], idx[1], idx[2], idx[3], idx[4]), w};
    }
    return st;
}

LightQuery GridLight::query(const Vec3& p, const Vec3& dir, Sampler&) const {
    Spectrum L;
    for (const auto& [offset, w] : stencil(p, dir)) {
        if (w == 0.0) continue;
        const double* v = data_.data() + offset;
        L += Spectrum(v[0], v[1], v[2]) * w;
    }
    return {L, 1.0};
}

void GridLight::set_parameters(std::span<const double> values) {
    check_params(values, data_.size());
    data_.assign(values.begin(), values.end());
}

void GridLight::accumulate_gradient(const Vec3& p, const Vec3& dir, Sampler&, const Spectrum& adjoint,
                                    std::span<double> grad) const {
    for (const auto& [offset, w] : stencil(p, dir)) {
        if (w == 0.0) continue;
        for (int c = 0; c < 3; ++c) grad[offset + c] += adjoint[c] * w;
    }
}


AnalyticKind parse_analytic_kind(const std::string& name) {
    if (name == "constant") return AnalyticKind::Constant;
    if (name == "sky" || name == "sky-gradient") return AnalyticKind::Sky;
    if (name == "grid") return AnalyticKind::Grid;
    throw ConfigError("unknown light field kind: " + name);
}

}  // namespace ssdr::lighting
