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

// GGX microfacet BRDF, metallic-roughness parameterization. The math is
// templated on the scalar so the render adjoint can evaluate it on Dual
// numbers; brdf.hpp wraps it for plain doubles.

#include <numbers>

#include "core/dual.hpp"
#include "core/spectrum.hpp"
#include "core/vec.hpp"

namespace ssdr::brdf {

inline constexpr double kMinRoughness = 0.01;
inline constexpr double kDielectricF0 = 0.04;
inline constexpr double kInvPi = std::numbers::inv_pi;

enum class Lobes { All, DiffuseOnly };

template <typename T>
struct ParamsT {
    RgbT<T> albedo{T(1.0), T(1.0), T(1.0)};
    T roughness{1.0};
    T metallic{0.0};
};

template <typename T>
T alpha_sq(const T& roughness) {
    T r = dmax(roughness, kMinRoughness);
    T a = r * r;
    return a * a;
}

template <typename T, typename C>
T ndf(const C& cos_h, const T& a2) {
    T c = cos_h * cos_h * (a2 - 1.0) + 1.0;
    return a2 / (std::numbers::pi * c * c);
}

template <typename T, typename C>
T smith_g1(const C& cos_x, const T& a2) {
    using std::sqrt;
    T root = sqrt(a2 + (1.0 - a2) * (cos_x * cos_x));
    return 2.0 * cos_x / (cos_x + root);
}

template <typename T>
RgbT<T> fresnel_f0(const ParamsT<T>& p) {
    auto lerp = [&](const T& a) { return kDielectricF0 + (a - kDielectricF0) * p.metallic; };
    return {lerp(p.albedo.r), lerp(p.albedo.g), lerp(p.albedo.b)};
}

// Probability of choosing the specular lobe.
template <typename T>
T specular_weight(const ParamsT<T>& p, Lobes lobes) {
    if (lobes == Lobes::DiffuseOnly) return T(0.0);
    T spec = kDielectricF0 + (1.0 - kDielectricF0) * p.metallic;
    T diff = (1.0 - p.metallic) * luminance(p.albedo);
    T total = spec + diff;
    return spec / total;
}

template <typename T>
struct LobeValues {
    RgbT<T> diffuse;
    RgbT<T> specular;
    RgbT<T> total() const { return diffuse + specular; }
};

// f_r for view direction v and light direction d (both pointing away from
// the surface). Zero below the horizon on either side.
template <typename T>
LobeValues<T> eval_lobes(const Vec3& v, const Vec3& d, const Vec3T<T>& n, const ParamsT<T>& p,
                         Lobes lobes) {
    LobeValues<T> out{RgbT<T>(T(0.0)), RgbT<T>(T(0.0))};
    T nd = dot(n, d);
    T nv = dot(n, v);
    if (!(nd > 0.0) || !(nv > 0.0)) return out;

    T kd = (1.0 - p.metallic) * kInvPi;
    out.diffuse = p.albedo * kd;
    if (lobes == Lobes::DiffuseOnly) return out;

    Vec3 h = normalize(v + d);
    double vh = dot(v, h);
    T nh = dot(n, h);
    if (!(nh > 0.0)) return out;
    T a2 = alpha_sq(p.roughness);
    T geom = ndf(nh, a2) * smith_g1(nv, a2) * smith_g1(nd, a2) / (4.0 * nv * nd);
    double w = 1.0 - vh;
    double schlick = (w * w) * (w * w) * w;
    RgbT<T> f0 = fresnel_f0(p);
    out.specular = {(f0.r + (1.0 - f0.r) * schlick) * geom, (f0.g + (1.0 - f0.g) * schlick) * geom,
                    (f0.b + (1.0 - f0.b) * schlick) * geom};
    return out;
}

template <typename T>
RgbT<T> eval(const Vec3& v, const Vec3& d, const Vec3T<T>& n, const ParamsT<T>& p, Lobes lobes) {
    return eval_lobes(v, d, n, p, lobes).total();
}

// Density of reflect(-v, h) over directions z when h ~ D(h) (n.h). Both h
// and -h reflect v onto z; only the one above the surface can be drawn.
template <typename T>
T reflected_ndf_density(const Vec3& v, const Vec3T<T>& z, const Vec3T<T>& n, const T& a2) {
    Vec3T<T> hv = Vec3T<T>::from(v) + z;
    T len = length(hv);
    if (!(len > 0.0)) return T(0.0);
    T nh = dot(hv, n) / len;
    T vh = 0.5 * len;  // v.h for unit v and z
    if (nh < 0.0) nh = -nh;
    return ndf(nh, a2) * nh / (4.0 * vh);
}

// Mixture density of the sampler: cosine-weighted diffuse plus NDF-sampled
// specular. Specular samples that land below the horizon are mirrored back
// into it, so the specular density at d also receives the mass of mirror(d).
template <typename T>
T pdf(const Vec3& v, const Vec3& d, const Vec3T<T>& n, const ParamsT<T>& p, Lobes lobes) {
    T nd = dot(n, d);
    if (!(nd > 0.0)) return T(0.0);
    T ws = specular_weight(p, lobes);
    T result = (1.0 - ws) * nd * kInvPi;
    if (lobes == Lobes::DiffuseOnly) return result;
    T a2 = alpha_sq(p.roughness);
    Vec3T<T> dd = Vec3T<T>::from(d);
    T spec = reflected_ndf_density(v, dd, n, a2) + reflected_ndf_density(v, mirror(d, n), n, a2);
    return result + ws * spec;
}

}  // namespace ssdr::brdf
