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

#include "brdf/brdf.hpp"

#include <cmath>

#include "core/error.hpp"

namespace ssdr::brdf {

namespace {

void check_unit(const Vec3& a, const char* name) {
    if (std::abs(length(a) - 1.0) > 1e-3)
        throw ContractViolation(std::string("brdf: ") + name + " is not a unit vector");
}

}  // namespace

LobeValues<double> eval_lobes(const Vec3& v, const Vec3& d, const Vec3& n, const Params& params,
                              Lobes lobes) {
    check_unit(v, "v");
    check_unit(d, "d");
    check_unit(n, "n");
    return brdf::eval_lobes<double>(v, d, n, params, lobes);
}

Spectrum eval(const Vec3& v, const Vec3& d, const Vec3& n, const Params& params, Lobes lobes) {
    return eval_lobes(v, d, n, params, lobes).total();
}

double pdf(const Vec3& v, const Vec3& d, const Vec3& n, const Params& params, Lobes lobes) {
    return brdf::pdf<double>(v, d, n, params, lobes);
}

Vec3 sample_cosine_hemisphere(double u1, double u2) {
    double r = std::sqrt(u1);
    double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi), std::sqrt(std::max(0.0, 1.0 - u1))};
}

Vec3 sample_ggx_half_vector(double u1, double u2, double alpha) {
    // tan^2(theta) = alpha^2 u / (1 - u)
    double tan2 = alpha * alpha * u1 / (1.0 - u1);
    double cos_t = 1.0 / std::sqrt(1.0 + tan2);
    double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
    double phi = 2.0 * std::numbers::pi * u2;
    return {sin_t * std::cos(phi), sin_t * std::sin(phi), cos_t};
}

Sample sample(const Vec3& v, const Vec3& n, const Params& params, Sampler& rng, Lobes lobes) {
    const double choice = rng.next1d();
    const auto [u1, u2] = rng.next2d();

    Sample s;
    const Frame frame(n);
    const double ws = specular_weight(params, lobes);
    if (choice < ws) {
        s.lobe = Lobe::Specular;
        double alpha = std::sqrt(alpha_sq(params.roughness));
        Vec3 h = frame.to_world(sample_ggx_half_vector(u1, u2, alpha));
        Vec3 d = h * (2.0 * dot(v, h)) - v;
        if (dot(d, n) < 0.0) d = mirror(d, n);
        s.direction = normalize(d);
    } else {
        s.lobe = Lobe::Diffuse;
        s.direction = normalize(frame.to_world(sample_cosine_hemisphere(u1, u2)));
    }

    if (dot(s.direction, n) <= 0.0) return s;
    s.pdf = brdf::pdf<double>(v, s.direction, n, params, lobes);
    if (!(s.pdf > 0.0)) {
        s.pdf = 0.0;
        return s;
    }
    s.value = brdf::eval<double>(v, s.direction, n, params, lobes);
    s.valid = true;
    return s;
}

}  // namespace ssdr::brdf
