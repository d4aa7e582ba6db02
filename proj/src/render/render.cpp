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

#include "render/render.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "brdf/brdf.hpp"
#include "core/dual.hpp"
#include "core/error.hpp"
#include "core/parallel.hpp"

namespace ssdr::render {

using lighting::LightField;

void RenderConfig::validate() const {
    if (spp < 1) throw ConfigError("render: spp must be >= 1");
    if (!(pdf_floor >= 0.0)) throw ConfigError("render: pdf_floor must be >= 0");
}

ShadingPoint shading_point(const GBuffer& g, const Camera& cam, int x, int y) {
    ShadingPoint sp;
    if (!g.has_geometry(x, y)) return sp;
    sp.p = unproject(cam, {x + 0.5, y + 0.5}, g.depth.at(x, y));
    sp.v = normalize(-sp.p);
    sp.n = normalize(g.normal_at(x, y));
    sp.valid = dot(sp.n, sp.v) > 0.0;
    return sp;
}

namespace {

brdf::Params params_at(const GBuffer& g, int x, int y) {
    return {g.albedo.rgb(x, y), g.roughness.at(x, y), g.metallic.at(x, y)};
}

std::uint64_t pixel_index(const GBuffer& g, int x, int y) {
    return static_cast<std::uint64_t>(y) * g.width() + x;
}

void check_inputs(const GBuffer& g, const Camera& cam) {
    g.check_shapes();
    cam.validate();
    if (cam.width != g.width() || cam.height != g.height())
        throw ValidationError("camera size does not match the G-buffer");
}

[[noreturn]] void fail_nan(const char* what, int x, int y, int sample) {
    std::ostringstream os;
    os << what << ": non-finite accumulator at pixel (" << x << ", " << y << "), sample " << sample;
    throw NumericalError(os.str());
}

Spectrum estimate_pixel(const GBuffer& g, const GBuffer& sampling, const Camera& cam, const LightField& light,
                        const RenderConfig& cfg, int x, int y) {
    const ShadingPoint sp = shading_point(g, cam, x, y);
    if (!sp.valid) return {};
    const bool frozen = &g != &sampling;
    const brdf::Params params = params_at(g, x, y);
    brdf::Params sample_params = params;
    Vec3 sample_n = sp.n;
    if (frozen) {
        sample_params = params_at(sampling, x, y);
        sample_n = normalize(sampling.normal_at(x, y));
        if (dot(sample_n, sp.v) <= 0.0) return {};
    }

    const std::uint64_t pix = pixel_index(g, x, y);
    Spectrum sum;
    for (int i = 0; i < cfg.spp; ++i) {
        Sampler rng(cfg.seed, pix, static_cast<std::uint64_t>(i));
        const brdf::Sample s = brdf::sample(sp.v, sample_n, sample_params, rng, cfg.lobes);
        if (!s.valid) continue;

        Spectrum f = s.value;
        double pdf = s.pdf;
        if (frozen) {
            f = brdf::eval<double>(sp.v, s.direction, sp.n, params, cfg.lobes);
            pdf = brdf::pdf<double>(sp.v, s.direction, sp.n, params, cfg.lobes);
        }
        const double cos_t = std::max(0.0, dot(sp.n, s.direction));
        if (cos_t == 0.0 || is_black(f)) continue;

        Sampler light_rng = rng.substream(1);
        const Spectrum L = light.query(sp.p, s.direction, light_rng).radiance;
        sum += f * L * (cos_t / std::max(pdf, cfg.pdf_floor));
        if (!is_finite(sum)) fail_nan("render_mc", x, y, i);
    }
    Spectrum out = sum / static_cast<double>(cfg.spp);
    if (cfg.clamp_max) {
        const double c = *cfg.clamp_max;
        out = {std::min(out.r, c), std::min(out.g, c), std::min(out.b, c)};
    }
    return out;
}

ImageBuffer render_impl(const GBuffer& g, const GBuffer& sampling, const Camera& cam, const LightField& light,
                        const RenderConfig& cfg) {
    cfg.validate();
    check_inputs(g, cam);
    if (&g != &sampling) {
        sampling.check_shapes();
        if (sampling.width() != g.width() || sampling.height() != g.height())
            throw ValidationError("render_mc_frozen: sampling G-buffer size differs");
    }
    ImageBuffer out(g.width(), g.height(), 3);
    parallel_for(static_cast<std::size_t>(g.height()), cfg.threads, [&](std::size_t row) {
        const int y = static_cast<int>(row);
        for (int x = 0; x < g.width(); ++x) out.set_rgb(x, y, estimate_pixel(g, sampling, cam, light, cfg, x, y));
    });
    return out;
}

}  // namespace

ImageBuffer render_mc(const GBuffer& g, const Camera& cam, const LightField& light, const RenderConfig& cfg) {
    return render_impl(g, g, cam, light, cfg);
}

ImageBuffer render_mc_frozen(const GBuffer& g, const GBuffer& sampling, const Camera& cam, const LightField& light,
                             const RenderConfig& cfg) {
    return render_impl(g, sampling, cam, light, cfg);
}

namespace {

// Dual slots: albedo rgb, roughness, metallic, raw normal xyz.
constexpr int kSlots = 8;
using D8 = Dual<kSlots>;

struct PixelGradient {
    double d[kSlots] = {};
};

PixelGradient backward_pixel(const GBuffer& g, const Camera& cam, const LightField& light, const RenderConfig& cfg,
                             int x, int y, const Spectrum& adj, std::vector<double>* light_grad) {
    PixelGradient out;
    const ShadingPoint sp = shading_point(g, cam, x, y);
    if (!sp.valid || is_black(adj)) return out;
    const brdf::Params params = params_at(g, x, y);

    brdf::ParamsT<D8> dp;
    dp.albedo = {D8::variable(params.albedo.r, 0), D8::variable(params.albedo.g, 1),
                 D8::variable(params.albedo.b, 2)};
    dp.roughness = D8::variable(params.roughness, 3);
    dp.metallic = D8::variable(params.metallic, 4);
    const Vec3 raw_n = g.normal_at(x, y);
    const Vec3T<D8> dn = normalize(Vec3T<D8>{D8::variable(raw_n.x, 5), D8::variable(raw_n.y, 6),
                                             D8::variable(raw_n.z, 7)});

    const double inv_spp = 1.0 / cfg.spp;
    const std::uint64_t pix = pixel_index(g, x, y);
    for (int i = 0; i < cfg.spp; ++i) {
        Sampler rng(cfg.seed, pix, static_cast<std::uint64_t>(i));
        const brdf::Sample s = brdf::sample(sp.v, sp.n, params, rng, cfg.lobes);
        if (!s.valid) continue;
        const Vec3& d = s.direction;

        const RgbT<D8> f = brdf::eval<D8>(sp.v, d, dn, dp, cfg.lobes);
        const D8 pdf = cfg.pdf_gradient ? brdf::pdf<D8>(sp.v, d, dn, dp, cfg.lobes) : D8(s.pdf);
        const D8 cos_t = dmax(dot(dn, d), 0.0);
        if (cos_t.v == 0.0) continue;

        const Sampler light_rng = rng.substream(1);
        Sampler query_rng = light_rng;
        const Spectrum L = light.query(sp.p, d, query_rng).radiance;
        const D8 w = cos_t / dmax(pdf, cfg.pdf_floor);

        for (int c = 0; c < 3; ++c) {
            const D8 contrib = f[c] * w * L[c];
            const double a = adj[c] * inv_spp;
            for (int k = 0; k < kSlots; ++k) out.d[k] += a * contrib.d[k];
        }
        if (!std::isfinite(out.d[0]) || !std::isfinite(out.d[3]) || !std::isfinite(out.d[5]))
            fail_nan("render_backward", x, y, i);

        if (light_grad) {
            const double wv = w.v * inv_spp;
            const Spectrum dL{adj.r * f.r.v * wv, adj.g * f.g.v * wv, adj.b * f.b.v * wv};
            Sampler grad_rng = light_rng;
            light.accumulate_gradient(sp.p, d, grad_rng, dL, *light_grad);
        }
    }
    return out;
}

}  // namespace

GradientImage render_backward(const GBuffer& g, const Camera& cam, const LightField& light, const RenderConfig& cfg,
                              const ImageBuffer& adjoint) {
    cfg.validate();
    check_inputs(g, cam);
    if (adjoint.width() != g.width() || adjoint.height() != g.height() || adjoint.channels() != 3)
        throw ConfigError("render_backward: adjoint image must be 3-channel and match the G-buffer");
    if (!adjoint.all_finite()) throw ContractViolation("render_backward: adjoint image is not finite");

    const int w = g.width(), h = g.height();
    GradientImage out;
    out.d_albedo = ImageBuffer(w, h, 3);
    out.d_roughness = ImageBuffer(w, h, 1);
    out.d_metallic = ImageBuffer(w, h, 1);
    out.d_normal = ImageBuffer(w, h, 3);

    const std::size_t n_light = cfg.light_gradient ? light.parameter_count() : 0;
    // One partial light gradient per row, summed in row order afterwards so
    // the result does not depend on the thread count.
    std::vector<std::vector<double>> row_light(n_light ? h : 0);

    parallel_for(static_cast<std::size_t>(h), cfg.threads, [&](std::size_t row) {
        const int y = static_cast<int>(row);
        std::vector<double>* lg = nullptr;
        if (n_light) {
            row_light[row].assign(n_light, 0.0);
            lg = &row_light[row];
        }
        for (int x = 0; x < w; ++x) {
            const PixelGradient pg = backward_pixel(g, cam, light, cfg, x, y, adjoint.rgb(x, y), lg);
            out.d_albedo.set_rgb(x, y, {pg.d[0], pg.d[1], pg.d[2]});
            out.d_roughness.at(x, y) = pg.d[3];
            out.d_metallic.at(x, y) = pg.d[4];
            out.d_normal.set_rgb(x, y, {pg.d[5], pg.d[6], pg.d[7]});
        }
    });

    if (n_light) {
        out.d_light.assign(n_light, 0.0);
        for (const auto& partial : row_light)
            for (std::size_t k = 0; k < n_light; ++k) out.d_light[k] += partial[k];
    }
    return out;
}

ImageBuffer render_discretized(const GBuffer& g, const Camera& cam, const LightField& light,
                               const QuadratureGrid& grid, brdf::Lobes lobes, int threads) {
    if (grid.n_theta < 2 || grid.n_phi < 4)
        throw ContractViolation("render_discretized: grid must be at least 2 x 4");
    check_inputs(g, cam);
    const int cells = grid.n_theta * grid.n_phi;

    ImageBuffer out(g.width(), g.height(), 3);
    parallel_for(static_cast<std::size_t>(g.height()), threads, [&](std::size_t row) {
        const int y = static_cast<int>(row);
        for (int x = 0; x < g.width(); ++x) {
            const ShadingPoint sp = shading_point(g, cam, x, y);
            if (!sp.valid) continue;
            const brdf::Params params = params_at(g, x, y);
            const Frame frame(sp.n);
            const std::uint64_t pix = pixel_index(g, x, y);
            Spectrum sum;
            for (int i = 0; i < grid.n_theta; ++i)
                for (int j = 0; j < grid.n_phi; ++j) {
                    const double u1 = (i + 0.5) / grid.n_theta;
                    const double u2 = (j + 0.5) / grid.n_phi;
                    const Vec3 d = normalize(frame.to_world(brdf::sample_cosine_hemisphere(u1, u2)));
                    const Spectrum f = brdf::eval<double>(sp.v, d, sp.n, params, lobes);
                    if (is_black(f)) continue;
                    Sampler rng(0, pix, static_cast<std::uint64_t>(i * grid.n_phi + j), 2);
                    sum += f * light.query(sp.p, d, rng).radiance;
                }
            // Each cell carries weight 1/cells of the cosine-weighted measure:
            // f L cos / (cos / pi) = pi f L.
            out.set_rgb(x, y, sum * (std::numbers::pi / cells));
        }
    });
    return out;
}

Spectrum reference_radiance(const Vec3& p, const Vec3& v, const Vec3& n, const brdf::Params& params,
                            const LightField& light, const ReferenceConfig& cfg, std::uint64_t pixel_index) {
    const double kd = 1.0 - params.metallic;
    const bool diffuse = kd > 0.0 && !is_black(params.albedo);
    const bool specular = cfg.lobes == brdf::Lobes::All;
    const int lobes_active = int(diffuse) + int(specular);
    if (lobes_active == 0) return {};
    const long per_lobe = cfg.nodes / lobes_active;
    const int n_theta = std::max(2, static_cast<int>(std::sqrt(per_lobe / 2.0)));
    const int n_phi = 2 * n_theta;
    const Frame frame(n);
    std::uint64_t node = 0;

    Spectrum result;
    if (diffuse) {
        Spectrum mean_l;
        for (int i = 0; i < n_theta; ++i)
            for (int j = 0; j < n_phi; ++j) {
                const Vec3 d = normalize(frame.to_world(
                    brdf::sample_cosine_hemisphere((i + 0.5) / n_theta, (j + 0.5) / n_phi)));
                Sampler rng(0, pixel_index, node++, 3);
                mean_l += light.query(p, d, rng).radiance;
            }
        // integral of (kd A / pi) L cos = kd A E_cos[L]
        result += params.albedo * (kd / (double(n_theta) * n_phi)) * mean_l;
    }

    if (specular) {
        const double alpha = std::sqrt(brdf::alpha_sq(params.roughness));
        const double d_psi = 0.5 * std::numbers::pi / n_theta;
        const double d_phi = 2.0 * std::numbers::pi / n_phi;
        Spectrum acc;
        for (int i = 0; i < n_theta; ++i) {
            const double psi = (i + 0.5) * d_psi;
            const double tan_psi = std::tan(psi);
            const double theta_h = std::atan(alpha * tan_psi);
            const double jac = alpha / (std::cos(psi) * std::cos(psi)) / (1.0 + alpha * alpha * tan_psi * tan_psi);
            const double sin_h = std::sin(theta_h), cos_h = std::cos(theta_h);
            for (int j = 0; j < n_phi; ++j) {
                const double phi = (j + 0.5) * d_phi;
                const Vec3 h = frame.to_world({sin_h * std::cos(phi), sin_h * std::sin(phi), cos_h});
                const double vh = dot(v, h);
                if (vh <= 0.0) continue;
                const Vec3 d = normalize(h * (2.0 * vh) - v);
                const double nd = dot(n, d);
                if (nd <= 0.0) continue;
                const Spectrum f = brdf::eval_lobes<double>(v, d, n, params, brdf::Lobes::All).specular;
                Sampler rng(0, pixel_index, node++, 3);
                const Spectrum L = light.query(p, d, rng).radiance;
                // d(omega_d) = 4 (v.h) d(omega_h), d(omega_h) = sin(theta_h) d(theta_h) d(phi)
                acc += f * L * (nd * 4.0 * vh * sin_h * jac);
            }
        }
        result += acc * (d_psi * d_phi);
    }
    return result;
}

ImageBuffer render_reference(const GBuffer& g, const Camera& cam, const LightField& light,
                             const ReferenceConfig& cfg) {
    check_inputs(g, cam);
    ImageBuffer out(g.width(), g.height(), 3);
    parallel_for(static_cast<std::size_t>(g.height()), cfg.threads, [&](std::size_t row) {
        const int y = static_cast<int>(row);
        for (int x = 0; x < g.width(); ++x) {
            const ShadingPoint sp = shading_point(g, cam, x, y);
            if (!sp.valid) continue;
            out.set_rgb(x, y, reference_radiance(sp.p, sp.v, sp.n, params_at(g, x, y), light, cfg,
                                                 pixel_index(g, x, y)));
        }
    });
    return out;
}

}  // namespace ssdr::render
