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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include <boost/math/distributions/chi_squared.hpp>

#include "brdf/brdf.hpp"
#include "core/camera.hpp"
#include "core/gbuffer.hpp"
#include "core/sampler.hpp"
#include "inverse/loss.hpp"
#include "inverse/optimize.hpp"
#include "lighting/analytic.hpp"
#include "oov/hypernet.hpp"
#include "oov/nerf.hpp"
#include "render/gradcheck.hpp"
#include "render/render.hpp"
#include "scenes/scenes.hpp"
#include "ssrt/ssrt.hpp"

namespace fs = std::filesystem;
using namespace ssdr;

namespace {

constexpr double kPi = std::numbers::pi;
const Vec3 kUp{0.0, 0.0, 1.0};

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Vec3 view_at(double degrees) {
    const double a = degrees * kPi / 180.0;
    return {std::sin(a), 0.0, std::cos(a)};
}

brdf::Params material(double albedo, double roughness, double metallic) {
    brdf::Params p;
    p.albedo = Spectrum(albedo);
    p.roughness = roughness;
    p.metallic = metallic;
    return p;
}

// Relative error with both values below `floor` counted as agreement.
double rel_err(double a, double b, double floor = 1e-10) {
    const double m = std::max(std::abs(a), std::abs(b));
    return m < floor ? 0.0 : std::abs(a - b) / m;
}

// 1. Stratified quadrature of the pdf over the sphere, polar angle
// theta = pi s^2 about the mirror direction.
Outcome pdf_normalization() {
    const auto t0 = Clock::now();
    const Vec3 v = view_at(45.0);
    const Vec3 axis = normalize(kUp * (2.0 * v.z) - v);
    const Vec3 t = normalize(cross(axis, Vec3{0, 1, 0}));
    const Vec3 b = cross(axis, t);
    constexpr int kStrata = 1000;  // 10^6 samples
    double worst = 0.0;
    std::string worst_at;
    for (double r : {0.1, 0.5, 1.0})
        for (double m : {0.0, 0.5, 1.0}) {
            const brdf::Params p = material(0.5, r, m);
            Sampler rng(1, 0, 0);
            double sum = 0.0;
            for (int i = 0; i < kStrata; ++i)
                for (int j = 0; j < kStrata; ++j) {
                    const double s = (i + rng.next1d()) / kStrata;
                    const double phi = 2.0 * kPi * (j + rng.next1d()) / kStrata;
                    const double theta = kPi * s * s;
                    const Vec3 d = axis * std::cos(theta) + t * (std::sin(theta) * std::cos(phi)) +
                                   b * (std::sin(theta) * std::sin(phi));
                    sum += brdf::pdf(v, normalize(d), kUp, p) * 4.0 * kPi * kPi * s * std::sin(theta);
                }
            const double total = sum / (double(kStrata) * kStrata);
            if (std::abs(total - 1.0) >= worst) {
                worst = std::abs(total - 1.0);
                worst_at = fmt::format("R={} M={} integral {:.5f}", r, m, total);
            }
        }
    const double secs = seconds_since(t0);
    return {worst <= 0.01 && secs < 30.0, fmt::format("worst |1 - integral| {:.2e} ({}), {:.1f} s", worst, worst_at, secs)};
}

// 2. White furnace for A = 1, M = 1.
Outcome white_furnace() {
    double worst_margin = -1e300;
    std::string worst;
    bool ok = true;
    for (double r : {0.1, 0.5, 1.0})
        for (double view : {0.0, 45.0, 80.0}) {
            const Vec3 v = view_at(view);
            const brdf::Params p = material(1.0, r, 1.0);
            Sampler rng(2, 0, 0);
            constexpr int n = 1'000'000;
            double sum[3] = {0, 0, 0}, sum2[3] = {0, 0, 0};
            for (int i = 0; i < n; ++i) {
                const brdf::Sample s = brdf::sample(v, kUp, p, rng);
                if (!s.valid) continue;
                for (int c = 0; c < 3; ++c) {
                    const double x = s.value[c] * s.direction.z / s.pdf;
                    sum[c] += x;
                    sum2[c] += x * x;
                }
            }
            for (int c = 0; c < 3; ++c) {
                const double mean = sum[c] / n;
                const double sigma = std::sqrt(std::max(0.0, sum2[c] / n - mean * mean) / n);
                const double margin = mean - (1.0 + 3.0 * sigma);
                ok = ok && margin <= 0.0;
                if (margin > worst_margin) {
                    worst_margin = margin;
                    worst = fmt::format("R={} view={} estimate {:.5f} +- {:.1e}", r, view, mean, sigma);
                }
            }
        }
    return {ok, "closest to bound: " + worst};
}

Vec3 spherical(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// 3. Pearson chi-square of sampled directions against the pdf.
Outcome chi_square() {
    constexpr int kTheta = 16, kPhi = 32, kSub = 12, kCount = 100000;
    bool ok = true;
    std::string detail;
    for (const auto& [r, m] : std::vector<std::pair<double, double>>{{0.5, 0.3}, {0.2, 1.0}, {0.9, 0.0}}) {
        const Vec3 v = view_at(40.0);
        const brdf::Params p = material(0.6, r, m);
        std::vector<double> observed(kTheta * kPhi, 0.0), expected(kTheta * kPhi, 0.0);
        Sampler rng(3, 0, 0);
        for (int i = 0; i < kCount; ++i) {
            const brdf::Sample s = brdf::sample(v, kUp, p, rng);
            if (!s.valid) continue;
            const double theta = std::acos(std::clamp(s.direction.z, -1.0, 1.0));
            double phi = std::atan2(s.direction.y, s.direction.x);
            if (phi < 0) phi += 2 * kPi;
            const int ti = std::min(kTheta - 1, int(theta / (0.5 * kPi) * kTheta));
            const int pi = std::min(kPhi - 1, int(phi / (2 * kPi) * kPhi));
            observed[ti * kPhi + pi] += 1.0;
        }
        const double dt = 0.5 * kPi / kTheta, dp = 2 * kPi / kPhi;
        for (int ti = 0; ti < kTheta; ++ti)
            for (int pi = 0; pi < kPhi; ++pi) {
                double mass = 0.0;
                for (int a = 0; a < kSub; ++a)
                    for (int c = 0; c < kSub; ++c) {
                        const double theta = (ti + (a + 0.5) / kSub) * dt;
                        const double phi = (pi + (c + 0.5) / kSub) * dp;
                        mass += brdf::pdf(v, spherical(theta, phi), kUp, p) * std::sin(theta);
                    }
                expected[ti * kPhi + pi] = kCount * mass * dt * dp / (kSub * kSub);
            }
        double chi2 = 0.0, pooled_obs = 0.0, pooled_exp = 0.0;
        int bins = 0;
        for (std::size_t i = 0; i < observed.size(); ++i) {
            if (expected[i] < 5.0) {
                pooled_obs += observed[i];
                pooled_exp += expected[i];
                continue;
            }
            chi2 += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
            ++bins;
        }
        if (pooled_exp > 0.0) {
            chi2 += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
            ++bins;
        }
        const boost::math::chi_squared dist(bins - 1);
        const double critical = boost::math::quantile(boost::math::complement(dist, 0.05));
        ok = ok && chi2 < critical;
        detail += fmt::format("{}(R={} M={}) chi2 {:.1f} < {:.1f}", detail.empty() ? "" : "; ", r, m, chi2, critical);
    }
    return {ok, detail};
}

// 4. Lambertian plane under constant light renders to A * L.
Outcome lambertian_closed_form() {
    const Camera cam = scenes::scene_camera(64, 64);
    const GBuffer g = make_uniform_gbuffer(64, 64, {0.6, 0.6, 0.6}, {0.0, 0.0, -1.0}, 2.0, 1.0, 0.0);
    render::RenderConfig cfg;
    cfg.spp = 4096;
    cfg.threads = 1;
    cfg.lobes = brdf::Lobes::DiffuseOnly;
    const auto t0 = Clock::now();
    const ImageBuffer img = render::render_mc(g, cam, lighting::ConstantLight({1.5, 1.5, 1.5}), cfg);
    const double secs = seconds_since(t0);
    const double err = std::abs(img.mean() - 0.9);
    return {err <= 1e-3 && secs < 60.0, fmt::format("mean {:.6f} vs A*L 0.9, {:.1f} s single-threaded", img.mean(), secs)};
}

double dot3(const Spectrum& a, const Spectrum& b) { return a.r * b.r + a.g * b.g + a.b * b.b; }

// 5. Adjoints against central differences with common random numbers.
Outcome gradient_fidelity() {
    bool ok = true;
    std::string detail;

    scenes::SceneOptions so;
    so.reference = false;
    so.learned_assets = false;
    for (auto kind : {scenes::SceneKind::GlossyFloor, scenes::SceneKind::TwoPlane}) {
        const scenes::Scene s = scenes::make_scene(kind, so);
        render::GradcheckConfig gc;
        gc.patch = 8;
        gc.render.spp = 64;
        gc.render.lobes = s.lobes;
        const auto rep = render::gradcheck(s.gbuffer, s.camera, *s.light(), inverse::ParamSet::parse("a,r,m,n,light"), gc);
        for (const auto& e : rep.entries) {
            ok = ok && e.pass && e.compared > 0;
            detail += fmt::format("{}{}:{} {:.1e}", detail.empty() ? "" : " ", scenes::to_string(kind), e.name,
                                  e.max_rel_err);
        }
    }

    // volume_render with respect to the NeRF weights.
    {
        const oov::NerfConfig ncfg;
        nn::MlpWeights w(oov::default_nerf_dims(ncfg));
        nn::init_random(w, 5, 1.0);
        oov::VolumeConfig vcfg;
        vcfg.t_far = 8.0;
        const Vec3 p{0.3, -0.2, 1.5}, d = normalize(Vec3{0.2, -0.5, 0.8});
        const Spectrum adj{0.7, -0.4, 0.9};
        std::vector<double> grad(w.parameter_count(), 0.0);
        Sampler r0(5, 1, 2);
        oov::volume_render_backward(w, p, d, vcfg, r0, ncfg, adj, grad);
        double worst = 0.0;
        const std::size_t stride = std::max<std::size_t>(1, w.parameter_count() / 400);
        for (std::size_t i = 0; i < w.parameter_count(); i += stride) {
            auto value = [&](double delta) {
                nn::MlpWeights v = w;
                v.params[i] += delta;
                Sampler r(5, 1, 2);
                return dot3(adj, oov::volume_render(v, p, d, vcfg, r, ncfg));
            };
            const double fd = (value(1e-6) - value(-1e-6)) / 2e-6;
            worst = std::max(worst, rel_err(grad[i], fd));
        }
        ok = ok && worst <= 1e-4;
        detail += fmt::format(" volume_render {:.1e}", worst);
    }

    // hypernet_forward with respect to its parameters and the global feature.
    {
        oov::HypernetParams h(4, {3, 6, 4});
        Sampler rng(6, 0, 0);
        for (double& v : h.params) v = rng.next1d() - 0.5;
        const std::vector<double> fg{0.5, -0.25, 1.0, 0.3};
        std::vector<double> dphi(h.out_dim());
        for (double& v : dphi) v = rng.next1d() - 0.5;
        std::vector<double> dparams(h.parameter_count(), 0.0), dfg(fg.size(), 0.0);
        oov::hypernet_backward(fg, h, dphi, dparams, dfg);
        auto objective = [&](const oov::HypernetParams& hh, const std::vector<double>& f) {
            const nn::MlpWeights phi = oov::hypernet_forward(f, hh);
            double s = 0.0;
            for (std::size_t i = 0; i < phi.params.size(); ++i) s += dphi[i] * phi.params[i];
            return s;
        };
        double worst = 0.0;
        for (std::size_t k = 0; k < fg.size(); ++k) {
            auto fp = fg, fm = fg;
            fp[k] += 1e-6;
            fm[k] -= 1e-6;
            worst = std::max(worst, rel_err(dfg[k], (objective(h, fp) - objective(h, fm)) / 2e-6));
        }
        for (std::size_t i = 0; i < h.parameter_count(); ++i) {
            auto hp = h, hm = h;
            hp.params[i] += 1e-6;
            hm.params[i] -= 1e-6;
            worst = std::max(worst, rel_err(dparams[i], (objective(hp, fg) - objective(hm, fg)) / 2e-6));
        }
        ok = ok && worst <= 1e-4;
        detail += fmt::format(" hypernet {:.1e}", worst);
    }
    return {ok, "max rel err " + detail};
}

// 6. Screen-space tracing on floor y = 1 and wall z = 6.
Outcome ssrt_two_plane() {
    Camera cam;
    cam.width = cam.height = 128;
    cam.fx = cam.fy = 100.0;
    cam.cx = cam.cy = 64.0;
    ImageBuffer depth(128, 128, 1);
    for (int y = 0; y < 128; ++y)
        for (int x = 0; x < 128; ++x) {
            const double ry = (y + 0.5 - cam.cy) / cam.fy;
            depth.at(x, y) = ry > 0.0 ? std::min(6.0, 1.0 / ry) : 6.0;
        }
    Sampler rng(7, 0, 0);
    int rays = 0, close = 0, traced_all = 0, misses = 0, misses_unit = 0;
    // Rays from floor pixels; a ray counts toward the accuracy figure when its
    // analytic wall intersection is in view.
    while (rays < 10000 || traced_all < 10000) {
        const int px = static_cast<int>(rng.next1d() * 128), py = static_cast<int>(rng.next1d() * 128);
        if (depth.at(px, py) >= 6.0) continue;
        const Vec3 p = unproject(cam, {px + 0.5, py + 0.5}, depth.at(px, py));
        const double ct = rng.next1d(), phi = 2.0 * kPi * rng.next1d();
        const double st = std::sqrt(1.0 - ct * ct);
        const Vec3 dir{st * std::cos(phi), -ct, st * std::sin(phi)};
        const ssrt::Hit hit = ssrt::trace(depth, cam, p, dir);
        if (traced_all < 10000) {
            ++traced_all;
            if (hit.status != ssrt::Status::Hit) {
                ++misses;
                if (hit.u == 1.0) ++misses_unit;
            }
        }
        if (rays >= 10000 || dir.z <= 1e-3) continue;
        const Vec3 s = p + dir * ((6.0 - p.z) / dir.z);
        if (s.y >= 1.0) continue;
        const Projection expected = project(cam, s);
        if (!expected.in_view) continue;
        ++rays;
        if (hit.status == ssrt::Status::Hit && std::hypot(hit.pixel.x - expected.pixel.x, hit.pixel.y - expected.pixel.y) <= 1.0)
            ++close;
    }
    const double frac = double(close) / rays;
    return {frac >= 0.95 && misses == misses_unit,
            fmt::format("{:.2f}% of {} rays within 1 px; {}/{} misses with u = 1", 100.0 * frac, rays, misses_unit, misses)};
}

// 7. Uncertainty mapping.
Outcome uncertainty_values() {
    const double u0 = ssrt::uncertainty(0.0), u1 = ssrt::uncertainty(0.1);
    bool monotone = true;
    double prev = u0;
    for (int i = 1; i <= 1500; ++i) {
        const double u = ssrt::uncertainty(i * 1e-3);
        monotone = monotone && u > prev;
        prev = u;
    }
    const bool ok = u0 == 0.0 && std::abs(u1 - 0.76159) <= 1e-5 && std::abs(u1 - std::tanh(1.0)) <= 1e-6 && monotone;
    return {ok, fmt::format("u(0) = {}, u(0.1) = {:.8f}, strictly increasing on [0, 1.5]: {}", u0, u1, monotone)};
}

// 8. Homogeneous medium and compositing weights.
Outcome volume_closed_form() {
    const oov::NerfConfig ncfg;
    const double k = 1.7;
    nn::MlpWeights w(oov::default_nerf_dims(ncfg));
    const std::size_t b = nn::bias_offset(w, w.layers() - 1);
    w.params[b] = std::log(std::expm1(0.5));
    for (int c = 1; c <= 3; ++c) w.params[b + c] = std::log((k / ncfg.radiance_scale) / (1.0 - k / ncfg.radiance_scale));
    oov::VolumeConfig vcfg;
    vcfg.t_near = 0.0;
    vcfg.t_far = 4.0;
    vcfg.n_samples = 256;
    const double want = k * (1.0 - std::exp(-2.0));
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Sampler rng(seed, 0, 0);
        const Spectrum L = oov::volume_render(w, {0.2, 0.1, 0.5}, normalize(Vec3{0.1, -0.2, 1.0}), vcfg, rng, ncfg);
        worst = std::max({worst, std::abs(L.r - want), std::abs(L.g - want), std::abs(L.b - want)});
    }

    double max_sum = 0.0;
    Sampler rng(8, 0, 0);
    for (int ray = 0; ray < 500; ++ray) {
        nn::MlpWeights rw(oov::default_nerf_dims(ncfg));
        nn::init_random(rw, 1000 + ray, 3.0);
        const Vec3 d = normalize(Vec3{rng.next1d() - 0.5, rng.next1d() - 0.5, rng.next1d() - 0.5});
        auto samples = oov::stratified_samples({0, 0, 1}, d, {}, rng);
        for (auto& s : samples) {
            const oov::NerfOutput o = oov::nerf_eval(rw, s.x, ncfg);
            s.sigma = o.sigma;
            s.color = o.color;
        }
        const oov::Composite c = oov::composite(samples);
        double sum = 0.0;
        for (double v : c.weights) sum += v;
        max_sum = std::max(max_sum, sum);
    }
    return {worst <= 1e-3 && max_sum <= 1.0,
            fmt::format("max |L - k(1-e^-2)| {:.2e}; max weight sum over 500 rays {:.17g}", worst, max_sum)};
}

// 9. Blend is the exact convex combination.
Outcome blend_exact() {
    const Spectrum a{4.0, 0.0, 0.0}, b{0.0, 4.0, 0.0};
    double worst = 0.0;
    for (double u : {0.0, 0.25, 1.0}) {
        const Spectrum c = oov::blend(a, b, u);
        const Spectrum want = a * (1.0 - u) + b * u;
        for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(c[k] - want[k]));
    }
    const Spectrum q = oov::blend(a, b, 0.25);
    const bool ok = worst <= 1e-15 && q.r == 3.0 && q.g == 1.0 && q.b == 0.0;
    return {ok, fmt::format("max deviation {:.1e}; u = 0.25 gives ({}, {}, {})", worst, q.r, q.g, q.b)};
}

// 10. Glossy floor with a compact sun: Monte Carlo against the discretized baseline.
Outcome glossy_baseline() {
    const auto t0 = Clock::now();
    scenes::SceneOptions so;
    so.learned_assets = false;
    so.reference_nodes = 1'000'000;
    const scenes::Scene s = scenes::make_scene(scenes::SceneKind::GlossyFloor, so);
    const auto light = s.light();
    render::RenderConfig rc;
    rc.spp = 256;
    const ImageBuffer mc = render::render_mc(s.gbuffer, s.camera, *light, rc);
    const ImageBuffer disc = render::render_discretized(s.gbuffer, s.camera, *light, {16, 32});
    const double mse_mc = mse(mc, *s.reference), mse_disc = mse(disc, *s.reference);
    const double secs = seconds_since(t0);
    return {mse_disc >= 5.0 * mse_mc && secs < 300.0,
            fmt::format("MSE discretized {:.3e} / MC {:.3e} = {:.0f}x, {:.0f} s", mse_disc, mse_mc, mse_disc / mse_mc, secs)};
}

lighting::SkyParams smooth_sky() {
    lighting::SkyParams p;
    p.zenith = {1.2, 1.0, 0.8};
    p.horizon = {0.3, 0.35, 0.4};
    p.sun = {6.0, 5.0, 4.0};
    p.sun_direction = normalize(Vec3{0.0, -0.4, 1.0});
    p.sun_sharpness = 20.0;
    return p;
}

GBuffer metal_floor(const Camera& cam, double roughness) {
    GBuffer g = scenes::two_plane_gbuffer(cam, 1.0, 1e6);
    for (int y = 0; y < g.height(); ++y)
        for (int x = 0; x < g.width(); ++x) {
            if (g.depth.at(x, y) > 100.0) g.depth.at(x, y) = 0.0;
            g.albedo.set_rgb(x, y, {0.9, 0.9, 0.9});
            g.roughness.at(x, y) = roughness;
            g.metallic.at(x, y) = 1.0;
        }
    return g;
}

// 11. Inverse recovery of albedo and roughness.
Outcome inverse_recovery() {
    const Camera cam = scenes::scene_camera(32, 32);

    // Constant albedo: Lambertian plane, the target is A * L exactly.
    const lighting::ConstantLight white({1.0, 1.0, 1.0});
    GBuffer plane = make_uniform_gbuffer(32, 32, {0.2, 0.2, 0.2}, {0.0, 0.0, -1.0}, 2.0, 1.0, 0.0);
    inverse::LossConfig ca;
    ca.iterations = 200;
    ca.params = inverse::ParamSet::parse("a");
    ca.render.lobes = brdf::Lobes::DiffuseOnly;
    ca.render.spp = 4;
    const auto ra = inverse::optimize(plane, cam, white, ImageBuffer(32, 32, 3, 0.6), ca);
    double albedo_err = 0.0;
    for (double v : ra.gbuffer.albedo.data()) albedo_err = std::max(albedo_err, std::abs(v - 0.6));
    const double albedo_ratio = ra.trace.back().loss / ra.trace.front().loss;

    // Roughness of a metal floor under a sky gradient, true 0.3, init 0.8.
    const lighting::SkyLight sky(smooth_sky());
    render::RenderConfig tc;
    tc.spp = 1024;
    tc.seed = 99;
    const ImageBuffer target = render::render_mc(metal_floor(cam, 0.3), cam, sky, tc);
    inverse::LossConfig cr;
    cr.iterations = 200;
    cr.params = inverse::ParamSet::parse("r");
    cr.shared = true;
    cr.render.spp = 256;

    // 1-D sweep: the loss along R must have its unique minimum near 0.3.
    ImageBuffer mask(32, 32, 1);
    {
        const GBuffer g = metal_floor(cam, 0.3);
        for (int y = 0; y < 32; ++y)
            for (int x = 0; x < 32; ++x) mask.at(x, y) = g.has_geometry(x, y) ? 1.0 : 0.0;
    }
    std::vector<double> sweep;
    double best_r = 0.0, best = 1e300;
    for (int i = 0; i <= 18; ++i) {
        const double r = 0.05 + 0.05 * i;
        const double l = inverse::loss_rerender(render::render_mc(metal_floor(cam, r), cam, sky, cr.render), target, &mask).value;
        sweep.push_back(l);
        if (l < best) best = l, best_r = r;
    }
    bool unimodal = true;
    for (std::size_t i = 1; i < sweep.size(); ++i) {
        const double r = 0.05 + 0.05 * i;
        unimodal = unimodal && (r <= best_r ? sweep[i] < sweep[i - 1] : sweep[i] > sweep[i - 1]);
    }
    const auto rr = inverse::optimize(metal_floor(cam, 0.8), cam, sky, target, cr);
    const double r_rec = rr.trace.back().mean_roughness;
    const double rough_ratio = rr.trace.back().loss / rr.trace.front().loss;

    const bool ok = albedo_err < 0.02 && albedo_ratio < 0.01 && std::abs(best_r - 0.3) <= 0.05 && unimodal &&
                    std::abs(r_rec - 0.3) < 0.05 && rough_ratio < 0.01;
    return {ok, fmt::format("albedo max err {:.2e}, loss ratio {:.1e}; sweep min R={:.2f} unimodal {}; "
                            "roughness {:.4f}, loss ratio {:.1e}",
                            albedo_err, albedo_ratio, best_r, unimodal, r_rec, rough_ratio)};
}

int run(const std::string& args) {
    const std::string cmd = std::string(SSDR_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Every .pfm (and gradcheck.csv) below dir, keyed by relative path.
std::vector<std::pair<std::string, std::string>> outputs(const fs::path& dir) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file() && (e.path().extension() == ".pfm" || e.path().filename() == "gradcheck.csv"))
            out.emplace_back(fs::relative(e.path(), dir).string(), slurp(e.path()));
    std::sort(out.begin(), out.end());
    return out;
}

// 12. Every subcommand gives identical bytes at 1, 4 and 16 threads.
Outcome cli_determinism() {
    const fs::path root = fs::temp_directory_path() / "ssdr_acceptance_determinism";
    fs::remove_all(root);
    std::vector<std::vector<std::pair<std::string, std::string>>> runs;
    bool commands_ok = true;
    for (int threads : {1, 4, 16}) {
        const fs::path d = root / std::to_string(threads);
        const std::string t = " --threads " + std::to_string(threads);
        const std::string glossy = (d / "glossy").string(), plane = (d / "plane").string();
        commands_ok &= run("make-scene glossy-floor --size 24x24 --ref-nodes 20000 --out " + glossy + t) == 0;
        commands_ok &= run("make-scene two-plane --size 24x24 --ref-nodes 20000 --out " + plane + t) == 0;
        commands_ok &= run("render --bundle " + glossy + " --spp 8 --seed 3 --out " + (d / "render").string() + t) == 0;
        commands_ok &= run("render --bundle " + plane + " --lighting learned --spp 4 --seed 4 --out " +
                           (d / "learned").string() + t) == 0;
        commands_ok &= run("gradcheck --bundle " + glossy + " --params a,r,m,n,light --seed 5 --out " +
                           (d / "gradcheck").string() + t) == 0;
        commands_ok &= run("baseline-compare --bundle " + glossy + " --spp 16 --seed 6 --out " +
                           (d / "baseline").string() + t) == 0;
        commands_ok &= run("optimize --bundle " + glossy + " --params r,m --iters 5 --spp 8 --seed 7 --resample --out " +
                           (d / "optimize").string() + t) == 0;
        runs.push_back(outputs(d));
    }
    const bool same = runs[0].size() > 0 && runs[0] == runs[1] && runs[0] == runs[2];
    fs::remove_all(root);
    return {commands_ok && same,
            fmt::format("{} output files per run, all subcommands exit 0: {}, identical across threads: {}",
                        runs[0].size(), commands_ok, same)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"BRDF pdf normalization", pdf_normalization},
        {"White-furnace energy bound", white_furnace},
        {"Sampler/pdf chi-square", chi_square},
        {"Lambertian closed form", lambertian_closed_form},
        {"Gradient fidelity", gradient_fidelity},
        {"SSRT two-plane oracle", ssrt_two_plane},
        {"Uncertainty endpoints", uncertainty_values},
        {"Volume rendering closed form", volume_closed_form},
        {"Blend exactness", blend_exact},
        {"Glossy baseline comparison", glossy_baseline},
        {"Inverse recovery", inverse_recovery},
        {"Determinism across threads", cli_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s  %2zu. %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
