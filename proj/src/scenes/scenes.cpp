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

#include "scenes/scenes.hpp"

#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "io/pfm.hpp"
#include "io/serialize.hpp"
#include "oov/nerf.hpp"
#include "render/render.hpp"

namespace ssdr::scenes {

SceneKind parse_scene_kind(const std::string& name) {
    if (name == "cornell-like") return SceneKind::CornellLike;
    if (name == "two-plane") return SceneKind::TwoPlane;
    if (name == "glossy-floor") return SceneKind::GlossyFloor;
    throw ConfigError("unknown scene kind '" + name + "' (expected cornell-like, two-plane, glossy-floor)");
}

std::string to_string(SceneKind kind) {
    switch (kind) {
        case SceneKind::CornellLike: return "cornell-like";
        case SceneKind::TwoPlane: return "two-plane";
        case SceneKind::GlossyFloor: return "glossy-floor";
    }
    return "?";
}

Camera scene_camera(int width, int height) {
    if (width < 1 || height < 1) throw ConfigError("scene size must be positive");
    Camera cam;
    cam.fx = cam.fy = 0.78125 * width;
    cam.cx = 0.5 * width;
    cam.cy = 0.5 * height;
    cam.width = width;
    cam.height = height;
    return cam;
}

namespace {

struct Surface {
    double z = std::numeric_limits<double>::infinity();
    Vec3 normal;
    int id = -1;
};

// Nearest of a set of axis-aligned planes {axis coordinate == value} along the
// pixel ray r = (rx, ry, 1) (z-depth parameterization).
void consider(Surface& best, double coord_per_z, double value, const Vec3& normal, int id) {
    if (coord_per_z == 0.0) return;
    const double z = value / coord_per_z;
    if (z > 0.0 && z < best.z) best = {z, normal, id};
}

GBuffer empty_gbuffer(int w, int h) {
    GBuffer g;
    g.albedo = ImageBuffer(w, h, 3);
    g.normal = ImageBuffer(w, h, 3);
    g.depth = ImageBuffer(w, h, 1);
    g.roughness = ImageBuffer(w, h, 1);
    g.metallic = ImageBuffer(w, h, 1);
    return g;
}

void set_pixel(GBuffer& g, int x, int y, const Surface& s, const Spectrum& albedo, double roughness,
               double metallic) {
    g.depth.at(x, y) = s.z;
    g.normal.set_rgb(x, y, {s.normal.x, s.normal.y, s.normal.z});
    g.albedo.set_rgb(x, y, albedo);
    g.roughness.at(x, y) = roughness;
    g.metallic.at(x, y) = metallic;
}

Surface two_plane_surface(const Camera& cam, int y, double floor_y, double wall_z) {
    const double ry = (y + 0.5 - cam.cy) / cam.fy;
    Surface s{wall_z, {0.0, 0.0, -1.0}, 1};
    consider(s, ry, floor_y, {0.0, -1.0, 0.0}, 0);
    return s;
}

GBuffer cornell_gbuffer(const Camera& cam) {
    GBuffer g = empty_gbuffer(cam.width, cam.height);
    const Spectrum white{0.75, 0.75, 0.75}, red{0.8, 0.1, 0.1}, green{0.1, 0.8, 0.1};
    for (int y = 0; y < cam.height; ++y)
        for (int x = 0; x < cam.width; ++x) {
            const double rx = (x + 0.5 - cam.cx) / cam.fx;
            const double ry = (y + 0.5 - cam.cy) / cam.fy;
            Surface s{3.0, {0.0, 0.0, -1.0}, 4};
            consider(s, rx, -1.0, {1.0, 0.0, 0.0}, 0);
            consider(s, rx, 1.0, {-1.0, 0.0, 0.0}, 1);
            consider(s, ry, 1.0, {0.0, -1.0, 0.0}, 2);
            consider(s, ry, -1.0, {0.0, 1.0, 0.0}, 3);
            const Spectrum a = s.id == 0 ? red : (s.id == 1 ? green : white);
            set_pixel(g, x, y, s, a, 1.0, 0.0);
        }
    return g;
}

lighting::SkyParams cornell_sky() {
    lighting::SkyParams p;
    p.zenith = {1.0, 1.0, 1.0};
    p.horizon = {0.2, 0.2, 0.2};
    return p;
}

lighting::SkyParams glossy_sky() {
    lighting::SkyParams p;
    p.zenith = {0.6, 0.7, 1.0};
    p.horizon = {0.3, 0.3, 0.3};
    p.sun = {50.0, 45.0, 40.0};
    p.sun_direction = normalize(Vec3{0.0, -0.3, 1.0});
    p.sun_sharpness = 500.0;
    return p;
}

// Smooth room-scale radiance: brighter from above, warm toward +x, fading with depth.
lighting::GridLight two_plane_grid() {
    lighting::GridSpec spec;
    spec.dims = {2, 2, 2, 8, 16};
    spec.bounds_min = {-3.0, -1.0, 0.0};
    spec.bounds_max = {3.0, 1.0, 6.0};
    const auto [nx, ny, nz, nt, np] = spec.dims;
    std::vector<double> data(static_cast<std::size_t>(nx) * ny * nz * nt * np * 3);
    const lighting::GridLight probe(spec, data);
    std::size_t i = 0;
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy)
            for (int iz = 0; iz < nz; ++iz)
                for (int it = 0; it < nt; ++it)
                    for (int ip = 0; ip < np; ++ip) {
                        const Vec3 p = probe.node_position(ix, iy, iz);
                        const Vec3 d = probe.node_direction(it, ip);
                        const double up = std::max(0.0, -d.y);
                        const double warm = 0.5 + 0.5 * std::tanh(p.x + d.x);
                        const double fade = 1.0 / (1.0 + 0.1 * p.z);
                        data[i++] = (0.4 + 1.2 * up + 0.3 * warm) * fade;
                        data[i++] = (0.4 + 1.1 * up + 0.15 * warm) * fade;
                        data[i++] = (0.45 + 1.0 * up) * fade;
                    }
    return {spec, std::move(data)};
}

void add_learned_assets(Scene& s, const SceneOptions& opts) {
    const int w = s.camera.width, h = s.camera.height, c = opts.feature_channels;
    if (c < 1) throw ConfigError("feature_channels must be >= 1");
    ImageBuffer f(w, h, c);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int k = 0; k < c; ++k)
                f.at(x, y, k) = std::sin(0.3 * (k + 1) * x / w * 6.0 + 0.7 * k) * std::cos(0.2 * (k + 2) * y / h * 6.0);
    s.features = lighting::FeatureGrid(std::move(f));

    const lighting::LightNetConfig lcfg;
    nn::MlpWeights decoder(lighting::default_decoder_dims(c, lcfg));
    nn::init_random(decoder, opts.seed + 1, 0.5);
    s.decoder = std::move(decoder);

    constexpr std::size_t kGlobalDim = 4;
    oov::HypernetParams hyper(kGlobalDim, oov::default_nerf_dims());
    nn::MlpWeights scratch(hyper.target_dims);
    // Each generated weight is a small random combination of the global
    // feature plus a Glorot-scaled bias.
    Sampler rng(opts.seed + 2, 0, 0);
    nn::init_random(scratch, opts.seed + 3, 0.5);
    const std::size_t out = hyper.out_dim();
    for (std::size_t o = 0; o < out; ++o) {
        for (std::size_t k = 0; k < kGlobalDim; ++k) hyper.params[o * kGlobalDim + k] = 0.05 * (2.0 * rng.next1d() - 1.0);
        hyper.params[out * kGlobalDim + o] = scratch.params[o];
    }
    s.hypernet = std::move(hyper);
    s.global_feature = {0.5, -0.25, 1.0, 0.0};

    io::LearnedAssets a;
    a.features = "features.json";
    a.decoder = "decoder.json";
    a.hypernet = "hypernet.json";
    a.global_feature = s.global_feature;
    s.manifest.learned = a;
}

}  // namespace

GBuffer two_plane_gbuffer(const Camera& cam, double floor_y, double wall_z) {
    GBuffer g = empty_gbuffer(cam.width, cam.height);
    for (int y = 0; y < cam.height; ++y)
        for (int x = 0; x < cam.width; ++x) {
            const Surface s = two_plane_surface(cam, y, floor_y, wall_z);
            if (s.id == 0) set_pixel(g, x, y, s, {0.7, 0.7, 0.7}, 0.5, 0.0);
            else set_pixel(g, x, y, s, {0.6, 0.5, 0.4}, 1.0, 0.0);
        }
    return g;
}

std::unique_ptr<lighting::LightField> Scene::light() const {
    switch (kind) {
        case SceneKind::CornellLike:
        case SceneKind::GlossyFloor: return std::make_unique<lighting::SkyLight>(*manifest.sky);
        case SceneKind::TwoPlane: return std::make_unique<lighting::GridLight>(*grid);
    }
    return nullptr;
}

Scene make_scene(SceneKind kind, const SceneOptions& opts) {
    Scene s;
    s.kind = kind;
    s.camera = scene_camera(opts.width, opts.height);
    switch (kind) {
        case SceneKind::CornellLike:
            s.gbuffer = cornell_gbuffer(s.camera);
            s.lobes = brdf::Lobes::DiffuseOnly;
            s.manifest.sky = cornell_sky();
            s.manifest.default_lighting = "sky";
            break;
        case SceneKind::TwoPlane:
            s.gbuffer = two_plane_gbuffer(s.camera);
            s.grid = two_plane_grid();
            s.manifest.grid = "light_grid.json";
            s.manifest.default_lighting = "grid";
            break;
        case SceneKind::GlossyFloor: {
            s.gbuffer = two_plane_gbuffer(s.camera);
            for (int y = 0; y < s.camera.height; ++y)
                for (int x = 0; x < s.camera.width; ++x)
                    if (s.gbuffer.normal.at(x, y, 1) < 0.0) {
                        s.gbuffer.albedo.set_rgb(x, y, {0.9, 0.9, 0.9});
                        s.gbuffer.roughness.at(x, y) = 0.1;
                        s.gbuffer.metallic.at(x, y) = 1.0;
                    }
            s.manifest.sky = glossy_sky();
            s.manifest.default_lighting = "sky";
            break;
        }
    }
    s.manifest.diffuse_only = s.lobes == brdf::Lobes::DiffuseOnly;

    if (opts.reference) {
        render::ReferenceConfig rc;
        rc.nodes = opts.reference_nodes;
        rc.lobes = s.lobes;
        rc.threads = opts.threads;
        s.reference = render::render_reference(s.gbuffer, s.camera, *s.light(), rc);
        s.manifest.target = "reference.pfm";
    }
    if (opts.learned_assets) add_learned_assets(s, opts);
    return s;
}

void write_scene(const std::filesystem::path& dir, const Scene& s) {
    io::save_bundle(dir, s.gbuffer, s.camera, s.manifest);
    if (s.grid) io::write_grid_light(dir / *s.manifest.grid, *s.grid);
    if (s.reference) io::write_pfm(dir / *s.manifest.target, *s.reference);
    if (s.manifest.learned) {
        const auto& a = *s.manifest.learned;
        io::write_feature_grid(dir / a.features, *s.features);
        io::write_mlp(dir / a.decoder, *s.decoder);
        io::write_hypernet(dir / *a.hypernet, *s.hypernet);
    }
}

}  // namespace ssdr::scenes
