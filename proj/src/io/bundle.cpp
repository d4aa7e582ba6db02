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

#include "io/bundle.hpp"

#include <fstream>

#include "core/error.hpp"
#include "io/pfm.hpp"
#include "io/serialize.hpp"
#include "json.hpp"
#include "oov/learned_field.hpp"

namespace ssdr::io {

using nlohmann::json;

LightingKind parse_lighting_kind(const std::string& name) {
    if (name == "constant") return LightingKind::Constant;
    if (name == "sky") return LightingKind::Sky;
    if (name == "grid") return LightingKind::Grid;
    if (name == "learned") return LightingKind::Learned;
    throw ConfigError("unknown lighting '" + name + "' (expected constant, sky, grid, learned)");
}

std::string to_string(LightingKind kind) {
    switch (kind) {
        case LightingKind::Constant: return "constant";
        case LightingKind::Sky: return "sky";
        case LightingKind::Grid: return "grid";
        case LightingKind::Learned: return "learned";
    }
    return "?";
}

namespace {

json rgb_json(const Spectrum& s) { return json::array({s.r, s.g, s.b}); }
json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Spectrum rgb_from(const json& j) {
    const auto v = j.get<std::vector<double>>();
    if (v.size() != 3) throw ParseError("bundle.json: expected 3 values");
    return {v[0], v[1], v[2]};
}
Vec3 vec_from(const json& j) {
    const Spectrum s = rgb_from(j);
    return {s.r, s.g, s.b};
}

ImageBuffer load_map(const fs::path& dir, const std::string& file, const char* name, int channels) {
    const fs::path path = dir / file;
    if (!fs::exists(path)) throw ValidationError(std::string("missing map: ") + name + " (" + path.string() + ")");
    ImageBuffer img = read_pfm(path);
    if (img.channels() != channels)
        throw ValidationError(std::string("map ") + name + " must have " + std::to_string(channels) + " channel(s)");
    return img;
}

}  // namespace

BundleManifest read_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    BundleManifest m;
    try {
        const json j = json::parse(in);
        if (j.contains("maps")) {
            const json& maps = j.at("maps");
            m.albedo = maps.value("albedo", m.albedo);
            m.normal = maps.value("normal", m.normal);
            m.depth = maps.value("depth", m.depth);
            m.roughness = maps.value("roughness", m.roughness);
            m.metallic = maps.value("metallic", m.metallic);
        }
        m.camera = j.value("camera", m.camera);
        m.scene_scale = j.value("scene_scale", m.scene_scale);
        m.diffuse_only = j.value("diffuse_only", m.diffuse_only);
        if (j.contains("lighting")) {
            const json& l = j.at("lighting");
            m.default_lighting = l.value("default", m.default_lighting);
            if (l.contains("constant")) m.constant = rgb_from(l.at("constant").at("radiance"));
            if (l.contains("sky")) {
                const json& s = l.at("sky");
                lighting::SkyParams p;
                if (s.contains("zenith")) p.zenith = rgb_from(s.at("zenith"));
                if (s.contains("horizon")) p.horizon = rgb_from(s.at("horizon"));
                if (s.contains("up")) p.up = vec_from(s.at("up"));
                if (s.contains("sun")) p.sun = rgb_from(s.at("sun"));
                if (s.contains("sun_direction")) p.sun_direction = vec_from(s.at("sun_direction"));
                p.sun_sharpness = s.value("sun_sharpness", p.sun_sharpness);
                m.sky = p;
            }
            if (l.contains("grid")) m.grid = l.at("grid").get<std::string>();
        }
        if (j.contains("learned")) {
            const json& l = j.at("learned");
            LearnedAssets a;
            a.features = l.at("features").get<std::string>();
            a.decoder = l.at("decoder").get<std::string>();
            if (l.contains("nerf")) a.nerf = l.at("nerf").get<std::string>();
            if (l.contains("hypernet")) a.hypernet = l.at("hypernet").get<std::string>();
            if (l.contains("global_feature")) a.global_feature = l.at("global_feature").get<std::vector<double>>();
            if (a.nerf.has_value() == a.hypernet.has_value())
                throw ParseError("exactly one of 'nerf' and 'hypernet' is required");
            m.learned = a;
        }
        if (j.contains("target")) m.target = j.at("target").get<std::string>();
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    parse_lighting_kind(m.default_lighting);
    return m;
}

void write_manifest(const fs::path& path, const BundleManifest& m) {
    json j;
    j["maps"] = {{"albedo", m.albedo}, {"normal", m.normal}, {"depth", m.depth},
                 {"roughness", m.roughness}, {"metallic", m.metallic}};
    j["camera"] = m.camera;
    j["scene_scale"] = m.scene_scale;
    j["diffuse_only"] = m.diffuse_only;
    json l = {{"default", m.default_lighting}};
    if (m.constant) l["constant"] = {{"radiance", rgb_json(*m.constant)}};
    if (m.sky) {
        const auto& s = *m.sky;
        l["sky"] = {{"zenith", rgb_json(s.zenith)}, {"horizon", rgb_json(s.horizon)}, {"up", vec_json(s.up)},
                    {"sun", rgb_json(s.sun)}, {"sun_direction", vec_json(s.sun_direction)},
                    {"sun_sharpness", s.sun_sharpness}};
    }
    if (m.grid) l["grid"] = *m.grid;
    j["lighting"] = l;
    if (m.learned) {
        const auto& a = *m.learned;
        json lj = {{"features", a.features}, {"decoder", a.decoder}, {"global_feature", a.global_feature}};
        if (a.nerf) lj["nerf"] = *a.nerf;
        if (a.hypernet) lj["hypernet"] = *a.hypernet;
        j["learned"] = lj;
    }
    if (m.target) j["target"] = *m.target;
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

Bundle load_bundle(const fs::path& dir, bool repair) {
    if (!fs::is_directory(dir)) throw IoError("bundle directory not found: " + dir.string());
    Bundle b;
    b.dir = dir;
    if (fs::exists(dir / "bundle.json")) b.manifest = read_manifest(dir / "bundle.json");
    const BundleManifest& m = b.manifest;

    b.gbuffer.albedo = load_map(dir, m.albedo, "albedo", 3);
    b.gbuffer.normal = load_map(dir, m.normal, "normal", 3);
    b.gbuffer.depth = load_map(dir, m.depth, "depth", 1);
    b.gbuffer.roughness = load_map(dir, m.roughness, "roughness", 1);
    b.gbuffer.metallic = load_map(dir, m.metallic, "metallic", 1);
    if (!fs::exists(dir / m.camera)) throw ValidationError("missing camera: " + (dir / m.camera).string());
    b.camera = read_camera(dir / m.camera);

    const ValidationReport rep = validate_gbuffer(b.gbuffer, repair);
    if (!rep.ok() && !repair) {
        std::string msg = "G-buffer validation failed with " + std::to_string(rep.issues.size()) + " issue(s)";
        for (std::size_t i = 0; i < rep.issues.size() && i < 10; ++i) msg += "\n  " + to_string(rep.issues[i]);
        throw ValidationError(msg);
    }
    if (b.camera.width != b.gbuffer.width() || b.camera.height != b.gbuffer.height())
        throw ValidationError("camera size does not match the G-buffer maps");
    return b;
}

void save_bundle(const fs::path& dir, const GBuffer& g, const Camera& cam, const BundleManifest& m) {
    fs::create_directories(dir);
    write_pfm(dir / m.albedo, g.albedo);
    write_pfm(dir / m.normal, g.normal);
    write_pfm(dir / m.depth, g.depth);
    write_pfm(dir / m.roughness, g.roughness);
    write_pfm(dir / m.metallic, g.metallic);
    write_camera(dir / m.camera, cam);
    write_manifest(dir / "bundle.json", m);
}

std::unique_ptr<lighting::LightField> make_lighting(const Bundle& b, LightingKind kind) {
    const BundleManifest& m = b.manifest;
    switch (kind) {
        case LightingKind::Constant:
            return std::make_unique<lighting::ConstantLight>(m.constant.value_or(Spectrum(1.0)));
        case LightingKind::Sky:
            return std::make_unique<lighting::SkyLight>(m.sky.value_or(lighting::SkyParams{}));
        case LightingKind::Grid:
            if (!m.grid) throw ConfigError("bundle has no grid light");
            return std::make_unique<lighting::GridLight>(read_grid_light(b.dir / *m.grid));
        case LightingKind::Learned: {
            if (!m.learned) throw ConfigError("bundle has no learned lighting assets");
            const LearnedAssets& a = *m.learned;
            oov::OovWeights w;
            if (a.nerf) w.direct = read_mlp(b.dir / *a.nerf);
            if (a.hypernet) w.hypernet = read_hypernet(b.dir / *a.hypernet);
            w.global_feature = a.global_feature;
            return std::make_unique<oov::LearnedLightField>(read_feature_grid(b.dir / a.features), b.gbuffer, b.camera,
                                                            read_mlp(b.dir / a.decoder), std::move(w));
        }
    }
    throw ConfigError("unknown lighting kind");
}

}  // namespace ssdr::io
