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

#include "io/serialize.hpp"

#include <bit>
#include <fstream>

#include <fmt/format.h>

#include "core/error.hpp"
#include "io/pfm.hpp"
#include "json.hpp"

namespace ssdr::io {

using nlohmann::json;

namespace {

json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

template <typename T>
T field(const json& j, const char* key, const fs::path& path) {
    if (!j.contains(key)) throw ParseError(path.string() + ": missing key '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": key '" + key + "': " + e.what());
    }
}

void expect_kind(const json& j, const char* kind, const fs::path& path) {
    if (field<std::string>(j, "kind", path) != kind)
        throw ParseError(path.string() + ": expected kind '" + kind + "'");
}

Vec3 vec3_field(const json& j, const char* key, const fs::path& path) {
    const auto v = field<std::vector<double>>(j, key, path);
    if (v.size() != 3) throw ParseError(path.string() + ": key '" + key + "' needs 3 values");
    return {v[0], v[1], v[2]};
}

fs::path blob_path(const fs::path& header) {
    fs::path p = header;
    return p.replace_extension(".bin");
}

}  // namespace

Camera read_camera(const fs::path& path) {
    const json j = read_json(path);
    Camera cam;
    cam.fx = field<double>(j, "fx", path);
    cam.fy = field<double>(j, "fy", path);
    cam.cx = field<double>(j, "cx", path);
    cam.cy = field<double>(j, "cy", path);
    cam.width = field<int>(j, "width", path);
    cam.height = field<int>(j, "height", path);
    cam.validate();
    return cam;
}

void write_camera(const fs::path& path, const Camera& cam) {
    write_json(path, {{"fx", cam.fx}, {"fy", cam.fy}, {"cx", cam.cx}, {"cy", cam.cy},
                      {"width", cam.width}, {"height", cam.height}});
}

std::vector<double> read_f32_blob(const fs::path& path, std::size_t count) {
    const auto bytes = read_file(path);
    if (bytes.size() != count * 4)
        throw ParseError(fmt::format("{}: expected {} bytes, found {}", path.string(), count * 4, bytes.size()));
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint32_t u = 0;
        for (int k = 0; k < 4; ++k) u |= std::uint32_t(bytes[4 * i + k]) << (8 * k);
        out[i] = static_cast<double>(std::bit_cast<float>(u));
    }
    return out;
}

void write_f32_blob(const fs::path& path, const std::vector<double>& values) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(values.size() * 4);
    for (double v : values) {
        const auto u = std::bit_cast<std::uint32_t>(static_cast<float>(v));
        for (int k = 0; k < 4; ++k) bytes.push_back(static_cast<std::uint8_t>(u >> (8 * k)));
    }
    write_file(path, bytes);
}

nn::MlpWeights read_mlp(const fs::path& header) {
    const json j = read_json(header);
    expect_kind(j, "mlp", header);
    const auto dims = field<std::vector<std::size_t>>(j, "dims", header);
    const auto count = field<std::size_t>(j, "count", header);
    if (dims.size() < 2 || nn::MlpWeights::parameter_count(dims) != count)
        throw ParseError(header.string() + ": parameter count does not match dims");
    nn::MlpWeights w(dims, read_f32_blob(header.parent_path() / field<std::string>(j, "blob", header), count));
    w.validate();
    return w;
}

void write_mlp(const fs::path& header, const nn::MlpWeights& w) {
    const fs::path blob = blob_path(header);
    write_f32_blob(blob, w.params);
    write_json(header, {{"kind", "mlp"}, {"dims", w.dims}, {"count", w.params.size()},
                        {"blob", blob.filename().string()}});
}

oov::HypernetParams read_hypernet(const fs::path& header) {
    const json j = read_json(header);
    expect_kind(j, "hypernet", header);
    oov::HypernetParams h(field<std::size_t>(j, "in_dim", header),
                          field<std::vector<std::size_t>>(j, "target_dims", header));
    const auto count = field<std::size_t>(j, "count", header);
    if (count != h.parameter_count()) throw ParseError(header.string() + ": parameter count does not match dims");
    h.params = read_f32_blob(header.parent_path() / field<std::string>(j, "blob", header), count);
    h.validate();
    return h;
}

void write_hypernet(const fs::path& header, const oov::HypernetParams& h) {
    const fs::path blob = blob_path(header);
    write_f32_blob(blob, h.params);
    write_json(header, {{"kind", "hypernet"}, {"in_dim", h.in_dim}, {"target_dims", h.target_dims},
                        {"count", h.params.size()}, {"blob", blob.filename().string()}});
}

lighting::GridLight read_grid_light(const fs::path& header) {
    const json j = read_json(header);
    expect_kind(j, "grid", header);
    lighting::GridSpec spec;
    const auto dims = field<std::vector<int>>(j, "dims", header);
    if (dims.size() != 5) throw ParseError(header.string() + ": 'dims' needs 5 values");
    std::size_t count = 3;
    for (int k = 0; k < 5; ++k) {
        if (dims[k] < 1) throw ParseError(header.string() + ": grid dims must be >= 1");
        spec.dims[k] = dims[k];
        count *= static_cast<std::size_t>(dims[k]);
    }
    spec.bounds_min = vec3_field(j, "bounds_min", header);
    spec.bounds_max = vec3_field(j, "bounds_max", header);
    return {spec, read_f32_blob(header.parent_path() / field<std::string>(j, "blob", header), count)};
}

void write_grid_light(const fs::path& header, const lighting::GridLight& light) {
    const fs::path blob = blob_path(header);
    write_f32_blob(blob, light.data());
    const auto& s = light.spec();
    write_json(header, {{"kind", "grid"},
                        {"dims", s.dims},
                        {"bounds_min", {s.bounds_min.x, s.bounds_min.y, s.bounds_min.z}},
                        {"bounds_max", {s.bounds_max.x, s.bounds_max.y, s.bounds_max.z}},
                        {"blob", blob.filename().string()}});
}

lighting::FeatureGrid read_feature_grid(const fs::path& manifest) {
    const json j = read_json(manifest);
    expect_kind(j, "features", manifest);
    const int w = field<int>(j, "width", manifest);
    const int h = field<int>(j, "height", manifest);
    const int channels = field<int>(j, "channels", manifest);
    const auto slices = field<std::vector<std::string>>(j, "slices", manifest);
    if (channels < 1 || static_cast<int>(slices.size()) != (channels + 2) / 3)
        throw ParseError(manifest.string() + ": slice count does not match channels");
    ImageBuffer features(w, h, channels);
    for (std::size_t s = 0; s < slices.size(); ++s) {
        const ImageBuffer slice = read_pfm(manifest.parent_path() / slices[s]);
        if (slice.width() != w || slice.height() != h || slice.channels() != 3)
            throw ParseError(manifest.string() + ": slice " + slices[s] + " has the wrong shape");
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                for (int c = 0; c < 3 && int(3 * s) + c < channels; ++c) features.at(x, y, 3 * s + c) = slice.at(x, y, c);
    }
    return lighting::FeatureGrid(std::move(features));
}

void write_feature_grid(const fs::path& manifest, const lighting::FeatureGrid& grid) {
    const ImageBuffer& f = grid.image();
    const std::string stem = manifest.stem().string();
    std::vector<std::string> slices;
    for (int s = 0; 3 * s < f.channels(); ++s) {
        ImageBuffer slice(f.width(), f.height(), 3);
        for (int y = 0; y < f.height(); ++y)
            for (int x = 0; x < f.width(); ++x)
                for (int c = 0; c < 3 && 3 * s + c < f.channels(); ++c) slice.at(x, y, c) = f.at(x, y, 3 * s + c);
        slices.push_back(fmt::format("{}_{:02d}.pfm", stem, s));
        write_pfm(manifest.parent_path() / slices.back(), slice);
    }
    write_json(manifest, {{"kind", "features"}, {"width", f.width()}, {"height", f.height()},
                          {"channels", f.channels()}, {"slices", slices}});
}

void write_trace_csv(const fs::path& path, const std::vector<inverse::TraceRow>& trace) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << "iteration,loss,mean_albedo,mean_roughness,mean_metallic,mean_light\n";
    for (const auto& r : trace)
        out << fmt::format("{},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g}\n", r.iteration, r.loss, r.mean_albedo,
                           r.mean_roughness, r.mean_metallic, r.mean_light);
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace ssdr::io
