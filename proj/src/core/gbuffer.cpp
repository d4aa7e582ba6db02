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

#include "core/gbuffer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/error.hpp"

namespace ssdr {

namespace {

constexpr double kNormalTolerance = 1e-4;

void check_map(const ImageBuffer& m, const char* name, int channels, int w, int h) {
    if (m.empty()) throw ValidationError(std::string("missing map: ") + name);
    if (m.channels() != channels)
        throw ValidationError(std::string(name) + ": expected " + std::to_string(channels) +
                              " channel(s), got " + std::to_string(m.channels()));
    if (m.width() != w || m.height() != h)
        throw ValidationError(std::string(name) + ": dimensions " + std::to_string(m.width()) + "x" +
                              std::to_string(m.height()) + " differ from depth map " +
                              std::to_string(w) + "x" + std::to_string(h));
}

void check_unit_range(ImageBuffer& m, const char* name, bool repair, ValidationReport& rep) {
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x)
            for (int c = 0; c < m.channels(); ++c) {
                double& v = m.at(x, y, c);
                if (!std::isfinite(v)) {
                    rep.issues.push_back({ValidationIssue::Kind::NonFinite, name, x, y, v});
                    if (repair) v = 0.0;
                } else if (v < 0.0 || v > 1.0) {
                    rep.issues.push_back({ValidationIssue::Kind::OutOfRange, name, x, y, v});
                    if (repair) v = std::clamp(v, 0.0, 1.0);
                }
            }
}

}  // namespace

bool is_valid_depth(double d) { return std::isfinite(d) && d > 0.0; }

bool GBuffer::has_geometry(int x, int y) const { return is_valid_depth(depth.at(x, y)); }

Vec3 GBuffer::normal_at(int x, int y) const {
    return {normal.at(x, y, 0), normal.at(x, y, 1), normal.at(x, y, 2)};
}

void GBuffer::check_shapes() const {
    if (depth.empty()) throw ValidationError("missing map: depth");
    const int w = depth.width(), h = depth.height();
    check_map(depth, "depth", 1, w, h);
    check_map(albedo, "albedo", 3, w, h);
    check_map(normal, "normal", 3, w, h);
    check_map(roughness, "roughness", 1, w, h);
    check_map(metallic, "metallic", 1, w, h);
}

std::string to_string(const ValidationIssue& issue) {
    std::ostringstream os;
    switch (issue.kind) {
        case ValidationIssue::Kind::NonUnitNormal: os << "non-unit normal"; break;
        case ValidationIssue::Kind::OutOfRange: os << "out-of-range value"; break;
        case ValidationIssue::Kind::NonFinite: os << "non-finite value"; break;
    }
    os << " in " << issue.map << " at (" << issue.x << ", " << issue.y << "): " << issue.value;
    return os.str();
}

ValidationReport validate_gbuffer(GBuffer& g, bool repair) {
    g.check_shapes();
    ValidationReport rep;

    for (int y = 0; y < g.height(); ++y)
        for (int x = 0; x < g.width(); ++x) {
            double d = g.depth.at(x, y);
            // NaN and +/-inf depths are tolerated only as the no-geometry sentinel
            // (handled downstream); report NaN since it is never meaningful.
            if (std::isnan(d)) {
                rep.issues.push_back({ValidationIssue::Kind::NonFinite, "depth", x, y, d});
                if (repair) g.depth.at(x, y) = kNoGeometry;
            }
        }

    check_unit_range(g.albedo, "albedo", repair, rep);
    check_unit_range(g.roughness, "roughness", repair, rep);
    check_unit_range(g.metallic, "metallic", repair, rep);

    // Normals of pixels without geometry are never read.
    for (int y = 0; y < g.height(); ++y)
        for (int x = 0; x < g.width(); ++x) {
            if (!g.has_geometry(x, y)) continue;
            Vec3 n = g.normal_at(x, y);
            if (!is_finite(n)) {
                rep.issues.push_back({ValidationIssue::Kind::NonFinite, "normal", x, y, length(n)});
                if (repair) n = {0.0, 0.0, -1.0};
            } else {
                double len = length(n);
                if (std::abs(len - 1.0) > kNormalTolerance) {
                    rep.issues.push_back({ValidationIssue::Kind::NonUnitNormal, "normal", x, y, len});
                    if (repair) n = len > 0.0 ? n / len : Vec3{0.0, 0.0, -1.0};
                }
            }
            if (repair) {
                g.normal.at(x, y, 0) = n.x;
                g.normal.at(x, y, 1) = n.y;
                g.normal.at(x, y, 2) = n.z;
            }
        }
    return rep;
}

ValidationReport validate_gbuffer(const GBuffer& g) {
    GBuffer copy = g;
    return validate_gbuffer(copy, false);
}

GBuffer make_uniform_gbuffer(int width, int height, const Spectrum& albedo, const Vec3& normal,
                             double depth, double roughness, double metallic) {
    GBuffer g;
    g.albedo = ImageBuffer(width, height, 3);
    g.normal = ImageBuffer(width, height, 3);
    g.depth = ImageBuffer(width, height, 1, depth);
    g.roughness = ImageBuffer(width, height, 1, roughness);
    g.metallic = ImageBuffer(width, height, 1, metallic);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            g.albedo.set_rgb(x, y, albedo);
            g.normal.at(x, y, 0) = normal.x;
            g.normal.at(x, y, 1) = normal.y;
            g.normal.at(x, y, 2) = normal.z;
        }
    return g;
}

}  // namespace ssdr
