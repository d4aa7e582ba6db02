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

#include "ssrt/ssrt.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/gbuffer.hpp"

namespace ssdr::ssrt {

void Config::validate() const {
    if (max_steps < 1) throw ConfigError("ssrt: max_steps must be >= 1");
    if (!(stride >= 0.5)) throw ConfigError("ssrt: stride must be >= 0.5 pixels");
    if (!(thickness > 0.0)) throw ConfigError("ssrt: thickness must be positive");
    if (refinement_steps < 0) throw ConfigError("ssrt: refinement_steps must be >= 0");
    if (!(max_distance > 0.0) || !(near_plane > 0.0)) throw ConfigError("ssrt: bad ray extent");
}

double uncertainty(double delta_d) {
    if (!(delta_d >= 0.0)) throw ContractViolation("uncertainty: depth gap must be non-negative");
    return std::tanh(10.0 * delta_d);
}

namespace {

// Screen-space segment with perspective-correct depth: pixel position and
// 1/z both vary linearly with the march parameter s (in strides).
struct Segment {
    PixelCoord origin;
    double step_x = 0, step_y = 0;
    double inv_z0 = 0, inv_z_step = 0;
    double length_steps = 0;  // segment length measured in strides

    PixelCoord at(double s) const { return {origin.x + s * step_x, origin.y + s * step_y}; }
    double ray_depth(double s) const { return 1.0 / (inv_z0 + s * inv_z_step); }
};

// Inverse depth is affine in screen space on a plane, so it is interpolated
// bilinearly between pixel centers when the four neighbors look like one
// surface. Across silhouettes and holes the containing pixel is used.
double surface_depth(const ImageBuffer& depth, const PixelCoord& q) {
    const int xi = static_cast<int>(std::floor(q.x));
    const int yi = static_cast<int>(std::floor(q.y));
    const double fx = q.x - 0.5, fy = q.y - 0.5;
    const int x0 = static_cast<int>(std::floor(fx)), y0 = static_cast<int>(std::floor(fy));
    const double tx = fx - x0, ty = fy - y0;
    const int w = depth.width(), h = depth.height();
    double inv[4];
    double lo = 0.0, hi = 0.0;
    for (int k = 0; k < 4; ++k) {
        const int x = std::clamp(x0 + (k & 1), 0, w - 1);
        const int y = std::clamp(y0 + (k >> 1), 0, h - 1);
        const double d = depth.at(x, y);
        if (!is_valid_depth(d)) return depth.at(xi, yi);
        inv[k] = 1.0 / d;
        lo = k == 0 ? inv[k] : std::min(lo, inv[k]);
        hi = k == 0 ? inv[k] : std::max(hi, inv[k]);
    }
    if (hi > 1.25 * lo) return depth.at(xi, yi);
    const double top = inv[0] + tx * (inv[1] - inv[0]);
    const double bottom = inv[2] + tx * (inv[3] - inv[2]);
    return 1.0 / (top + ty * (bottom - top));
}

}  // namespace

Hit trace(const ImageBuffer& depth, const Camera& cam, const Vec3& p, const Vec3& dir,
          const Config& cfg) {
    if (!is_finite(p)) throw ContractViolation("trace: non-finite origin");
    if (!is_finite(dir) || length(dir) < 1e-12) throw ContractViolation("trace: zero-length direction");
    if (!(p.z > 0.0)) throw ContractViolation("trace: origin is behind camera");
    const Vec3 d = normalize(dir);

    Hit hit;
    hit.pixel = project(cam, p).pixel;

    double t_max = cfg.max_distance;
    const double z_floor = std::min(cfg.near_plane, 0.5 * p.z);
    if (d.z < 0.0) t_max = std::min(t_max, (p.z - z_floor) / -d.z);
    const Vec3 e = p + d * t_max;

    const PixelCoord p0 = project(cam, p).pixel;
    const PixelCoord p1 = project(cam, e).pixel;
    const double dx = p1.x - p0.x, dy = p1.y - p0.y;
    const double len_px = std::max(std::abs(dx), std::abs(dy));
    if (!(len_px > 1e-9)) return hit;  // ray stays inside one pixel

    Segment seg;
    seg.origin = p0;
    seg.step_x = dx / len_px * cfg.stride;
    seg.step_y = dy / len_px * cfg.stride;
    seg.inv_z0 = 1.0 / p.z;
    seg.inv_z_step = (1.0 / e.z - 1.0 / p.z) / len_px * cfg.stride;
    seg.length_steps = len_px / cfg.stride;

    // Last march parameter still inside the view, and whether the segment
    // leaves the view before it ends.
    double s_view = seg.length_steps;
    auto clip = [&](double o, double step, double size) {
        if (step > 0.0) s_view = std::min(s_view, (size - 1e-9 - o) / step);
        if (step < 0.0) s_view = std::min(s_view, (o - 1e-9) / -step);
    };
    clip(p0.x, seg.step_x, cam.width);
    clip(p0.y, seg.step_y, cam.height);
    const bool leaves_view = s_view < seg.length_steps;

    // Step 0 is the origin itself; comparison starts one stride out.
    double last_miss = 0.0;
    for (int i = 1; i <= cfg.max_steps; ++i) {
        double s = std::min(static_cast<double>(i), s_view);
        if (!(s > last_miss)) {
            hit.status = leaves_view ? Status::ExitedView : Status::ExhaustedSteps;
            return hit;
        }
        PixelCoord q = seg.at(s);
        if (!cam.inside(q)) {
            hit.status = Status::ExitedView;
            return hit;
        }
        hit.pixel = q;
        double surf = surface_depth(depth, q);
        double ray_z = seg.ray_depth(s);
        if (!is_valid_depth(surf) || ray_z < surf) {
            last_miss = s;
            continue;
        }

        // Crossing: bisect between the last confirmed miss and this step.
        double lo = last_miss, hi = s;
        for (int k = 0; k < cfg.refinement_steps; ++k) {
            double mid = 0.5 * (lo + hi);
            double sm = surface_depth(depth, seg.at(mid));
            if (is_valid_depth(sm) && seg.ray_depth(mid) >= sm)
                hi = mid;
            else
                lo = mid;
        }
        PixelCoord qh = seg.at(hi);
        double surf_h = surface_depth(depth, qh);
        hit.status = Status::Hit;
        hit.pixel = qh;
        hit.delta_d = std::abs(seg.ray_depth(hi) - surf_h);
        hit.u = uncertainty(hit.delta_d);
        hit.occluded = hit.delta_d > cfg.thickness;
        hit.point = unproject(cam, qh, surf_h);
        return hit;
    }
    hit.status = Status::ExhaustedSteps;
    return hit;
}

}  // namespace ssdr::ssrt
