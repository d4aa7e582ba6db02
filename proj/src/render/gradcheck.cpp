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

#include "render/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace ssdr::render {

namespace {

ImageBuffer crop(const ImageBuffer& img, int x0, int y0, int w, int h) {
    ImageBuffer out(w, h, img.channels());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < img.channels(); ++c) out.at(x, y, c) = img.at(x0 + x, y0 + y, c);
    return out;
}

class Comparer {
public:
    Comparer(std::string name, const GradcheckConfig& cfg) : cfg_(cfg) { entry_.name = std::move(name); }

    void add(double fd, double adjoint) {
        if (std::abs(fd) < cfg_.abs_floor && std::abs(adjoint) < cfg_.abs_floor) return;
        const double abs_err = std::abs(fd - adjoint);
        const double rel_err = abs_err / std::max(std::abs(fd), std::abs(adjoint));
        entry_.max_abs_err = std::max(entry_.max_abs_err, abs_err);
        entry_.max_rel_err = std::max(entry_.max_rel_err, rel_err);
        ++entry_.compared;
    }

    GradcheckEntry finish() {
        // With nothing above the floor both sides are zero, which agrees.
        entry_.pass = entry_.max_rel_err <= cfg_.tolerance;
        return entry_;
    }

private:
    const GradcheckConfig& cfg_;
    GradcheckEntry entry_;
};

}  // namespace

GradcheckReport gradcheck(const GBuffer& full, const Camera& full_cam, const lighting::LightField& light,
                          const inverse::ParamSet& params, const GradcheckConfig& cfg) {
    if (!params.any()) throw ConfigError("gradcheck: no parameters selected");
    if (cfg.patch < 1 || !(cfg.step > 0.0)) throw ConfigError("gradcheck: bad patch size or step");
    full.check_shapes();

    const int pw = std::min(cfg.patch, full.width()), ph = std::min(cfg.patch, full.height());
    // Patch around the principal point, so the cropped camera stays valid.
    const int x0 = std::clamp(static_cast<int>(full_cam.cx) - pw / 2, 0, full.width() - pw);
    const int y0 = std::clamp(static_cast<int>(full_cam.cy) - ph / 2, 0, full.height() - ph);
    GBuffer g;
    g.albedo = crop(full.albedo, x0, y0, pw, ph);
    g.normal = crop(full.normal, x0, y0, pw, ph);
    g.depth = crop(full.depth, x0, y0, pw, ph);
    g.roughness = crop(full.roughness, x0, y0, pw, ph);
    g.metallic = crop(full.metallic, x0, y0, pw, ph);
    Camera cam = full_cam;
    cam.cx -= x0;
    cam.cy -= y0;
    cam.width = pw;
    cam.height = ph;

    RenderConfig rc = cfg.render;
    rc.pdf_gradient = true;
    rc.light_gradient = params.light;
    rc.clamp_max.reset();

    // Random projection J = sum w * I with a fixed seed.
    ImageBuffer weights(pw, ph, 3);
    {
        Sampler rng(rc.seed ^ 0x67636b, 0, 0);
        for (double& v : weights.data()) v = 2.0 * rng.next1d() - 1.0;
    }
    const GradientImage grad = render_backward(g, cam, light, rc, weights);

    // Pixels are independent, so perturbing one component at every pixel at
    // once gives every per-pixel derivative from a single pair of renders.
    auto map_check = [&](const char* name, ImageBuffer GBuffer::*map, const ImageBuffer& adjoint) {
        Comparer cmp(name, cfg);
        const int channels = (g.*map).channels();
        for (int c = 0; c < channels; ++c) {
            GBuffer plus = g, minus = g;
            for (int y = 0; y < ph; ++y)
                for (int x = 0; x < pw; ++x) {
                    (plus.*map).at(x, y, c) += cfg.step;
                    (minus.*map).at(x, y, c) -= cfg.step;
                }
            const ImageBuffer ip = render_mc_frozen(plus, g, cam, light, rc);
            const ImageBuffer im = render_mc_frozen(minus, g, cam, light, rc);
            for (int y = 0; y < ph; ++y)
                for (int x = 0; x < pw; ++x) {
                    double fd = 0.0;
                    for (int k = 0; k < 3; ++k) fd += weights.at(x, y, k) * (ip.at(x, y, k) - im.at(x, y, k));
                    cmp.add(fd / (2.0 * cfg.step), adjoint.at(x, y, c));
                }
        }
        return cmp.finish();
    };

    GradcheckReport report;
    if (params.albedo) report.entries.push_back(map_check("a", &GBuffer::albedo, grad.d_albedo));
    if (params.roughness) report.entries.push_back(map_check("r", &GBuffer::roughness, grad.d_roughness));
    if (params.metallic) report.entries.push_back(map_check("m", &GBuffer::metallic, grad.d_metallic));
    if (params.normal) report.entries.push_back(map_check("n", &GBuffer::normal, grad.d_normal));
    if (params.light) {
        Comparer cmp("light", cfg);
        const std::size_t n = light.parameter_count();
        if (n == 0) throw ConfigError("gradcheck: the selected lighting has no parameters");
        const std::size_t checked = std::min(n, std::max<std::size_t>(cfg.max_light_params, 1));
        const std::vector<double> base = light.parameters();
        auto projected = [&](const ImageBuffer& img) {
            double j = 0.0;
            for (std::size_t i = 0; i < img.data().size(); ++i) j += weights.data()[i] * img.data()[i];
            return j;
        };
        for (std::size_t k = 0; k < checked; ++k) {
            const std::size_t i = k * n / checked;
            auto plus = light.clone(), minus = light.clone();
            std::vector<double> p = base;
            p[i] = base[i] + cfg.step;
            plus->set_parameters(p);
            p[i] = base[i] - cfg.step;
            minus->set_parameters(p);
            const double fd = (projected(render_mc(g, cam, *plus, rc)) - projected(render_mc(g, cam, *minus, rc))) /
                              (2.0 * cfg.step);
            cmp.add(fd, grad.d_light[i]);
        }
        report.entries.push_back(cmp.finish());
    }
    report.pass = std::all_of(report.entries.begin(), report.entries.end(), [](const auto& e) { return e.pass; });
    return report;
}

}  // namespace ssdr::render
