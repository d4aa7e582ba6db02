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

#include "inverse/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "brdf/ggx.hpp"
#include "core/error.hpp"
#include "core/log.hpp"
#include "inverse/adam.hpp"
#include "inverse/loss.hpp"

namespace ssdr::inverse {

ParamSet ParamSet::parse(const std::string& list) {
    ParamSet p;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "a") p.albedo = true;
        else if (item == "r") p.roughness = true;
        else if (item == "m") p.metallic = true;
        else if (item == "n") p.normal = true;
        else if (item == "light") p.light = true;
        else throw ConfigError("unknown parameter name: '" + item + "' (expected a, r, m, n, light)");
    }
    if (!p.any()) throw ConfigError("empty parameter selection");
    return p;
}

std::string ParamSet::to_string() const {
    std::string s;
    auto add = [&](bool on, const char* name) {
        if (!on) return;
        if (!s.empty()) s += ',';
        s += name;
    };
    add(albedo, "a");
    add(roughness, "r");
    add(metallic, "m");
    add(normal, "n");
    add(light, "light");
    return s;
}

void LossConfig::validate() const {
    if (!(lambda_r >= 0.0)) throw ConfigError("lambda_r must be >= 0");
    if (iterations < 0) throw ConfigError("iterations must be >= 0");
    if (!(learning_rate >= 0.0)) throw ConfigError("learning rate must be >= 0");
    if (!(final_lr_ratio > 0.0)) throw ConfigError("final_lr_ratio must be > 0");
    render.validate();
}

namespace {

struct PixelRef {
    int x, y;
};

// Flat view of the optimized quantities: [albedo][roughness][metallic][normal][light],
// each present only when selected; per-pixel blocks hold one entry per
// geometry pixel, shared blocks one entry in total.
class ParamPacker {
public:
    ParamPacker(const GBuffer& g, const lighting::LightField& light, const LossConfig& cfg) : cfg_(cfg) {
        for (int y = 0; y < g.height(); ++y)
            for (int x = 0; x < g.width(); ++x)
                if (g.has_geometry(x, y)) pixels_.push_back({x, y});
        slots_ = cfg.shared ? 1 : pixels_.size();
        light_count_ = cfg.params.light ? light.parameter_count() : 0;
    }

    std::size_t size() const {
        std::size_t n = 0;
        if (cfg_.params.albedo) n += 3 * slots_;
        if (cfg_.params.roughness) n += slots_;
        if (cfg_.params.metallic) n += slots_;
        if (cfg_.params.normal) n += 3 * slots_;
        return n + light_count_;
    }

    const std::vector<PixelRef>& pixels() const { return pixels_; }

    std::vector<double> pack(const GBuffer& g, const lighting::LightField& light) const {
        std::vector<double> out;
        out.reserve(size());
        auto block = [&](const ImageBuffer& img, int channels) {
            if (cfg_.shared) {
                for (int c = 0; c < channels; ++c) {
                    double sum = 0.0;
                    for (const auto& p : pixels_) sum += img.at(p.x, p.y, c);
                    out.push_back(pixels_.empty() ? 0.0 : sum / pixels_.size());
                }
            } else {
                for (const auto& p : pixels_)
                    for (int c = 0; c < channels; ++c) out.push_back(img.at(p.x, p.y, c));
            }
        };
        if (cfg_.params.albedo) block(g.albedo, 3);
        if (cfg_.params.roughness) block(g.roughness, 1);
        if (cfg_.params.metallic) block(g.metallic, 1);
        if (cfg_.params.normal) block(g.normal, 3);
        if (light_count_) {
            const auto lp = light.parameters();
            out.insert(out.end(), lp.begin(), lp.end());
        }
        return out;
    }

    std::vector<double> gather(const render::GradientImage& grad) const {
        std::vector<double> out;
        out.reserve(size());
        auto block = [&](const ImageBuffer& img, int channels) {
            if (cfg_.shared) {
                for (int c = 0; c < channels; ++c) {
                    double sum = 0.0;
                    for (const auto& p : pixels_) sum += img.at(p.x, p.y, c);
                    out.push_back(sum);
                }
            } else {
                for (const auto& p : pixels_)
                    for (int c = 0; c < channels; ++c) out.push_back(img.at(p.x, p.y, c));
            }
        };
        if (cfg_.params.albedo) block(grad.d_albedo, 3);
        if (cfg_.params.roughness) block(grad.d_roughness, 1);
        if (cfg_.params.metallic) block(grad.d_metallic, 1);
        if (cfg_.params.normal) block(grad.d_normal, 3);
        if (light_count_) out.insert(out.end(), grad.d_light.begin(), grad.d_light.end());
        return out;
    }

    // Clamps theta to valid ranges and writes it back into g and light.
    void project_and_unpack(std::vector<double>& theta, GBuffer& g, lighting::LightField& light) const {
        std::size_t off = 0;
        auto scalar_block = [&](ImageBuffer& img, int channels, double lo, double hi) {
            for (std::size_t s = 0; s < slots_; ++s)
                for (int c = 0; c < channels; ++c) {
                    double& v = theta[off + s * channels + c];
                    v = std::clamp(v, lo, hi);
                }
            write(img, channels, theta, off);
            off += slots_ * channels;
        };
        if (cfg_.params.albedo) scalar_block(g.albedo, 3, 0.0, 1.0);
        if (cfg_.params.roughness) scalar_block(g.roughness, 1, brdf::kMinRoughness, 1.0);
        if (cfg_.params.metallic) scalar_block(g.metallic, 1, 0.0, 1.0);
        if (cfg_.params.normal) {
            for (std::size_t s = 0; s < slots_; ++s) {
                double* n = &theta[off + 3 * s];
                Vec3 v{n[0], n[1], n[2]};
                const double len = length(v);
                v = len > 0.0 ? v / len : Vec3{0.0, 0.0, -1.0};
                n[0] = v.x;
                n[1] = v.y;
                n[2] = v.z;
            }
            write(g.normal, 3, theta, off);
            off += 3 * slots_;
        }
        if (light_count_) {
            for (std::size_t i = 0; i < light_count_; ++i) theta[off + i] = light.project_parameter(i, theta[off + i]);
            light.set_parameters(std::span<const double>(theta).subspan(off, light_count_));
        }
    }

private:
    void write(ImageBuffer& img, int channels, const std::vector<double>& theta, std::size_t off) const {
        for (std::size_t i = 0; i < pixels_.size(); ++i) {
            const std::size_t s = cfg_.shared ? 0 : i;
            for (int c = 0; c < channels; ++c) img.at(pixels_[i].x, pixels_[i].y, c) = theta[off + s * channels + c];
        }
    }

    const LossConfig& cfg_;
    std::vector<PixelRef> pixels_;
    std::size_t slots_ = 0;
    std::size_t light_count_ = 0;
};

double map_mean(const ImageBuffer& img, const std::vector<PixelRef>& pixels) {
    if (pixels.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& p : pixels)
        for (int c = 0; c < img.channels(); ++c) sum += img.at(p.x, p.y, c);
    return sum / (static_cast<double>(pixels.size()) * img.channels());
}

TraceRow make_row(int iteration, double loss, const GBuffer& g, const lighting::LightField& light,
                  const std::vector<PixelRef>& pixels) {
    TraceRow row;
    row.iteration = iteration;
    row.loss = loss;
    row.mean_albedo = map_mean(g.albedo, pixels);
    row.mean_roughness = map_mean(g.roughness, pixels);
    row.mean_metallic = map_mean(g.metallic, pixels);
    const auto lp = light.parameters();
    if (!lp.empty()) {
        double sum = 0.0;
        for (double v : lp) sum += v;
        row.mean_light = sum / static_cast<double>(lp.size());
    }
    return row;
}

}  // namespace

OptimizeResult optimize(const GBuffer& init, const Camera& cam, const lighting::LightField& light,
                        const ImageBuffer& target, const LossConfig& cfg) {
    cfg.validate();
    init.check_shapes();
    if (target.width() != init.width() || target.height() != init.height() || target.channels() != 3)
        throw ConfigError("optimize: target must be a 3-channel image matching the G-buffer");
    if (!target.all_finite()) throw ValidationError("optimize: target image is not finite");

    OptimizeResult result;
    result.gbuffer = init;
    result.light = light.clone();
    GBuffer& g = result.gbuffer;
    lighting::LightField& field = *result.light;

    const ParamPacker packer(g, field, cfg);
    ImageBuffer mask(g.width(), g.height(), 1);
    for (const auto& p : packer.pixels()) mask.at(p.x, p.y) = 1.0;

    std::vector<double> theta = packer.pack(g, field);
    Adam adam(theta.size());

    render::RenderConfig rc = cfg.render;
    rc.light_gradient = cfg.params.light;

    auto evaluate = [&](int it) {
        rc.seed = cfg.render.seed + (cfg.resample ? static_cast<std::uint64_t>(it) : 0);
        const ImageBuffer img = render::render_mc(g, cam, field, rc);
        ImageLoss loss = loss_rerender(img, target, &mask);
        loss.value *= cfg.lambda_r;
        for (double& a : loss.adjoint.data()) a *= cfg.lambda_r;
        if (!std::isfinite(loss.value)) {
            std::ostringstream os;
            os << "optimize: loss is not finite at iteration " << it;
            throw NumericalError(os.str());
        }
        return loss;
    };

    for (int it = 0; it < cfg.iterations; ++it) {
        const ImageLoss loss = evaluate(it);
        result.trace.push_back(make_row(it, loss.value, g, field, packer.pixels()));
        log().debug("optimize: iteration {} loss {:.6e}", it, loss.value);
        if (theta.empty()) continue;

        const render::GradientImage grad = render::render_backward(g, cam, field, rc, loss.adjoint);
        const std::vector<double> dtheta = packer.gather(grad);
        const double t = cfg.iterations > 1 ? static_cast<double>(it) / (cfg.iterations - 1) : 0.0;
        const double lr = cfg.learning_rate * std::pow(cfg.final_lr_ratio, t);
        adam.step(theta, dtheta, lr);
        packer.project_and_unpack(theta, g, field);
    }

    const ImageLoss final_loss = evaluate(cfg.iterations);
    result.trace.push_back(make_row(cfg.iterations, final_loss.value, g, field, packer.pixels()));
    return result;
}

}  // namespace ssdr::inverse
