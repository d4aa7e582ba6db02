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

#include "ssdr/ssdr.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "io/bundle.hpp"
#include "io/color.hpp"
#include "io/pfm.hpp"
#include "io/serialize.hpp"
#include "render/gradcheck.hpp"
#include "render/render.hpp"
#include "scenes/scenes.hpp"

struct ssdr_image {
    ssdr::ImageBuffer img;
};

struct ssdr_bundle {
    ssdr::io::Bundle bundle;
};

struct ssdr_light {
    std::unique_ptr<ssdr::lighting::LightField> field;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
ssdr_status guarded(F&& f) {
    try {
        f();
        g_last_error.clear();
        return SSDR_OK;
    } catch (const ssdr::ContractViolation& e) {
        g_last_error = e.what();
        return SSDR_E_CONTRACT;
    } catch (const ssdr::ConfigError& e) {
        g_last_error = e.what();
        return SSDR_E_CONFIG;
    } catch (const ssdr::ParseError& e) {
        g_last_error = e.what();
        return SSDR_E_PARSE;
    } catch (const ssdr::IoError& e) {
        g_last_error = e.what();
        return SSDR_E_IO;
    } catch (const ssdr::ValidationError& e) {
        g_last_error = e.what();
        return SSDR_E_VALIDATION;
    } catch (const ssdr::NumericalError& e) {
        g_last_error = e.what();
        return SSDR_E_NUMERICAL;
    } catch (const std::filesystem::filesystem_error& e) {
        g_last_error = e.what();
        return SSDR_E_IO;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return SSDR_E_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SSDR_E_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) throw ssdr::ContractViolation(std::string(what) + " must not be null");
}

ssdr::render::RenderConfig to_render_config(const ssdr_render_config* c) {
    ssdr::render::RenderConfig rc;
    if (!c) return rc;
    rc.spp = c->spp;
    rc.seed = c->seed;
    rc.pdf_floor = c->pdf_floor;
    if (c->clamp_max > 0.0) rc.clamp_max = c->clamp_max;
    rc.threads = c->threads;
    rc.lobes = c->diffuse_only ? ssdr::brdf::Lobes::DiffuseOnly : ssdr::brdf::Lobes::All;
    return rc;
}

ssdr_image* wrap(ssdr::ImageBuffer img) { return new ssdr_image{std::move(img)}; }

}  // namespace

extern "C" {

const char* ssdr_version(void) { return "0.1.0"; }

const char* ssdr_last_error(void) { return g_last_error.c_str(); }

const char* ssdr_status_name(ssdr_status status) {
    switch (status) {
        case SSDR_OK: return "ok";
        case SSDR_E_CONTRACT: return "contract violation";
        case SSDR_E_CONFIG: return "configuration error";
        case SSDR_E_PARSE: return "parse error";
        case SSDR_E_IO: return "i/o error";
        case SSDR_E_VALIDATION: return "validation error";
        case SSDR_E_NUMERICAL: return "numerical error";
        case SSDR_E_INTERNAL: return "internal error";
    }
    return "unknown";
}

ssdr_status ssdr_image_create(int width, int height, int channels, ssdr_image** out) {
    return guarded([&] {
        need(out, "out");
        if (width < 1 || height < 1 || channels < 1) throw ssdr::ConfigError("image dimensions must be positive");
        *out = wrap(ssdr::ImageBuffer(width, height, channels));
    });
}

void ssdr_image_free(ssdr_image* img) { delete img; }

ssdr_status ssdr_image_shape(const ssdr_image* img, int* width, int* height, int* channels) {
    return guarded([&] {
        need(img, "image");
        if (width) *width = img->img.width();
        if (height) *height = img->img.height();
        if (channels) *channels = img->img.channels();
    });
}

const double* ssdr_image_data(const ssdr_image* img) { return img ? img->img.data().data() : nullptr; }

double* ssdr_image_data_mut(ssdr_image* img) { return img ? img->img.data().data() : nullptr; }

ssdr_status ssdr_image_read_pfm(const char* path, ssdr_image** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = wrap(ssdr::io::read_pfm(path));
    });
}

ssdr_status ssdr_image_write_pfm(const ssdr_image* img, const char* path) {
    return guarded([&] {
        need(img, "image");
        need(path, "path");
        ssdr::io::write_pfm(path, img->img);
    });
}

ssdr_status ssdr_image_write_png(const ssdr_image* img, const char* path, double exposure) {
    return guarded([&] {
        need(img, "image");
        need(path, "path");
        ssdr::io::write_png_preview(path, img->img, exposure);
    });
}

ssdr_status ssdr_image_mse(const ssdr_image* a, const ssdr_image* b, double* out) {
    return guarded([&] {
        need(a, "a");
        need(b, "b");
        need(out, "out");
        *out = ssdr::mse(a->img, b->img);
    });
}

ssdr_status ssdr_image_mean_luminance(const ssdr_image* img, double* out) {
    return guarded([&] {
        need(img, "image");
        need(out, "out");
        *out = img->img.mean_luminance();
    });
}

ssdr_status ssdr_image_side_by_side(const ssdr_image* const* images, int count, ssdr_image** out) {
    return guarded([&] {
        need(images, "images");
        need(out, "out");
        std::vector<ssdr::ImageBuffer> list;
        for (int i = 0; i < count; ++i) {
            need(images[i], "image");
            list.push_back(images[i]->img);
        }
        *out = wrap(ssdr::io::side_by_side(list));
    });
}

ssdr_status ssdr_bundle_load(const char* dir, int repair, ssdr_bundle** out) {
    return guarded([&] {
        need(dir, "dir");
        need(out, "out");
        *out = new ssdr_bundle{ssdr::io::load_bundle(dir, repair != 0)};
    });
}

void ssdr_bundle_free(ssdr_bundle* bundle) { delete bundle; }

ssdr_status ssdr_bundle_shape(const ssdr_bundle* bundle, int* width, int* height) {
    return guarded([&] {
        need(bundle, "bundle");
        if (width) *width = bundle->bundle.gbuffer.width();
        if (height) *height = bundle->bundle.gbuffer.height();
    });
}

int ssdr_bundle_diffuse_only(const ssdr_bundle* bundle) {
    return bundle && bundle->bundle.manifest.diffuse_only ? 1 : 0;
}

const char* ssdr_bundle_default_lighting(const ssdr_bundle* bundle) {
    return bundle ? bundle->bundle.manifest.default_lighting.c_str() : "constant";
}

ssdr_status ssdr_bundle_target(const ssdr_bundle* bundle, ssdr_image** out) {
    return guarded([&] {
        need(bundle, "bundle");
        need(out, "out");
        const auto& b = bundle->bundle;
        if (!b.manifest.target) throw ssdr::ConfigError("bundle has no target image");
        *out = wrap(ssdr::io::read_pfm(b.dir / *b.manifest.target));
    });
}

ssdr_status ssdr_bundle_set_uniform(ssdr_bundle* bundle, const char* map, double value) {
    return guarded([&] {
        need(bundle, "bundle");
        need(map, "map");
        auto& g = bundle->bundle.gbuffer;
        const std::string name = map;
        ssdr::ImageBuffer* img = nullptr;
        if (name == "albedo") img = &g.albedo;
        else if (name == "roughness") img = &g.roughness;
        else if (name == "metallic") img = &g.metallic;
        else throw ssdr::ConfigError("unknown map '" + name + "' (expected albedo, roughness, metallic)");
        if (!(value >= 0.0 && value <= 1.0)) throw ssdr::ConfigError("uniform value must be in [0, 1]");
        for (int y = 0; y < g.height(); ++y)
            for (int x = 0; x < g.width(); ++x)
                if (g.has_geometry(x, y))
                    for (int c = 0; c < img->channels(); ++c) img->at(x, y, c) = value;
    });
}

ssdr_status ssdr_bundle_save(const ssdr_bundle* bundle, const char* dir) {
    return guarded([&] {
        need(bundle, "bundle");
        need(dir, "dir");
        const auto& b = bundle->bundle;
        ssdr::io::BundleManifest m;
        m.scene_scale = b.manifest.scene_scale;
        m.diffuse_only = b.manifest.diffuse_only;
        m.default_lighting = b.manifest.default_lighting;
        m.constant = b.manifest.constant;
        m.sky = b.manifest.sky;
        ssdr::io::save_bundle(dir, b.gbuffer, b.camera, m);
    });
}

ssdr_status ssdr_light_from_bundle(const ssdr_bundle* bundle, const char* kind, ssdr_light** out) {
    return guarded([&] {
        need(bundle, "bundle");
        need(out, "out");
        const std::string k = kind ? kind : bundle->bundle.manifest.default_lighting;
        *out = new ssdr_light{ssdr::io::make_lighting(bundle->bundle, ssdr::io::parse_lighting_kind(k))};
    });
}

ssdr_status ssdr_light_constant(double r, double g, double b, ssdr_light** out) {
    return guarded([&] {
        need(out, "out");
        *out = new ssdr_light{std::make_unique<ssdr::lighting::ConstantLight>(ssdr::Spectrum{r, g, b})};
    });
}

void ssdr_light_free(ssdr_light* light) { delete light; }

size_t ssdr_light_parameter_count(const ssdr_light* light) { return light ? light->field->parameter_count() : 0; }

void ssdr_render_config_init(ssdr_render_config* cfg) {
    if (!cfg) return;
    const ssdr::render::RenderConfig d;
    cfg->spp = d.spp;
    cfg->seed = d.seed;
    cfg->pdf_floor = d.pdf_floor;
    cfg->clamp_max = 0.0;
    cfg->threads = d.threads;
    cfg->diffuse_only = 0;
}

ssdr_status ssdr_render(const ssdr_bundle* bundle, const ssdr_light* light, const ssdr_render_config* cfg,
                        ssdr_image** out) {
    return guarded([&] {
        need(bundle, "bundle");
        need(light, "light");
        need(out, "out");
        const auto& b = bundle->bundle;
        *out = wrap(ssdr::render::render_mc(b.gbuffer, b.camera, *light->field, to_render_config(cfg)));
    });
}

ssdr_status ssdr_render_discretized(const ssdr_bundle* bundle, const ssdr_light* light, int n_theta, int n_phi,
                                    int diffuse_only, int threads, ssdr_image** out) {
    return guarded([&] {
        need(bundle, "bundle");
        need(light, "light");
        need(out, "out");
        const auto& b = bundle->bundle;
        const auto lobes = diffuse_only ? ssdr::brdf::Lobes::DiffuseOnly : ssdr::brdf::Lobes::All;
        *out = wrap(ssdr::render::render_discretized(b.gbuffer, b.camera, *light->field, {n_theta, n_phi}, lobes,
                                                     threads));
    });
}

ssdr_status ssdr_render_reference(const ssdr_bundle* bundle, const ssdr_light* light, long nodes, int diffuse_only,
                                  int threads, ssdr_image** out) {
    return guarded([&] {
        need(bundle, "bundle");
        need(light, "light");
        need(out, "out");
        if (nodes < 8) throw ssdr::ConfigError("reference needs at least 8 nodes per pixel");
        const auto& b = bundle->bundle;
        ssdr::render::ReferenceConfig rc;
        rc.nodes = nodes;
        rc.lobes = diffuse_only ? ssdr::brdf::Lobes::DiffuseOnly : ssdr::brdf::Lobes::All;
        rc.threads = threads;
        *out = wrap(ssdr::render::render_reference(b.gbuffer, b.camera, *light->field, rc));
    });
}

void ssdr_gradcheck_config_init(ssdr_gradcheck_config* cfg) {
    if (!cfg) return;
    const ssdr::render::GradcheckConfig d;
    cfg->patch = d.patch;
    cfg->step = d.step;
    cfg->tolerance = d.tolerance;
    ssdr_render_config_init(&cfg->render);
    cfg->render.spp = d.render.spp;
}

ssdr_status ssdr_gradcheck(const ssdr_bundle* bundle, const ssdr_light* light, const char* params,
                           const ssdr_gradcheck_config* cfg, ssdr_gradcheck_entry* entries, int capacity, int* count,
                           int* pass) {
    return guarded([&] {
        need(bundle, "bundle");
        need(light, "light");
        need(params, "params");
        const auto set = ssdr::inverse::ParamSet::parse(params);
        ssdr::render::GradcheckConfig gc;
        if (cfg) {
            gc.patch = cfg->patch;
            gc.step = cfg->step;
            gc.tolerance = cfg->tolerance;
            gc.render = to_render_config(&cfg->render);
        }
        const auto& b = bundle->bundle;
        const auto report = ssdr::render::gradcheck(b.gbuffer, b.camera, *light->field, set, gc);
        const int n = static_cast<int>(report.entries.size());
        if (count) *count = n;
        if (pass) *pass = report.pass ? 1 : 0;
        for (int i = 0; entries && i < std::min(n, capacity); ++i) {
            const auto& e = report.entries[i];
            ssdr_gradcheck_entry& o = entries[i];
            std::memset(o.name, 0, sizeof o.name);
            std::strncpy(o.name, e.name.c_str(), sizeof o.name - 1);
            o.max_rel_err = e.max_rel_err;
            o.max_abs_err = e.max_abs_err;
            o.compared = e.compared;
            o.pass = e.pass ? 1 : 0;
        }
    });
}

void ssdr_scene_options_init(ssdr_scene_options* opts) {
    if (!opts) return;
    const ssdr::scenes::SceneOptions d;
    opts->width = d.width;
    opts->height = d.height;
    opts->reference = d.reference ? 1 : 0;
    opts->reference_nodes = d.reference_nodes;
    opts->learned_assets = d.learned_assets ? 1 : 0;
    opts->seed = d.seed;
    opts->threads = d.threads;
}

ssdr_status ssdr_make_scene(const char* kind, const char* dir, const ssdr_scene_options* opts) {
    return guarded([&] {
        need(kind, "kind");
        need(dir, "dir");
        ssdr::scenes::SceneOptions so;
        if (opts) {
            so.width = opts->width;
            so.height = opts->height;
            so.reference = opts->reference != 0;
            so.reference_nodes = opts->reference_nodes;
            so.learned_assets = opts->learned_assets != 0;
            so.seed = opts->seed;
            so.threads = opts->threads;
        }
        if (so.reference && so.reference_nodes < 8) throw ssdr::ConfigError("reference needs at least 8 nodes per pixel");
        const auto scene = ssdr::scenes::make_scene(ssdr::scenes::parse_scene_kind(kind), so);
        ssdr::scenes::write_scene(dir, scene);
    });
}

void ssdr_optimize_config_init(ssdr_optimize_config* cfg) {
    if (!cfg) return;
    const ssdr::inverse::LossConfig d;
    cfg->iterations = d.iterations;
    cfg->learning_rate = d.learning_rate;
    cfg->final_lr_ratio = d.final_lr_ratio;
    cfg->lambda_r = d.lambda_r;
    cfg->shared = d.shared ? 1 : 0;
    cfg->resample = d.resample ? 1 : 0;
    ssdr_render_config_init(&cfg->render);
}

ssdr_status ssdr_optimize(ssdr_bundle* bundle, ssdr_light* light, const ssdr_image* target, const char* params,
                          const ssdr_optimize_config* cfg, const char* trace_csv, ssdr_optimize_summary* summary) {
    return guarded([&] {
        need(bundle, "bundle");
        need(light, "light");
        need(target, "target");
        need(params, "params");
        ssdr::inverse::LossConfig lc;
        lc.params = ssdr::inverse::ParamSet::parse(params);
        if (cfg) {
            lc.iterations = cfg->iterations;
            lc.learning_rate = cfg->learning_rate;
            lc.final_lr_ratio = cfg->final_lr_ratio;
            lc.lambda_r = cfg->lambda_r;
            lc.shared = cfg->shared != 0;
            lc.resample = cfg->resample != 0;
            lc.render = to_render_config(&cfg->render);
            lc.render.pdf_gradient = false;
        }
        auto& b = bundle->bundle;
        auto result = ssdr::inverse::optimize(b.gbuffer, b.camera, *light->field, target->img, lc);
        if (trace_csv) ssdr::io::write_trace_csv(trace_csv, result.trace);
        b.gbuffer = std::move(result.gbuffer);
        light->field = std::move(result.light);
        if (summary) {
            summary->initial_loss = result.trace.front().loss;
            summary->final_loss = result.trace.back().loss;
            summary->mean_albedo = result.trace.back().mean_albedo;
            summary->mean_roughness = result.trace.back().mean_roughness;
            summary->mean_metallic = result.trace.back().mean_metallic;
        }
    });
}

}  // extern "C"
