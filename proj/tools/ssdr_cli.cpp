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

// ssdr command-line tool. Talks to the library only through the C API.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ssdr/ssdr.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitInput = 2;

// Thrown to unwind with a specific exit code after the message is printed.
struct Exit {
    int code;
};

int exit_code(ssdr_status s) {
    switch (s) {
        case SSDR_OK: return kExitOk;
        case SSDR_E_NUMERICAL:
        case SSDR_E_INTERNAL: return kExitNumerical;
        default: return kExitInput;
    }
}

void check(ssdr_status s, const char* what) {
    if (s == SSDR_OK) return;
    std::cerr << "ssdr: " << what << ": " << ssdr_status_name(s) << ": " << ssdr_last_error() << "\n";
    throw Exit{exit_code(s)};
}

struct ImageDel {
    void operator()(ssdr_image* p) const { ssdr_image_free(p); }
};
struct BundleDel {
    void operator()(ssdr_bundle* p) const { ssdr_bundle_free(p); }
};
struct LightDel {
    void operator()(ssdr_light* p) const { ssdr_light_free(p); }
};
using Image = std::unique_ptr<ssdr_image, ImageDel>;
using Bundle = std::unique_ptr<ssdr_bundle, BundleDel>;
using Light = std::unique_ptr<ssdr_light, LightDel>;

Bundle load_bundle(const std::string& dir, bool repair) {
    ssdr_bundle* b = nullptr;
    check(ssdr_bundle_load(dir.c_str(), repair ? 1 : 0, &b), "loading bundle");
    return Bundle(b);
}

Light load_light(const ssdr_bundle* b, const std::string& kind) {
    ssdr_light* l = nullptr;
    check(ssdr_light_from_bundle(b, kind.empty() ? nullptr : kind.c_str(), &l), "creating lighting");
    return Light(l);
}

void write_image(const ssdr_image* img, const fs::path& pfm, double exposure) {
    check(ssdr_image_write_pfm(img, pfm.string().c_str()), "writing PFM");
    fs::path png = pfm;
    png.replace_extension(".png");
    check(ssdr_image_write_png(img, png.string().c_str(), exposure), "writing PNG");
}

void make_out_dir(const std::string& out) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) {
        std::cerr << "ssdr: cannot create output directory " << out << ": " << ec.message() << "\n";
        throw Exit{kExitInput};
    }
}

std::pair<int, int> parse_size(const std::string& s, const char* flag) {
    int a = 0, b = 0;
    char x = 0, extra = 0;
    if (std::sscanf(s.c_str(), "%d%c%d%c", &a, &x, &b, &extra) != 3 || (x != 'x' && x != 'X') || a < 1 || b < 1) {
        std::cerr << "ssdr: " << flag << " expects WxH, got '" << s << "'\n";
        throw Exit{kExitInput};
    }
    return {a, b};
}

struct Common {
    std::string bundle;
    std::string out = "out";
    std::string lighting;
    int spp = 64;
    std::uint64_t seed = 0;
    int threads = 0;
    bool repair = false;
    double exposure = 1.0;

    ssdr_render_config render_config() const {
        ssdr_render_config rc;
        ssdr_render_config_init(&rc);
        rc.spp = spp;
        rc.seed = seed;
        rc.threads = threads;
        return rc;
    }
};

void add_common(CLI::App* cmd, Common& c, bool needs_bundle = true) {
    auto* b = cmd->add_option("--bundle", c.bundle, "G-buffer bundle directory");
    if (needs_bundle) b->required();
    cmd->add_option("--out", c.out, "output directory")->capture_default_str();
    cmd->add_option("--lighting", c.lighting, "constant | sky | grid | learned (default: bundle's choice)")
        ->check(CLI::IsMember({"constant", "sky", "grid", "learned"}));
    cmd->add_option("--spp", c.spp, "samples per pixel")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed, "random seed")->capture_default_str();
    cmd->add_option("--threads", c.threads, "worker threads, 0 = all cores")->capture_default_str()->check(
        CLI::NonNegativeNumber);
    cmd->add_flag("--repair", c.repair, "normalize normals and clamp maps instead of rejecting the bundle");
    cmd->add_option("--exposure", c.exposure, "PNG preview exposure")->capture_default_str();
}

int cmd_render(const Common& c, double clamp_max) {
    const Bundle bundle = load_bundle(c.bundle, c.repair);
    const Light light = load_light(bundle.get(), c.lighting);
    ssdr_render_config rc = c.render_config();
    rc.diffuse_only = ssdr_bundle_diffuse_only(bundle.get());
    rc.clamp_max = clamp_max;

    const auto t0 = std::chrono::steady_clock::now();
    ssdr_image* raw = nullptr;
    check(ssdr_render(bundle.get(), light.get(), &rc, &raw), "rendering");
    const Image img(raw);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    make_out_dir(c.out);
    write_image(img.get(), fs::path(c.out) / "rerender.pfm", c.exposure);
    double lum = 0.0;
    check(ssdr_image_mean_luminance(img.get(), &lum), "statistics");
    int w = 0, h = 0;
    ssdr_image_shape(img.get(), &w, &h, nullptr);
    const nlohmann::json stats = {{"time_seconds", seconds},
                                  {"spp", c.spp},
                                  {"seed", c.seed},
                                  {"width", w},
                                  {"height", h},
                                  {"lighting", c.lighting.empty() ? ssdr_bundle_default_lighting(bundle.get()) : c.lighting},
                                  {"mean_luminance", lum}};
    std::ofstream(fs::path(c.out) / "stats.json") << stats.dump(2) << "\n";
    std::cout << "mean luminance " << lum << " (" << seconds << " s)\n";
    return kExitOk;
}

int cmd_gradcheck(const Common& c, const std::string& params, double tol, int patch, double step) {
    const Bundle bundle = load_bundle(c.bundle, c.repair);
    const Light light = load_light(bundle.get(), c.lighting);
    ssdr_gradcheck_config gc;
    ssdr_gradcheck_config_init(&gc);
    gc.tolerance = tol;
    gc.patch = patch;
    gc.step = step;
    gc.render = c.render_config();
    gc.render.diffuse_only = ssdr_bundle_diffuse_only(bundle.get());

    ssdr_gradcheck_entry entries[8];
    int count = 0, pass = 0;
    check(ssdr_gradcheck(bundle.get(), light.get(), params.c_str(), &gc, entries, 8, &count, &pass), "gradcheck");

    std::string csv = "param,max_rel_err,max_abs_err,compared,pass\n";
    for (int i = 0; i < count; ++i) {
        const auto& e = entries[i];
        std::printf("%-6s max rel err %.3e  max abs err %.3e  (%zu values)  %s\n", e.name, e.max_rel_err,
                    e.max_abs_err, e.compared, e.pass ? "PASS" : "FAIL");
        char line[512];
        std::snprintf(line, sizeof line, "%s,%.9g,%.9g,%zu,%d\n", e.name, e.max_rel_err, e.max_abs_err, e.compared,
                      e.pass);
        csv += line;
    }
    if (!c.out.empty()) {
        make_out_dir(c.out);
        std::ofstream(fs::path(c.out) / "gradcheck.csv") << csv;
    }
    std::printf("gradcheck %s (tolerance %.3g)\n", pass ? "PASS" : "FAIL", tol);
    return pass ? kExitOk : kExitNumerical;
}

int cmd_make_scene(const std::string& kind, const std::string& out, const std::string& size, long nodes,
                   bool no_reference, bool no_learned, std::uint64_t seed, int threads) {
    ssdr_scene_options so;
    ssdr_scene_options_init(&so);
    const auto [w, h] = parse_size(size, "--size");
    so.width = w;
    so.height = h;
    so.reference = no_reference ? 0 : 1;
    so.reference_nodes = nodes;
    so.learned_assets = no_learned ? 0 : 1;
    so.seed = seed;
    so.threads = threads;
    check(ssdr_make_scene(kind.c_str(), out.c_str(), &so), "making scene");
    std::cout << "wrote " << kind << " bundle to " << out << "\n";
    return kExitOk;
}

int cmd_baseline_compare(const Common& c, const std::string& grid, long nodes, bool force_diffuse) {
    const Bundle bundle = load_bundle(c.bundle, c.repair);
    const Light light = load_light(bundle.get(), c.lighting);
    const auto [nt, np] = parse_size(grid, "--grid");
    const bool bundle_diffuse = ssdr_bundle_diffuse_only(bundle.get()) != 0;
    const int diffuse = (force_diffuse || bundle_diffuse) ? 1 : 0;

    ssdr_render_config rc = c.render_config();
    rc.diffuse_only = diffuse;
    ssdr_image* raw = nullptr;
    check(ssdr_render(bundle.get(), light.get(), &rc, &raw), "rendering Monte Carlo image");
    const Image mc(raw);
    check(ssdr_render_discretized(bundle.get(), light.get(), nt, np, diffuse, c.threads, &raw),
          "rendering discretized image");
    const Image disc(raw);

    // The stored reference is reused only when it matches the requested setup.
    const bool default_light = c.lighting.empty() || c.lighting == ssdr_bundle_default_lighting(bundle.get());
    Image ref;
    if (default_light && diffuse == int(bundle_diffuse) && ssdr_bundle_target(bundle.get(), &raw) == SSDR_OK) {
        ref.reset(raw);
    } else {
        check(ssdr_render_reference(bundle.get(), light.get(), nodes, diffuse, c.threads, &raw),
              "rendering reference image");
        ref.reset(raw);
    }

    double mse_mc = 0.0, mse_disc = 0.0, ref_lum = 0.0;
    check(ssdr_image_mse(mc.get(), ref.get(), &mse_mc), "comparing");
    check(ssdr_image_mse(disc.get(), ref.get(), &mse_disc), "comparing");
    check(ssdr_image_mean_luminance(ref.get(), &ref_lum), "statistics");
    double lum_mc = 0.0, lum_disc = 0.0;
    ssdr_image_mean_luminance(mc.get(), &lum_mc);
    ssdr_image_mean_luminance(disc.get(), &lum_disc);

    make_out_dir(c.out);
    const fs::path out(c.out);
    write_image(mc.get(), out / "mc.pfm", c.exposure);
    write_image(disc.get(), out / "discretized.pfm", c.exposure);
    write_image(ref.get(), out / "reference.pfm", c.exposure);
    const ssdr_image* row[] = {ref.get(), mc.get(), disc.get()};
    check(ssdr_image_side_by_side(row, 3, &raw), "composing");
    const Image sbs(raw);
    check(ssdr_image_write_png(sbs.get(), (out / "side_by_side.png").string().c_str(), c.exposure), "writing PNG");

    std::ofstream csv(out / "errors.csv");
    csv << "method,setting,mse,mean_luminance,relative_mean_error\n";
    auto rel = [&](double l) { return ref_lum > 0.0 ? (l - ref_lum) / ref_lum : 0.0; };
    char line[256];
    std::snprintf(line, sizeof line, "mc,spp=%d,%.9g,%.9g,%.9g\n", c.spp, mse_mc, lum_mc, rel(lum_mc));
    csv << line;
    std::snprintf(line, sizeof line, "discretized,grid=%dx%d,%.9g,%.9g,%.9g\n", nt, np, mse_disc, lum_disc,
                  rel(lum_disc));
    csv << line;
    std::printf("reference mean luminance %.6g\n", ref_lum);
    std::printf("mc (spp %d)          mse %.6e  mean lum %.6g\n", c.spp, mse_mc, lum_mc);
    std::printf("discretized (%dx%d)   mse %.6e  mean lum %.6g\n", nt, np, mse_disc, lum_disc);
    return kExitOk;
}

struct OptimizeFlags {
    std::string target;
    std::string params = "a";
    int iters = 200;
    double lr = 0.05;
    double final_lr_ratio = 0.1;
    bool shared = false;
    bool resample = false;
    std::optional<double> init_albedo, init_roughness, init_metallic;
};

int cmd_optimize(const Common& c, const OptimizeFlags& f) {
    const Bundle bundle = load_bundle(c.bundle, c.repair);
    const Light light = load_light(bundle.get(), c.lighting);
    ssdr_image* raw = nullptr;
    if (f.target.empty()) check(ssdr_bundle_target(bundle.get(), &raw), "loading target");
    else check(ssdr_image_read_pfm(f.target.c_str(), &raw), "loading target");
    const Image target(raw);

    if (f.init_albedo) check(ssdr_bundle_set_uniform(bundle.get(), "albedo", *f.init_albedo), "--init-albedo");
    if (f.init_roughness) check(ssdr_bundle_set_uniform(bundle.get(), "roughness", *f.init_roughness), "--init-roughness");
    if (f.init_metallic) check(ssdr_bundle_set_uniform(bundle.get(), "metallic", *f.init_metallic), "--init-metallic");

    ssdr_optimize_config oc;
    ssdr_optimize_config_init(&oc);
    oc.iterations = f.iters;
    oc.learning_rate = f.lr;
    oc.final_lr_ratio = f.final_lr_ratio;
    oc.shared = f.shared ? 1 : 0;
    oc.resample = f.resample ? 1 : 0;
    oc.render = c.render_config();
    oc.render.diffuse_only = ssdr_bundle_diffuse_only(bundle.get());

    make_out_dir(c.out);
    const fs::path out(c.out);
    ssdr_optimize_summary summary{};
    check(ssdr_optimize(bundle.get(), light.get(), target.get(), f.params.c_str(), &oc,
                        (out / "loss.csv").string().c_str(), &summary),
          "optimizing");
    check(ssdr_bundle_save(bundle.get(), (out / "recovered").string().c_str()), "saving recovered bundle");

    check(ssdr_render(bundle.get(), light.get(), &oc.render, &raw), "rendering result");
    const Image img(raw);
    write_image(img.get(), out / "rerender.pfm", c.exposure);

    std::printf("loss %.6e -> %.6e\n", summary.initial_loss, summary.final_loss);
    std::printf("mean albedo %.6f  roughness %.6f  metallic %.6f\n", summary.mean_albedo, summary.mean_roughness,
                summary.mean_metallic);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ssdr: differentiable screen-space Monte Carlo re-rendering"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ssdr_version());

    Common render_c, grad_c, base_c, opt_c;
    double clamp_max = 0.0;
    auto* render = app.add_subcommand("render", "re-render a bundle under a light field");
    add_common(render, render_c);
    render->add_option("--clamp", clamp_max, "clamp pixel values (preview only, <= 0 disables)");

    std::string params = "a,r,m,n";
    double tol = 1e-4, step = 1e-6;
    int patch = 8;
    auto* grad = app.add_subcommand("gradcheck", "compare adjoints with finite differences on a patch");
    grad_c.out.clear();
    add_common(grad, grad_c);
    grad->add_option("--params", params, "comma-separated subset of a,r,m,n,light")->capture_default_str();
    grad->add_option("--tol", tol, "maximum relative error")->capture_default_str();
    grad->add_option("--patch", patch, "patch side in pixels")->capture_default_str()->check(CLI::PositiveNumber);
    grad->add_option("--step", step, "finite-difference half step")->capture_default_str();

    std::string kind, scene_out = "scene", size = "32x32";
    long nodes = 1'000'000;
    bool no_reference = false, no_learned = false;
    std::uint64_t scene_seed = 0;
    int scene_threads = 0;
    auto* make = app.add_subcommand("make-scene", "write an analytic test scene bundle");
    make->add_option("kind", kind, "cornell-like | two-plane | glossy-floor")
        ->required()
        ->check(CLI::IsMember({"cornell-like", "two-plane", "glossy-floor"}));
    make->add_option("--out", scene_out, "bundle directory")->capture_default_str();
    make->add_option("--size", size, "image size WxH")->capture_default_str();
    make->add_option("--ref-nodes", nodes, "quadrature nodes per pixel for the reference")->capture_default_str();
    make->add_flag("--no-reference", no_reference, "skip the reference image");
    make->add_flag("--no-learned", no_learned, "skip the learned-lighting assets");
    make->add_option("--seed", scene_seed, "seed of the learned assets")->capture_default_str();
    make->add_option("--threads", scene_threads, "worker threads, 0 = all cores")->capture_default_str();

    std::string grid = "16x32";
    long base_nodes = 1'000'000;
    bool force_diffuse = false;
    auto* base = app.add_subcommand("baseline-compare", "Monte Carlo vs discretized quadrature vs reference");
    base_c.spp = 256;
    add_common(base, base_c);
    base->add_option("--grid", grid, "discretized grid THETAxPHI")->capture_default_str();
    base->add_option("--ref-nodes", base_nodes, "reference quadrature nodes per pixel")->capture_default_str();
    base->add_flag("--diffuse", force_diffuse, "restrict the BRDF to its diffuse lobe");

    OptimizeFlags of;
    auto* opt = app.add_subcommand("optimize", "recover materials or lighting from a target image");
    opt_c.spp = 16;
    add_common(opt, opt_c);
    opt->add_option("--target", of.target, "target PFM (default: the bundle's target)");
    opt->add_option("--params", of.params, "comma-separated subset of a,r,m,n,light")->capture_default_str();
    opt->add_option("--iters", of.iters, "iterations")->capture_default_str()->check(CLI::NonNegativeNumber);
    opt->add_option("--lr", of.lr, "initial step size")->capture_default_str();
    opt->add_option("--final-lr-ratio", of.final_lr_ratio, "final / initial step size")->capture_default_str();
    opt->add_flag("--shared", of.shared, "one value per map instead of per pixel");
    opt->add_flag("--resample", of.resample, "fresh samples every iteration");
    opt->add_option("--init-albedo", of.init_albedo, "initialize albedo to a constant");
    opt->add_option("--init-roughness", of.init_roughness, "initialize roughness to a constant");
    opt->add_option("--init-metallic", of.init_metallic, "initialize metallic to a constant");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*render) return cmd_render(render_c, clamp_max);
        if (*grad) return cmd_gradcheck(grad_c, params, tol, patch, step);
        if (*make) return cmd_make_scene(kind, scene_out, size, nodes, no_reference, no_learned, scene_seed, scene_threads);
        if (*base) return cmd_baseline_compare(base_c, grid, base_nodes, force_diffuse);
        if (*opt) return cmd_optimize(opt_c, of);
    } catch (const Exit& e) {
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "ssdr: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitInput;
}
