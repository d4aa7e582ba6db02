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

#ifndef SSDR_SSDR_H
#define SSDR_SSDR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef SSDR_BUILDING_LIBRARY
#    define SSDR_API __declspec(dllexport)
#  else
#    define SSDR_API __declspec(dllimport)
#  endif
#else
#  define SSDR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ssdr_status {
    SSDR_OK = 0,
    SSDR_E_CONTRACT = 1,   /* precondition violated */
    SSDR_E_CONFIG = 2,     /* bad option or shape mismatch */
    SSDR_E_PARSE = 3,      /* malformed file */
    SSDR_E_IO = 4,         /* missing or unwritable file */
    SSDR_E_VALIDATION = 5, /* invalid scene data */
    SSDR_E_NUMERICAL = 6,  /* NaN/Inf during computation */
    SSDR_E_INTERNAL = 7
} ssdr_status;

typedef struct ssdr_image ssdr_image;
typedef struct ssdr_bundle ssdr_bundle;
typedef struct ssdr_light ssdr_light;

SSDR_API const char* ssdr_version(void);
/* Message of the last failed call on this thread. */
SSDR_API const char* ssdr_last_error(void);
SSDR_API const char* ssdr_status_name(ssdr_status status);

/* Images: row-major, top-down, double precision. */
SSDR_API ssdr_status ssdr_image_create(int width, int height, int channels, ssdr_image** out);
SSDR_API void ssdr_image_free(ssdr_image* img);
SSDR_API ssdr_status ssdr_image_shape(const ssdr_image* img, int* width, int* height, int* channels);
SSDR_API const double* ssdr_image_data(const ssdr_image* img);
SSDR_API double* ssdr_image_data_mut(ssdr_image* img);
SSDR_API ssdr_status ssdr_image_read_pfm(const char* path, ssdr_image** out);
SSDR_API ssdr_status ssdr_image_write_pfm(const ssdr_image* img, const char* path);
SSDR_API ssdr_status ssdr_image_write_png(const ssdr_image* img, const char* path, double exposure);
SSDR_API ssdr_status ssdr_image_mse(const ssdr_image* a, const ssdr_image* b, double* out);
SSDR_API ssdr_status ssdr_image_mean_luminance(const ssdr_image* img, double* out);
SSDR_API ssdr_status ssdr_image_side_by_side(const ssdr_image* const* images, int count, ssdr_image** out);

/* G-buffer bundles (directory with five PFM maps and camera.json). */
SSDR_API ssdr_status ssdr_bundle_load(const char* dir, int repair, ssdr_bundle** out);
SSDR_API void ssdr_bundle_free(ssdr_bundle* bundle);
SSDR_API ssdr_status ssdr_bundle_shape(const ssdr_bundle* bundle, int* width, int* height);
SSDR_API int ssdr_bundle_diffuse_only(const ssdr_bundle* bundle);
SSDR_API const char* ssdr_bundle_default_lighting(const ssdr_bundle* bundle);
/* Target/reference image named by the manifest; SSDR_E_CONFIG if none. */
SSDR_API ssdr_status ssdr_bundle_target(const ssdr_bundle* bundle, ssdr_image** out);
/* Sets "albedo", "roughness" or "metallic" to a constant on geometry pixels. */
SSDR_API ssdr_status ssdr_bundle_set_uniform(ssdr_bundle* bundle, const char* map, double value);
SSDR_API ssdr_status ssdr_bundle_save(const ssdr_bundle* bundle, const char* dir);

/* Light fields. kind: "constant", "sky", "grid" or "learned". */
SSDR_API ssdr_status ssdr_light_from_bundle(const ssdr_bundle* bundle, const char* kind, ssdr_light** out);
SSDR_API ssdr_status ssdr_light_constant(double r, double g, double b, ssdr_light** out);
SSDR_API void ssdr_light_free(ssdr_light* light);
SSDR_API size_t ssdr_light_parameter_count(const ssdr_light* light);

typedef struct ssdr_render_config {
    int spp;
    uint64_t seed;
    double pdf_floor;
    double clamp_max; /* <= 0 disables the preview clamp */
    int threads;      /* 0 = all cores; never changes results */
    int diffuse_only;
} ssdr_render_config;

SSDR_API void ssdr_render_config_init(ssdr_render_config* cfg);
SSDR_API ssdr_status ssdr_render(const ssdr_bundle* bundle, const ssdr_light* light, const ssdr_render_config* cfg,
                                 ssdr_image** out);
SSDR_API ssdr_status ssdr_render_discretized(const ssdr_bundle* bundle, const ssdr_light* light, int n_theta,
                                             int n_phi, int diffuse_only, int threads, ssdr_image** out);
SSDR_API ssdr_status ssdr_render_reference(const ssdr_bundle* bundle, const ssdr_light* light, long nodes,
                                           int diffuse_only, int threads, ssdr_image** out);

typedef struct ssdr_gradcheck_config {
    int patch;
    double step;
    double tolerance;
    ssdr_render_config render;
} ssdr_gradcheck_config;

typedef struct ssdr_gradcheck_entry {
    char name[8];
    double max_rel_err;
    double max_abs_err;
    size_t compared;
    int pass;
} ssdr_gradcheck_entry;

SSDR_API void ssdr_gradcheck_config_init(ssdr_gradcheck_config* cfg);
/* params: comma-separated subset of a, r, m, n, light. */
SSDR_API ssdr_status ssdr_gradcheck(const ssdr_bundle* bundle, const ssdr_light* light, const char* params,
                                    const ssdr_gradcheck_config* cfg, ssdr_gradcheck_entry* entries, int capacity,
                                    int* count, int* pass);

typedef struct ssdr_scene_options {
    int width;
    int height;
    int reference;
    long reference_nodes;
    int learned_assets;
    uint64_t seed;
    int threads;
} ssdr_scene_options;

SSDR_API void ssdr_scene_options_init(ssdr_scene_options* opts);
/* kind: "cornell-like", "two-plane" or "glossy-floor". */
SSDR_API ssdr_status ssdr_make_scene(const char* kind, const char* dir, const ssdr_scene_options* opts);

typedef struct ssdr_optimize_config {
    int iterations;
    double learning_rate;
    double final_lr_ratio;
    double lambda_r;
    int shared;
    int resample;
    ssdr_render_config render;
} ssdr_optimize_config;

typedef struct ssdr_optimize_summary {
    double initial_loss;
    double final_loss;
    double mean_albedo;
    double mean_roughness;
    double mean_metallic;
} ssdr_optimize_summary;

SSDR_API void ssdr_optimize_config_init(ssdr_optimize_config* cfg);
/* Fits the selected parameters of `bundle` (updated in place) and `light` to
   `target`. When trace_csv is non-null the loss trace is written there. */
SSDR_API ssdr_status ssdr_optimize(ssdr_bundle* bundle, ssdr_light* light, const ssdr_image* target,
                                   const char* params, const ssdr_optimize_config* cfg, const char* trace_csv,
                                   ssdr_optimize_summary* summary);

#ifdef __cplusplus
}
#endif

#endif /* SSDR_SSDR_H */
