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

#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "ssdr/ssdr.h"

namespace fs = std::filesystem;

namespace {

class CapiScene : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        dir = fs::temp_directory_path() / "ssdr_capi_scene";
        fs::remove_all(dir);
        ssdr_scene_options o;
        ssdr_scene_options_init(&o);
        o.width = o.height = 16;
        o.reference_nodes = 4096;
        ASSERT_EQ(ssdr_make_scene("glossy-floor", dir.c_str(), &o), SSDR_OK) << ssdr_last_error();
    }
    static void TearDownTestSuite() { fs::remove_all(dir); }

    void SetUp() override {
        ASSERT_EQ(ssdr_bundle_load(dir.c_str(), 0, &bundle), SSDR_OK) << ssdr_last_error();
        ASSERT_EQ(ssdr_light_from_bundle(bundle, ssdr_bundle_default_lighting(bundle), &light), SSDR_OK);
    }
    void TearDown() override {
        ssdr_light_free(light);
        ssdr_bundle_free(bundle);
    }

    static fs::path dir;
    ssdr_bundle* bundle = nullptr;
    ssdr_light* light = nullptr;
};

fs::path CapiScene::dir;

}  // namespace

TEST(Capi, StatusNamesAndVersion) {
    EXPECT_STREQ(ssdr_status_name(SSDR_OK), "ok");
    EXPECT_NE(std::string(ssdr_version()), "");
}

TEST(Capi, ImageLifecycle) {
    ssdr_image* img = nullptr;
    ASSERT_EQ(ssdr_image_create(3, 2, 3, &img), SSDR_OK);
    int w = 0, h = 0, c = 0;
    ASSERT_EQ(ssdr_image_shape(img, &w, &h, &c), SSDR_OK);
    EXPECT_EQ(w * 10 + h, 32);
    EXPECT_EQ(c, 3);
    double* d = ssdr_image_data_mut(img);
    for (int i = 0; i < 18; ++i) d[i] = 0.5;
    double lum = 0.0;
    ASSERT_EQ(ssdr_image_mean_luminance(img, &lum), SSDR_OK);
    EXPECT_NEAR(lum, 0.5, 1e-12);
    double mse = -1.0;
    ASSERT_EQ(ssdr_image_mse(img, img, &mse), SSDR_OK);
    EXPECT_EQ(mse, 0.0);
    ssdr_image_free(img);
    ssdr_image_free(nullptr);
}

TEST(Capi, ErrorsAreReportedNotThrown) {
    ssdr_image* img = nullptr;
    EXPECT_EQ(ssdr_image_create(0, 2, 3, &img), SSDR_E_CONFIG);
    EXPECT_EQ(img, nullptr);
    EXPECT_NE(std::string(ssdr_last_error()), "");
    EXPECT_EQ(ssdr_image_read_pfm("/nonexistent/x.pfm", &img), SSDR_E_IO);
    EXPECT_EQ(ssdr_image_shape(nullptr, nullptr, nullptr, nullptr), SSDR_E_CONTRACT);
    ssdr_bundle* b = nullptr;
    EXPECT_NE(ssdr_bundle_load("/nonexistent", 0, &b), SSDR_OK);
    EXPECT_EQ(b, nullptr);
}

TEST(Capi, MissingMapIsValidationError) {
    const fs::path dir = fs::temp_directory_path() / "ssdr_capi_missing";
    fs::remove_all(dir);
    ssdr_scene_options o;
    ssdr_scene_options_init(&o);
    o.width = o.height = 4;
    o.reference = 0;
    o.learned_assets = 0;
    ASSERT_EQ(ssdr_make_scene("two-plane", dir.c_str(), &o), SSDR_OK);
    fs::remove(dir / "depth.pfm");
    ssdr_bundle* b = nullptr;
    EXPECT_EQ(ssdr_bundle_load(dir.c_str(), 0, &b), SSDR_E_VALIDATION);
    EXPECT_NE(std::string(ssdr_last_error()).find("missing map"), std::string::npos);
    fs::remove_all(dir);
}

TEST_F(CapiScene, RenderIsDeterministicAndThreadIndependent) {
    ssdr_render_config cfg;
    ssdr_render_config_init(&cfg);
    cfg.spp = 4;
    cfg.seed = 11;
    cfg.threads = 1;
    ssdr_image *a = nullptr, *b = nullptr;
    ASSERT_EQ(ssdr_render(bundle, light, &cfg, &a), SSDR_OK) << ssdr_last_error();
    cfg.threads = 16;
    ASSERT_EQ(ssdr_render(bundle, light, &cfg, &b), SSDR_OK);
    EXPECT_EQ(std::memcmp(ssdr_image_data(a), ssdr_image_data(b), sizeof(double) * 16 * 16 * 3), 0);
    ssdr_image_free(a);
    ssdr_image_free(b);
}

TEST_F(CapiScene, InvalidRenderConfigRejected) {
    ssdr_render_config cfg;
    ssdr_render_config_init(&cfg);
    cfg.spp = 0;
    ssdr_image* img = nullptr;
    EXPECT_EQ(ssdr_render(bundle, light, &cfg, &img), SSDR_E_CONFIG);
    EXPECT_EQ(ssdr_render_discretized(bundle, light, 1, 1, 0, 1, &img), SSDR_E_CONTRACT);
}

TEST_F(CapiScene, TargetAndBaselines) {
    ssdr_image *target = nullptr, *disc = nullptr, *ref = nullptr;
    ASSERT_EQ(ssdr_bundle_target(bundle, &target), SSDR_OK);
    ASSERT_EQ(ssdr_render_discretized(bundle, light, 16, 32, 0, 0, &disc), SSDR_OK);
    ASSERT_EQ(ssdr_render_reference(bundle, light, 4096, 0, 0, &ref), SSDR_OK);
    double mse = 1.0;
    ASSERT_EQ(ssdr_image_mse(target, ref, &mse), SSDR_OK);
    EXPECT_LT(mse, 1e-12);  // stored target is the f32-rounded reference
    const ssdr_image* pair[] = {target, disc};
    ssdr_image* side = nullptr;
    ASSERT_EQ(ssdr_image_side_by_side(pair, 2, &side), SSDR_OK);
    int w = 0, h = 0, c = 0;
    ssdr_image_shape(side, &w, &h, &c);
    EXPECT_EQ(w, 32);
    for (ssdr_image* i : {target, disc, ref, side}) ssdr_image_free(i);
}

TEST_F(CapiScene, GradcheckPassesAndZeroToleranceFails) {
    ssdr_gradcheck_config cfg;
    ssdr_gradcheck_config_init(&cfg);
    ssdr_gradcheck_entry entries[8];
    int count = 0, pass = 0;
    ASSERT_EQ(ssdr_gradcheck(bundle, light, "a,r,m,n", &cfg, entries, 8, &count, &pass), SSDR_OK)
        << ssdr_last_error();
    EXPECT_EQ(count, 4);
    EXPECT_EQ(pass, 1);
    for (int i = 0; i < count; ++i) EXPECT_LE(entries[i].max_rel_err, 1e-4) << entries[i].name;
    cfg.tolerance = 0.0;
    ASSERT_EQ(ssdr_gradcheck(bundle, light, "a", &cfg, entries, 8, &count, &pass), SSDR_OK);
    EXPECT_EQ(pass, 0);
    EXPECT_EQ(ssdr_gradcheck(bundle, light, "a,zz", &cfg, entries, 8, &count, &pass), SSDR_E_CONFIG);
}

TEST_F(CapiScene, OptimizeReducesLoss) {
    ssdr_image* target = nullptr;
    ssdr_render_config rc;
    ssdr_render_config_init(&rc);
    rc.spp = 64;
    ASSERT_EQ(ssdr_render(bundle, light, &rc, &target), SSDR_OK);
    ASSERT_EQ(ssdr_bundle_set_uniform(bundle, "roughness", 0.4), SSDR_OK);
    EXPECT_EQ(ssdr_bundle_set_uniform(bundle, "depth", 0.4), SSDR_E_CONFIG);
    ssdr_optimize_config cfg;
    ssdr_optimize_config_init(&cfg);
    cfg.iterations = 60;
    cfg.shared = 1;
    cfg.render = rc;
    ssdr_optimize_summary sum{};
    const fs::path csv = fs::temp_directory_path() / "ssdr_capi_trace.csv";
    ASSERT_EQ(ssdr_optimize(bundle, light, target, "r", &cfg, csv.c_str(), &sum), SSDR_OK) << ssdr_last_error();
    EXPECT_LT(sum.final_loss, sum.initial_loss);
    EXPECT_TRUE(fs::exists(csv));
    fs::remove(csv);
    ssdr_image_free(target);
}
