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

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

#include "core/gbuffer.hpp"
#include "io/bundle.hpp"
#include "io/pfm.hpp"

namespace fs = std::filesystem;
using namespace ssdr;

namespace {

struct RunResult {
    int code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(SSDR_CLI_PATH) + " " + args + " 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf;
    while (std::fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// method -> (mse, relative_mean_error) from errors.csv
std::map<std::string, std::pair<double, double>> read_errors(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    std::map<std::string, std::pair<double, double>> out;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string method, setting, mse, lum, rel;
        std::getline(ss, method, ',');
        std::getline(ss, setting, ',');
        std::getline(ss, mse, ',');
        std::getline(ss, lum, ',');
        std::getline(ss, rel, ',');
        out[method] = {std::stod(mse), std::stod(rel)};
    }
    return out;
}

class Cli : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        root = fs::temp_directory_path() / "ssdr_cli_test";
        fs::remove_all(root);
        fs::create_directories(root);

        Camera cam;
        cam.width = cam.height = 16;
        cam.fx = cam.fy = 12.5;
        cam.cx = cam.cy = 8.0;
        io::BundleManifest m;
        m.diffuse_only = true;
        m.constant = Spectrum(1.0);
        io::save_bundle(root / "lambert", make_uniform_gbuffer(16, 16, {0.5, 0.5, 0.5}, {0, 0, -1}, 2.0, 1.0, 0.0),
                        cam, m);

        ASSERT_EQ(run("make-scene cornell-like --out " + (root / "cornell").string() +
                      " --size 16x16 --ref-nodes 100000 --no-learned")
                      .code,
                  0);
        ASSERT_EQ(run("make-scene glossy-floor --out " + (root / "glossy").string() +
                      " --size 16x16 --ref-nodes 200000 --no-learned")
                      .code,
                  0);
    }
    static void TearDownTestSuite() { fs::remove_all(root); }

    static fs::path root;
};

fs::path Cli::root;

}  // namespace

TEST_F(Cli, HelpAndUsageErrors) {
    EXPECT_EQ(run("--help").code, 0);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("render --bundle " + (root / "lambert").string() + " --spp 0").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
}

TEST_F(Cli, RenderLambertianMeanLuminance) {
    const fs::path out = root / "r_lambert";
    const RunResult r = run("render --bundle " + (root / "lambert").string() + " --lighting constant --spp 64 --out " +
                            out.string());
    ASSERT_EQ(r.code, 0) << r.output;
    const auto stats = nlohmann::json::parse(slurp(out / "stats.json"));
    EXPECT_NEAR(stats["mean_luminance"].get<double>(), 0.5, 1e-3);
    EXPECT_EQ(stats["spp"].get<int>(), 64);
    EXPECT_TRUE(fs::exists(out / "rerender.png"));
    EXPECT_NEAR(io::read_pfm(out / "rerender.pfm").mean(), 0.5, 1e-3);
}

TEST_F(Cli, RenderSameSeedSameBytes) {
    const std::string b = " --bundle " + (root / "glossy").string() + " --spp 1 --seed 5 --out ";
    ASSERT_EQ(run("render" + b + (root / "s1").string()).code, 0);
    ASSERT_EQ(run("render" + b + (root / "s2").string() + " --threads 4").code, 0);
    EXPECT_EQ(slurp(root / "s1" / "rerender.pfm"), slurp(root / "s2" / "rerender.pfm"));
    ASSERT_EQ(run("render --bundle " + (root / "glossy").string() + " --spp 1 --seed 6 --out " + (root / "s3").string())
                  .code,
              0);
    EXPECT_NE(slurp(root / "s1" / "rerender.pfm"), slurp(root / "s3" / "rerender.pfm"));
}

TEST_F(Cli, MissingDepthMapExitsWithTwo) {
    const fs::path broken = root / "broken";
    fs::copy(root / "lambert", broken, fs::copy_options::recursive);
    fs::remove(broken / "depth.pfm");
    const RunResult r = run("render --bundle " + broken.string() + " --out " + (root / "rb").string());
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.output.find("missing map"), std::string::npos) << r.output;
}

TEST_F(Cli, GradcheckExitCodes) {
    const std::string b = "gradcheck --bundle " + (root / "glossy").string();
    const RunResult ok = run(b + " --params a,r,m,n,light --tol 1e-4 --out " + (root / "gc").string());
    EXPECT_EQ(ok.code, 0) << ok.output;
    EXPECT_TRUE(fs::exists(root / "gc" / "gradcheck.csv"));
    EXPECT_EQ(run(b + " --params a --tol 0").code, 1);
    EXPECT_EQ(run(b + " --params a,q").code, 2);
}

TEST_F(Cli, BaselineGlossyFavoursMonteCarlo) {
    const fs::path out = root / "bc_glossy";
    ASSERT_EQ(run("baseline-compare --bundle " + (root / "glossy").string() + " --spp 256 --out " + out.string()).code,
              0);
    const auto e = read_errors(out / "errors.csv");
    EXPECT_LT(e.at("mc").first, e.at("discretized").first);
    EXPECT_TRUE(fs::exists(out / "side_by_side.png"));
}

TEST_F(Cli, BaselineLambertianBothWithinOnePercent) {
    const fs::path out = root / "bc_cornell";
    ASSERT_EQ(run("baseline-compare --bundle " + (root / "cornell").string() + " --spp 256 --out " + out.string()).code,
              0);
    const auto e = read_errors(out / "errors.csv");
    EXPECT_LT(std::abs(e.at("mc").second), 0.01);
    EXPECT_LT(std::abs(e.at("discretized").second), 0.01);
}

TEST_F(Cli, BaselineDiffuseDenseGridAgrees) {
    const fs::path out = root / "bc_diffuse";
    ASSERT_EQ(run("baseline-compare --bundle " + (root / "glossy").string() +
                  " --spp 256 --diffuse --grid 64x128 --ref-nodes 200000 --out " + out.string())
                  .code,
              0);
    const ImageBuffer mc = io::read_pfm(out / "mc.pfm");
    const ImageBuffer disc = io::read_pfm(out / "discretized.pfm");
    const ImageBuffer ref = io::read_pfm(out / "reference.pfm");
    const double ratio = mse(mc, disc) / mse(mc, ref);
    EXPECT_GT(ratio, 0.5);
    EXPECT_LT(ratio, 2.0);
}

TEST_F(Cli, OptimizeRecoversAlbedo) {
    const fs::path target_dir = root / "t_lambert";
    ASSERT_EQ(run("render --bundle " + (root / "lambert").string() + " --lighting constant --spp 4 --out " +
                  target_dir.string())
                  .code,
              0);
    const fs::path out = root / "opt";
    const RunResult r = run("optimize --bundle " + (root / "lambert").string() + " --lighting constant --target " +
                            (target_dir / "rerender.pfm").string() +
                            " --params a --init-albedo 0.2 --iters 200 --spp 4 --out " + out.string());
    ASSERT_EQ(r.code, 0) << r.output;
    const io::Bundle rec = io::load_bundle(out / "recovered");
    for (double v : rec.gbuffer.albedo.data()) EXPECT_NEAR(v, 0.5, 0.02);
    EXPECT_TRUE(fs::exists(out / "loss.csv"));
    EXPECT_TRUE(fs::exists(out / "rerender.pfm"));
}
