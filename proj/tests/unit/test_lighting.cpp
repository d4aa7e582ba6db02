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

#include <cmath>
#include <numbers>
#include <vector>

#include "core/error.hpp"
#include "core/gbuffer.hpp"
#include "core/sampler.hpp"
#include "inverse/adam.hpp"
#include "lighting/analytic.hpp"
#include "lighting/lightnet.hpp"
#include "lighting/posenc.hpp"
#include "nn/mlp.hpp"

using namespace ssdr;
using namespace ssdr::lighting;

namespace {

constexpr double kPi = std::numbers::pi;

Vec3 random_direction(Sampler& rng) {
    const double z = 2.0 * rng.next1d() - 1.0, phi = 2.0 * kPi * rng.next1d();
    const double r = std::sqrt(1.0 - z * z);
    return {r * std::cos(phi), r * std::sin(phi), z};
}

// A 16x16 fronto-parallel wall at depth 2 with random features.
struct WallFixture {
    Camera camera;
    GBuffer gbuffer;
    FeatureGrid features;
    LightNetConfig config;

    explicit WallFixture(int channels = 4) {
        camera.width = camera.height = 16;
        camera.fx = camera.fy = 12.0;
        camera.cx = camera.cy = 8.0;
        gbuffer = make_uniform_gbuffer(16, 16, {0.6, 0.4, 0.2}, {0.0, 0.0, -1.0}, 2.0, 0.5, 0.25);
        ImageBuffer f(16, 16, channels);
        Sampler rng(31, 0, 0);
        for (double& v : f.data()) v = rng.next1d() - 0.5;
        features = FeatureGrid(std::move(f));
    }

    nn::MlpWeights decoder(std::vector<std::size_t> hidden) const {
        std::vector<std::size_t> dims{lightnet_input_dim(features.channels(), config)};
        dims.insert(dims.end(), hidden.begin(), hidden.end());
        dims.push_back(3);
        return nn::MlpWeights(dims);
    }

    LightNetInputs inputs(const nn::MlpWeights& w) const { return {features, gbuffer, camera, w, config}; }

    // A point in front of the wall and a direction toward it.
    std::pair<Vec3, Vec3> random_query(Sampler& rng) const {
        const Vec3 p = unproject(camera, {2.0 + 12.0 * rng.next1d(), 2.0 + 12.0 * rng.next1d()}, 1.0);
        const Vec3 d = normalize(Vec3{0.4 * (rng.next1d() - 0.5), 0.4 * (rng.next1d() - 0.5), 1.0});
        return {p, d};
    }
};

}  // namespace

TEST(Posenc, ZeroInputTwoBands) {
    const double x[1] = {0.0};
    const std::vector<double> e = posenc(x, {2, true});
    ASSERT_EQ(e.size(), 5u);
    const double want[5] = {0.0, 0.0, 1.0, 0.0, 1.0};
    for (int i = 0; i < 5; ++i) EXPECT_EQ(e[i], want[i]);
}

TEST(Posenc, HalfInputFirstBand) {
    const double x[1] = {0.5};
    const std::vector<double> e = posenc(x, {3, false});
    EXPECT_NEAR(e[0], 1.0, 1e-15);
    EXPECT_NEAR(e[1], 0.0, 1e-15);
}

TEST(Posenc, ComponentMajorLayoutAndDimension) {
    const double x[3] = {0.1, -0.7, 2.3};
    const PosEncConfig cfg{6, true};
    EXPECT_EQ(cfg.output_dim(3), 39u);
    const std::vector<double> e = posenc(x, cfg);
    ASSERT_EQ(e.size(), 39u);
    for (int c = 0; c < 3; ++c) {
        EXPECT_EQ(e[c * 13], x[c]);
        for (int l = 0; l < 6; ++l) {
            const double w = std::ldexp(kPi, l) * x[c];
            EXPECT_NEAR(e[c * 13 + 1 + 2 * l], std::sin(w), 1e-12);
            EXPECT_NEAR(e[c * 13 + 2 + 2 * l], std::cos(w), 1e-12);
        }
    }
}

TEST(Posenc, InjectiveOnUnitInterval) {
    Sampler rng(32, 0, 0);
    for (int bands : {1, 2, 6}) {
        const PosEncConfig cfg{bands, false};
        for (int i = 0; i < 20000; ++i) {
            const double a[1] = {rng.next1d()}, b[1] = {rng.next1d()};
            if (std::abs(a[0] - b[0]) < 1e-6) continue;
            const auto ea = posenc(a, cfg), eb = posenc(b, cfg);
            double dist = 0.0;
            for (std::size_t k = 0; k < ea.size(); ++k) dist += (ea[k] - eb[k]) * (ea[k] - eb[k]);
            EXPECT_GT(dist, 0.0);
        }
    }
}

TEST(Posenc, BackwardMatchesFiniteDifferences) {
    const double x[3] = {0.3, -0.2, 0.9};
    const PosEncConfig cfg{4, true};
    const std::size_t n = cfg.output_dim(3);
    std::vector<double> dout(n);
    Sampler rng(33, 0, 0);
    for (double& v : dout) v = rng.next1d() - 0.5;
    const auto grad = posenc_backward(x, cfg, dout);
    for (int c = 0; c < 3; ++c) {
        const double h = 1e-6;
        double xp[3] = {x[0], x[1], x[2]}, xm[3] = {x[0], x[1], x[2]};
        xp[c] += h;
        xm[c] -= h;
        const auto ep = posenc(xp, cfg), em = posenc(xm, cfg);
        double fd = 0.0;
        for (std::size_t k = 0; k < n; ++k) fd += dout[k] * (ep[k] - em[k]) / (2 * h);
        EXPECT_NEAR(grad[c], fd, 1e-7 * std::max(1.0, std::abs(fd)));
    }
}

TEST(AnalyticLight, ConstantEverywhere) {
    const ConstantLight light({2.0, 2.0, 2.0});
    Sampler rng(34, 0, 0);
    for (int i = 0; i < 100; ++i) {
        const LightQuery q = light.query({rng.next1d(), -3.0, 7.0}, random_direction(rng), rng);
        EXPECT_EQ(q.radiance.r, 2.0);
        EXPECT_EQ(q.radiance.g, 2.0);
        EXPECT_EQ(q.radiance.b, 2.0);
        EXPECT_EQ(q.confidence, 1.0);
    }
}

TEST(AnalyticLight, SkyZenithIsZenithColor) {
    SkyParams p;
    p.zenith = {0.9, 0.8, 0.7};
    p.horizon = {0.1, 0.2, 0.3};
    const SkyLight sky(p);
    const Spectrum z = sky.radiance(p.up);
    EXPECT_EQ(z.r, 0.9);
    EXPECT_EQ(z.g, 0.8);
    EXPECT_EQ(z.b, 0.7);
    const Spectrum h = sky.radiance({1.0, 0.0, 0.0});
    EXPECT_EQ(h.r, 0.1);
    EXPECT_EQ(h.b, 0.3);
}

TEST(AnalyticLight, GridNodeReturnsStoredValue) {
    GridSpec spec;
    spec.dims = {2, 2, 2, 4, 8};
    std::vector<double> data(2 * 2 * 2 * 4 * 8 * 3, 0.0);
    const std::size_t cell = ((((1 * 2 + 0) * 2 + 1) * 4 + 2) * 8 + 5) * 3;
    data[cell] = 1.0;
    const GridLight grid(spec, data);
    Sampler rng(35, 0, 0);
    const Spectrum L = grid.query(grid.node_position(1, 0, 1), grid.node_direction(2, 5), rng).radiance;
    EXPECT_NEAR(L.r, 1.0, 1e-12);
    EXPECT_NEAR(L.g, 0.0, 1e-12);
    EXPECT_NEAR(L.b, 0.0, 1e-12);
}

TEST(AnalyticLight, GridReproducesAffineFieldsInPosition) {
    GridSpec spec;
    spec.dims = {3, 4, 5, 2, 4};
    spec.bounds_min = {-1.0, 0.0, 2.0};
    spec.bounds_max = {2.0, 1.0, 6.0};
    std::vector<double> data;
    GridLight probe(spec, std::vector<double>(3 * 4 * 5 * 2 * 4 * 3, 0.0));
    auto field = [](const Vec3& p) { return 0.5 + 0.2 * p.x - 0.3 * p.y + 0.1 * p.z; };
    for (int ix = 0; ix < 3; ++ix)
        for (int iy = 0; iy < 4; ++iy)
            for (int iz = 0; iz < 5; ++iz)
                for (int k = 0; k < 2 * 4 * 3; ++k) data.push_back(field(probe.node_position(ix, iy, iz)));
    const GridLight grid(spec, data);
    Sampler rng(36, 0, 0);
    const Vec3 lo = grid.node_position(0, 0, 0), hi = grid.node_position(2, 3, 4);
    for (int i = 0; i < 500; ++i) {
        const Vec3 p{lo.x + (hi.x - lo.x) * rng.next1d(), lo.y + (hi.y - lo.y) * rng.next1d(),
                     lo.z + (hi.z - lo.z) * rng.next1d()};
        EXPECT_NEAR(grid.query(p, random_direction(rng), rng).radiance.g, field(p), 1e-12);
    }
}

TEST(AnalyticLight, ParameterGradientsMatchFiniteDifferences) {
    SkyParams sp;
    sp.sun = {5.0, 4.0, 3.0};
    sp.sun_direction = normalize(Vec3{0.2, -0.5, 0.8});
    sp.sun_sharpness = 20.0;
    std::vector<std::unique_ptr<LightField>> lights;
    lights.push_back(std::make_unique<ConstantLight>(Spectrum{0.3, 0.6, 0.9}));
    lights.push_back(std::make_unique<SkyLight>(sp));
    GridSpec gs;
    gs.dims = {2, 1, 2, 3, 4};
    gs.bounds_min = {-1.0, -1.0, 1.0};
    gs.bounds_max = {1.0, 1.0, 5.0};
    std::vector<double> gd(2 * 1 * 2 * 3 * 4 * 3);
    for (std::size_t i = 0; i < gd.size(); ++i) gd[i] = 0.1 + 0.05 * (i % 7);
    lights.push_back(std::make_unique<GridLight>(gs, gd));
    Sampler rng(37, 0, 0);
    for (const auto& light : lights) {
        for (int trial = 0; trial < 20; ++trial) {
            const Vec3 p{0.1, 0.2, 3.0};
            const Vec3 d = random_direction(rng);
            const Spectrum adj{rng.next1d(), rng.next1d(), rng.next1d()};
            std::vector<double> grad(light->parameter_count(), 0.0);
            Sampler s0(1, 2, 3);
            light->accumulate_gradient(p, d, s0, adj, grad);
            const std::vector<double> base = light->parameters();
            for (std::size_t i = 0; i < base.size(); ++i) {
                auto eval = [&](double delta) {
                    auto copy = light->clone();
                    std::vector<double> v = base;
                    v[i] += delta;
                    copy->set_parameters(v);
                    Sampler s(1, 2, 3);
                    const Spectrum L = copy->query(p, d, s).radiance;
                    return adj.r * L.r + adj.g * L.g + adj.b * L.b;
                };
                const double fd = (eval(1e-6) - eval(-1e-6)) / 2e-6;
                EXPECT_NEAR(grad[i], fd, 1e-6 * std::max(1.0, std::abs(fd)));
            }
        }
    }
}

TEST(FeatureGrid, PixelCentersAreExact) {
    const WallFixture fx;
    std::vector<double> out(4);
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x) {
            fx.features.sample({x + 0.5, y + 0.5}, out);
            for (int c = 0; c < 4; ++c) EXPECT_EQ(out[c], fx.features.image().at(x, y, c));
        }
}

TEST(LightNet, ZeroWeightsGiveSoftplusZero) {
    const WallFixture fx;
    const nn::MlpWeights w = fx.decoder({8});
    Sampler rng(38, 0, 0);
    for (int i = 0; i < 20; ++i) {
        const auto [p, d] = fx.random_query(rng);
        const LightNetResult r = lightnet_query(fx.inputs(w), p, d);
        EXPECT_EQ(r.radiance.r, std::log(2.0));
        EXPECT_EQ(r.radiance.g, std::log(2.0));
        EXPECT_NEAR(r.radiance.b, 0.6931, 1e-4);
    }
}

TEST(LightNet, QueriesArePure) {
    const WallFixture fx;
    nn::MlpWeights w = fx.decoder({16, 16});
    nn::init_random(w, 5, 1.0);
    const Vec3 p = unproject(fx.camera, {7.3, 9.1}, 1.0);
    const Vec3 d = normalize(Vec3{0.1, 0.05, 1.0});
    const LightNetResult a = lightnet_query(fx.inputs(w), p, d);
    const LightNetResult b = lightnet_query(fx.inputs(w), p, d);
    EXPECT_EQ(a.radiance.r, b.radiance.r);
    EXPECT_EQ(a.radiance.g, b.radiance.g);
    EXPECT_EQ(a.radiance.b, b.radiance.b);
    EXPECT_EQ(a.hit.status, ssrt::Status::Hit);
}

TEST(LightNet, OutputIsNonNegativeForAnyWeights) {
    const WallFixture fx;
    Sampler rng(39, 0, 0);
    for (int trial = 0; trial < 20; ++trial) {
        nn::MlpWeights w = fx.decoder({8});
        nn::init_random(w, trial, 20.0);
        const auto [p, d] = fx.random_query(rng);
        const Spectrum L = lightnet_query(fx.inputs(w), p, d).radiance;
        EXPECT_GE(L.r, 0.0);
        EXPECT_GE(L.g, 0.0);
        EXPECT_GE(L.b, 0.0);
        EXPECT_TRUE(is_finite(L));
    }
}

TEST(LightNet, WeightShapeMismatchIsConfigError) {
    const WallFixture fx;
    const nn::MlpWeights w({7, 8, 3});
    EXPECT_THROW(lightnet_query(fx.inputs(w), {0, 0, 1}, {0, 0, 1}), ConfigError);
}

TEST(LightNet, BackwardMatchesFiniteDifferences) {
    const WallFixture fx;
    nn::MlpWeights w = fx.decoder({6, 5});
    nn::init_random(w, 9, 1.0);
    Sampler rng(40, 0, 0);
    const auto [p, d] = fx.random_query(rng);
    const Spectrum adj{0.3, -0.7, 1.1};
    std::vector<double> grad(w.parameter_count(), 0.0);
    lightnet_query_backward(fx.inputs(w), p, d, adj, grad);
    for (std::size_t i = 0; i < w.parameter_count(); ++i) {
        auto eval = [&](double delta) {
            nn::MlpWeights v = w;
            v.params[i] += delta;
            const Spectrum L = lightnet_query(fx.inputs(v), p, d).radiance;
            return adj.r * L.r + adj.g * L.g + adj.b * L.b;
        };
        const double fd = (eval(1e-6) - eval(-1e-6)) / 2e-6;
        EXPECT_NEAR(grad[i], fd, 1e-6 * std::max(1.0, std::abs(fd))) << "param " << i;
    }
}

TEST(LightNet, TinyDecoderFitsConstantField) {
    const WallFixture fx;
    nn::MlpWeights w = fx.decoder({8});
    nn::init_random(w, 11, 0.1);
    inverse::Adam adam(w.parameter_count());
    Sampler rng(41, 0, 0);
    const int iterations = 2000, batch = 32;
    for (int it = 0; it < iterations; ++it) {
        std::vector<double> grad(w.parameter_count(), 0.0);
        for (int b = 0; b < batch; ++b) {
            const auto [p, d] = fx.random_query(rng);
            const Spectrum L = lightnet_query(fx.inputs(w), p, d).radiance;
            const double k = 2.0 / (3.0 * batch);
            lightnet_query_backward(fx.inputs(w), p, d, {k * (L.r - 1.0), k * (L.g - 1.0), k * (L.b - 1.0)}, grad);
        }
        adam.step(w.params, grad, 1e-2 * std::pow(1e-2, double(it) / iterations));
    }
    for (int i = 0; i < 500; ++i) {
        const auto [p, d] = fx.random_query(rng);
        const Spectrum L = lightnet_query(fx.inputs(w), p, d).radiance;
        EXPECT_LT(std::abs(L.r - 1.0), 1e-2);
        EXPECT_LT(std::abs(L.g - 1.0), 1e-2);
        EXPECT_LT(std::abs(L.b - 1.0), 1e-2);
    }
}
