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

#include "io/color.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

#include "core/error.hpp"
#include "core/log.hpp"

namespace ssdr::io {

ImageBuffer srgb_to_linear(const ImageBuffer& img) {
    ImageBuffer out = img;
    std::size_t clamped = 0;
    for (double& v : out.data()) {
        if (!(v >= 0.0 && v <= 1.0)) {
            ++clamped;
            v = std::isnan(v) ? 0.0 : std::clamp(v, 0.0, 1.0);
        }
        v = std::pow(v, 2.2);
    }
    if (clamped) log().warn("srgb_to_linear: clamped {} values outside [0, 1]", clamped);
    return out;
}

double tonemap(double x, double exposure) {
    const double t = 1.0 - std::exp(-exposure * std::max(x, 0.0));
    return std::pow(t, 1.0 / 2.2);
}

void write_png_preview(const std::filesystem::path& path, const ImageBuffer& img, double exposure) {
    if (!img.all_finite()) throw ContractViolation("write_png_preview: image is not finite");
    if (img.channels() != 1 && img.channels() != 3) throw ConfigError("write_png_preview: need 1 or 3 channels");

    const int w = img.width(), h = img.height();
    std::vector<png_byte> pixels(static_cast<std::size_t>(w) * h * 3);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const Spectrum s = img.rgb(x, y);
            for (int c = 0; c < 3; ++c) {
                const double t = std::clamp(tonemap(s[c], exposure), 0.0, 1.0);
                pixels[(static_cast<std::size_t>(y) * w + x) * 3 + c] = static_cast<png_byte>(std::lround(t * 255.0));
            }
        }

    std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.c_str(), "wb"), &std::fclose);
    if (!fp) throw IoError("cannot write " + path.string());
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng failed writing " + path.string());
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, w, h, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < h; ++y) png_write_row(png, &pixels[static_cast<std::size_t>(y) * w * 3]);
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

ImageBuffer side_by_side(const std::vector<ImageBuffer>& images) {
    if (images.empty()) return {};
    const int h = images.front().height();
    int w = 0;
    for (const auto& im : images) {
        if (im.height() != h) throw ConfigError("side_by_side: image heights differ");
        w += im.width();
    }
    ImageBuffer out(w, h, 3);
    int x0 = 0;
    for (const auto& im : images) {
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < im.width(); ++x) out.set_rgb(x0 + x, y, im.rgb(x, y));
        x0 += im.width();
    }
    return out;
}

}  // namespace ssdr::io
