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

#include "core/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace ssdr {

ImageBuffer::ImageBuffer(int width, int height, int channels, double fill)
    : width_(width), height_(height), channels_(channels) {
    if (width <= 0 || height <= 0 || channels <= 0)
        throw ConfigError("image dimensions must be positive");
    data_.assign(pixel_count() * channels, fill);
}

ImageBuffer::ImageBuffer(int width, int height, int channels, std::vector<double> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
    if (width <= 0 || height <= 0 || channels <= 0)
        throw ConfigError("image dimensions must be positive");
    if (data_.size() != pixel_count() * channels)
        throw ConfigError("image data length " + std::to_string(data_.size()) + " does not match " +
                          std::to_string(width) + "x" + std::to_string(height) + "x" +
                          std::to_string(channels));
}

Spectrum ImageBuffer::rgb(int x, int y) const {
    const double* p = data_.data() + index(x, y, 0);
    if (channels_ == 1) return Spectrum(p[0]);
    return {p[0], p[1], p[2]};
}

void ImageBuffer::set_rgb(int x, int y, const Spectrum& s) {
    double* p = data_.data() + index(x, y, 0);
    if (channels_ == 1) {
        p[0] = luminance(s);
        return;
    }
    p[0] = s.r;
    p[1] = s.g;
    p[2] = s.b;
}

bool ImageBuffer::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double ImageBuffer::mean() const {
    if (data_.empty()) return 0.0;
    double s = 0.0;
    for (double v : data_) s += v;
    return s / static_cast<double>(data_.size());
}

double ImageBuffer::mean_luminance() const {
    if (channels_ != 3) return mean();
    double s = 0.0;
    for (int y = 0; y < height_; ++y)
        for (int x = 0; x < width_; ++x) s += luminance(rgb(x, y));
    return s / static_cast<double>(pixel_count());
}

void ImageBuffer::sample_bilinear(double px, double py, std::span<double> out) const {
    double fx = std::clamp(px - 0.5, 0.0, double(width_ - 1));
    double fy = std::clamp(py - 0.5, 0.0, double(height_ - 1));
    int x0 = static_cast<int>(std::floor(fx));
    int y0 = static_cast<int>(std::floor(fy));
    int x1 = std::min(x0 + 1, width_ - 1);
    int y1 = std::min(y0 + 1, height_ - 1);
    double tx = fx - x0;
    double ty = fy - y0;
    const std::size_t n = std::min<std::size_t>(out.size(), channels_);
    for (std::size_t c = 0; c < n; ++c) {
        int ci = static_cast<int>(c);
        double top = at(x0, y0, ci) * (1.0 - tx) + at(x1, y0, ci) * tx;
        double bot = at(x0, y1, ci) * (1.0 - tx) + at(x1, y1, ci) * tx;
        out[c] = top * (1.0 - ty) + bot * ty;
    }
}

double mse(const ImageBuffer& a, const ImageBuffer& b) {
    if (!a.same_shape(b)) throw ConfigError("mse: image shapes differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        double r = a.data()[i] - b.data()[i];
        s += r * r;
    }
    return s / static_cast<double>(a.data().size());
}

}  // namespace ssdr
