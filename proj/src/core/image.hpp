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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "core/spectrum.hpp"

namespace ssdr {

// Row-major, top-down image with an arbitrary channel count. Values are held
// in double precision; files store f32.
class ImageBuffer {
public:
    ImageBuffer() = default;
    ImageBuffer(int width, int height, int channels, double fill = 0.0);
    ImageBuffer(int width, int height, int channels, std::vector<double> data);

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }
    std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }
    bool empty() const { return data_.empty(); }

    double& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }
    double at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }

    std::span<double> pixel(int x, int y) { return {data_.data() + index(x, y, 0), std::size_t(channels_)}; }
    std::span<const double> pixel(int x, int y) const {
        return {data_.data() + index(x, y, 0), std::size_t(channels_)};
    }

    // Three-channel accessors; single-channel images broadcast.
    Spectrum rgb(int x, int y) const;
    void set_rgb(int x, int y, const Spectrum& s);

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool same_shape(const ImageBuffer& o) const {
        return width_ == o.width_ && height_ == o.height_ && channels_ == o.channels_;
    }
    bool all_finite() const;
    double mean() const;
    // Mean of per-pixel luminance (channel mean for non-RGB images).
    double mean_luminance() const;

    // Bilinear lookup at continuous pixel coordinates; pixel (i, j) has its
    // center at (i + 0.5, j + 0.5). Coordinates are clamped to the border.
    void sample_bilinear(double px, double py, std::span<double> out) const;

private:
    std::size_t index(int x, int y, int c) const {
        return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
    }

    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<double> data_;
};

double mse(const ImageBuffer& a, const ImageBuffer& b);

}  // namespace ssdr
